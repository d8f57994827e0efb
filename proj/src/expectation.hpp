#pragma once

// Nonlinear expectations on increasing functions of a finite preorder and
// their maxitive-integral representation.

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "concentration.hpp"
#include "random.hpp"

namespace maxitive {

struct WrappedMaxitive {
  Concentration j;
};

/// psi_n(f) = (1/n) log max_k sum_x P_k(x) exp(n f(x)).
struct EntropicFamily {
  std::vector<std::vector<double>> measures;
  double n = 1.0;
};

/// Exact-match lookup on a fixed set of functions.
struct Tabulated {
  std::map<std::vector<double>, double> entries;
};

class FunctionalModel {
 public:
  static constexpr double kMaxEntropicIndex = 1e4;

  static FunctionalModel wrapped(Concentration j);
  static FunctionalModel entropic(FamilyPtr family, std::vector<std::vector<double>> measures,
                                  double n);
  static FunctionalModel table(FamilyPtr family, std::map<std::vector<double>, double> entries);

  /// f identically -inf evaluates to -inf for every kind.
  double operator()(std::span<const double> f) const;

  const FamilyPtr& family() const { return family_; }
  const FinitePreorder& space() const { return family_->space(); }
  std::string kind() const;

 private:
  FunctionalModel(FamilyPtr family, std::variant<WrappedMaxitive, EntropicFamily, Tabulated> impl)
      : family_(std::move(family)), impl_(std::move(impl)) {}

  FamilyPtr family_;
  std::variant<WrappedMaxitive, EntropicFamily, Tabulated> impl_;
};

struct PropertyReport {
  bool ok = true;
  std::string violation;  ///< empty when ok
  std::optional<std::size_t> first;
  std::optional<std::size_t> second;
};

/// psi(0) = 0, monotone over comparable pairs of fns, psi(f + c) = psi(f) + c.
PropertyReport verify_properties(const FunctionalModel& psi,
                                 std::span<const std::vector<double>> fns, double tol = 1e-9);

/// J_A = psi(-inf * 1_{A^c}). Rounding-level monotonicity defects up to tol
/// are repaired by the monotone hull; larger ones are rejected.
Concentration induced_concentration(const FunctionalModel& psi, double tol = 1e-9);

struct Staircase {
  std::vector<double> lower;  ///< l_N, from the strict level sets {f > a_j}
  std::vector<double> upper;  ///< u_N, from the closed level sets {f >= a_j}
  double step = 0.0;          ///< (b - a) / N
};

/// Requires a < f(x) < b. Verifies f - step <= l_N <= u_N <= f.
Staircase simple_staircase(std::span<const double> f, double a, double b, std::size_t n);

struct RepresentationGap {
  double worst = 0.0;
  std::optional<std::size_t> worst_index;
};

/// max over fns of |psi(f) - phi_{J^psi}(f)|.
RepresentationGap representation_gap(const FunctionalModel& psi,
                                     std::span<const std::vector<double>> fns);

/// Representation gap of the entropic family at each index n.
std::vector<double> representation_gap_curve(FamilyPtr family,
                                             const std::vector<std::vector<double>>& measures,
                                             std::span<const double> indices,
                                             std::span<const std::vector<double>> fns);

struct WeakMaxitivitySample {
  bool ok = true;
  double worst_gap = kPosInf;  ///< max psi(g_i) - psi(f); >= 0 expected
  std::size_t samples = 0;
};

/// Draws g_1..g_k increasing and f = envelope(max g_i - p) with p >= 0, then
/// checks psi(f) <= max psi(g_i) + tol.
WeakMaxitivitySample sample_weak_maxitivity(const FunctionalModel& psi, Rng& rng,
                                            std::size_t samples, double tol = 1e-9);

std::vector<double> truncate_above(std::span<const double> f, double level);
std::vector<double> truncate_below(std::span<const double> f, double level);

}  // namespace maxitive
