#pragma once

#include <optional>
#include <span>
#include <vector>

#include "concentration.hpp"

namespace maxitive {

struct CoverWitness {
  Subset set;
  std::vector<Subset> cover;  ///< up-sets covering set, each with J below lhs
  double lhs = 0.0;           ///< J(set)
  double rhs = 0.0;           ///< max of J over the cover
};

struct MaxitivityReport {
  bool verdict = true;
  std::optional<CoverWitness> witness;  ///< present iff !verdict
};

/// J_A <= max_{x in A} J(up x) for every nonempty up-set A. On a finite space
/// every up-set cover refines to principal up-sets, so this is the cover
/// condition.
MaxitivityReport is_weakly_maxitive(const Concentration& j);

/// Same verdict from covers by arbitrary up-sets: some cover of A has every
/// member below J_A iff the union of all up-sets with J below J_A contains A.
/// Quadratic in the family size; used to cross-check the principal criterion.
MaxitivityReport weak_maxitivity_cover_search(const Concentration& j);

/// J(A u B) = max(J_A, J_B) for all up-sets; on a finite family this is
/// maxitivity over arbitrary unions.
bool is_completely_maxitive(const Concentration& j);

/// I_min(x) = -J(up x).
std::vector<double> minimal_rate(const Concentration& j);

/// Gaps are signed so that >= 0 means the inequality holds.
struct BoundReport {
  bool lower_ok = true;
  bool upper_ok = true;
  double worst_gap_lower = kPosInf;
  double worst_gap_upper = kPosInf;
  std::optional<std::size_t> lower_witness;  ///< up-set index or function index
  std::optional<std::size_t> upper_witness;
  bool ok() const { return lower_ok && upper_ok; }
};

/// lower: -min_O I <= J_O; upper: J_C <= -min_C I; over every up-set.
BoundReport check_mldp(const Concentration& j, std::span<const double> rate, double tol = 0.0);

struct VaradhanGap {
  double lower;  ///< phi_J(f) - max(f - I)
  double upper;  ///< max(f - I) - phi_J(f)
};

/// max_x (f(x) - I(x)) with -inf absorbing.
double sup_minus_rate(std::span<const double> f, std::span<const double> rate);

VaradhanGap varadhan_gap(const Concentration& j, std::span<const double> rate,
                         std::span<const double> f);

/// phi_J(f) = max_x (f(x) - I(x)) for each f; witnesses are function indices.
BoundReport check_mlp(const Concentration& j, std::span<const double> rate,
                      std::span<const std::vector<double>> fns, double tol = 1e-9);

struct MinimalityReport {
  bool lower_bound = false;
  bool upper_bound = false;
  std::vector<double> envelope;  ///< increasing envelope of I
  std::vector<double> minimal;   ///< I_min
  /// Upper bound implies envelope <= I_min; empty when the upper bound fails.
  std::optional<bool> upper_direction;
  /// Lower bound implies I_min <= envelope; empty when the lower bound fails.
  std::optional<bool> lower_direction;
  bool precondition_ok() const { return lower_bound; }
  bool holds() const {
    return upper_direction.value_or(true) && lower_direction.value_or(true);
  }
};

MinimalityReport rate_minimality_check(const Concentration& j, std::span<const double> rate);

struct TightnessProbe {
  Subset c;  ///< up-set
  Subset k;  ///< truncation set
  double eps = 0.0;
};

struct TightnessReport {
  bool ok = true;
  std::optional<std::size_t> failing_probe;
  double lhs = 0.0;
  double rhs = 0.0;
};

/// J_C <= max(J(up(C n K)) + eps, -1/eps) for each probe.
TightnessReport tightness_check(const Concentration& j, std::span<const TightnessProbe> probes);

/// Every set is compact here, so K = E witnesses tightness; checked over all
/// up-sets and a fixed eps schedule.
bool is_tight(const Concentration& j);

}  // namespace maxitive
