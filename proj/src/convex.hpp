#pragma once

// Legendre-Fenchel transforms on one-dimensional grids, ordered by [0, inf).

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace maxitive {

inline constexpr std::size_t kNoIndex = std::numeric_limits<std::size_t>::max();

/// Strictly increasing finite knots; values in [-inf, inf].
struct Grid1D {
  std::vector<double> knots;
  std::vector<double> values;

  Grid1D() = default;
  Grid1D(std::vector<double> knots, std::vector<double> values);
  std::size_t size() const { return knots.size(); }
};

struct ConjugateResult {
  std::vector<double> mu;
  std::vector<double> values;
  std::vector<std::size_t> argmax;  ///< knot index, kNoIndex when I = +inf everywhere
  /// Fraction of positive mu whose maximizer sits on the last knot.
  double boundary_fraction = 0.0;
};

/// I*(mu) = max_x {mu x - I(x)}. Knots with I = +inf are skipped; a knot
/// with I = -inf makes the conjugate +inf.
ConjugateResult fenchel_conjugate(const Grid1D& rate, std::span<const double> mu,
                                  std::size_t threads = 1);

/// Same, restricted to the dual cone: every mu must be >= 0.
ConjugateResult fenchel_conjugate_nonneg(const Grid1D& rate, std::span<const double> mu,
                                         std::size_t threads = 1);

/// I**(x) = max_mu {mu x - I*(mu)} on the knots of rate.
Grid1D biconjugate(const Grid1D& rate, std::span<const double> mu, std::size_t threads = 1);

/// 0 followed by points-1 geometrically spaced values in [mu_max * 1e-4, mu_max].
std::vector<double> dual_grid(double mu_max, std::size_t points);

/// Evenly spaced, both ends included.
std::vector<double> linear_grid(double lo, double hi, std::size_t points);

/// Slopes between consecutive finite values are nondecreasing (within tol) and
/// the finite values form a contiguous block.
bool is_convex_on_grid(std::span<const double> knots, std::span<const double> values,
                       double tol = 1e-9);

struct MidpointReport {
  bool ok = true;
  double worst_gap = std::numeric_limits<double>::infinity();  ///< J(mid) - (J(a) + J(c)) / 2
  std::optional<std::pair<std::size_t, std::size_t>> witness;
  std::size_t pairs_checked = 0;
  /// Discrete convexity of I_min(a_i) = -J(a_{i-1}).
  bool rate_convex = true;
};

/// J(a) is J of the half-line (a, inf), nonincreasing in a. Checks
/// J((a + c) / 2) >= (J(a) + J(c)) / 2 for every pair whose midpoint is a knot.
MidpointReport midpoint_condition_check(std::span<const double> knots,
                                        std::span<const double> j_halfline, double tol = 1e-12);

/// Experimental box version for d <= 3: values[k] is J of the orthant
/// translate corner_k + [0, inf)^d on the product grid (row-major, last axis
/// fastest).
MidpointReport midpoint_condition_check_box(const std::vector<std::vector<double>>& axes,
                                            std::span<const double> values, double tol = 1e-12);

}  // namespace maxitive
