#pragma once

// Sample means of i.i.d. real sequences ordered by [0, inf): log-MGF, the
// monotone rate obtained by conjugation over mu >= 0, and exact tails.

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "random.hpp"

namespace maxitive {

enum class ModelFamily { bernoulli, gaussian, exponential, finite_support };

class SampleModel {
 public:
  static SampleModel bernoulli(double p);
  static SampleModel gaussian(double mean, double variance);
  static SampleModel exponential(double lambda);
  /// Points are sorted and duplicates merged; probabilities sum to 1 within 1e-12.
  static SampleModel finite_support(std::vector<double> points, std::vector<double> probs);

  /// "bernoulli:p", "gaussian:m,s2", "exponential:lambda",
  /// "finite:x1@p1,x2@p2,...".
  static SampleModel parse(std::string_view spec);
  std::string to_string() const;

  ModelFamily family() const { return family_; }
  double mean() const;
  double variance() const;
  double support_min() const;
  double support_max() const;
  bool has_exact_tail() const { return family_ != ModelFamily::exponential; }
  const std::vector<double>& points() const { return points_; }
  const std::vector<double>& probs() const { return probs_; }
  double parameter(std::size_t i) const { return params_[i]; }

  /// log E exp(mu xi) for mu >= 0, values in (-inf, inf].
  double log_mgf(double mu) const;
  /// d/dmu log E exp(mu xi), finite mu in the interior of the domain.
  double log_mgf_derivative(double mu) const;
  /// Supremum of the effective domain of the log-MGF on [0, inf).
  double mgf_domain_end() const;

  double sample(Rng& rng) const;

 private:
  ModelFamily family_ = ModelFamily::bernoulli;
  double params_[2] = {0.0, 0.0};
  std::vector<double> points_;
  std::vector<double> probs_;
};

/// sup_{mu >= 0} {mu x - log_mgf(mu)}: 0 for x <= mean, +inf beyond the
/// support. Solves log_mgf'(mu) = x by bisection.
double monotone_cramer_rate(const SampleModel& model, double x);

/// Same supremum by golden-section search on a bracket [0, hi] grown
/// geometrically; generic cross-check that never touches the derivative.
double monotone_cramer_rate_golden(const SampleModel& model, double x);

/// Classical closed-form rate where one exists (bernoulli, gaussian,
/// exponential), clipped to 0 below the mean.
std::optional<double> closed_form_rate(const SampleModel& model, double x);

/// log P(X_n >= a) (closed) or log P(X_n > a) (open).
double exact_tail_log(const SampleModel& model, double a, std::size_t n, bool open = false);

/// tails[i][k] = log P(X_{ns[k]} >= as[i]) (or > for open). Convolution work
/// is shared across all entries.
std::vector<std::vector<double>> exact_tail_table(const SampleModel& model,
                                                  const std::vector<double>& as,
                                                  const std::vector<std::size_t>& ns,
                                                  bool open = false);

/// Exact law of X_n as atoms; bernoulli and finite support only.
struct Atoms {
  std::vector<double> values;     ///< increasing
  std::vector<double> log_probs;
};
Atoms sample_mean_atoms(const SampleModel& model, std::size_t n);

/// Largest n for which finite-support exact tails are available.
std::size_t finite_support_tail_limit(const SampleModel& model);

struct SupermultiplicativityReport {
  bool ok = true;
  std::size_t pairs = 0;
  double worst_gap = std::numeric_limits<double>::infinity();  ///< (1/2n) L(2n) - (1/n) L(n)
  std::optional<std::size_t> witness_n;
  std::optional<double> witness_a;
};

/// For each n in ns checks (1/(2n)) log P(X_{2n} >= a) >= (1/n) log P(X_n >= a) - tol.
SupermultiplicativityReport supermultiplicativity_check(const SampleModel& model, double a,
                                                        const std::vector<std::size_t>& ns,
                                                        double tol = 1e-12);
/// Same over an a-grid, sharing the exact-tail computation.
SupermultiplicativityReport supermultiplicativity_check(const SampleModel& model,
                                                        const std::vector<double>& as,
                                                        const std::vector<std::size_t>& ns,
                                                        double tol = 1e-12);

/// tol(n) = (log n + 5) / n for lattice models, 6 / n for gaussian.
double cramer_tolerance(const SampleModel& model, std::size_t n);

struct RateReport {
  std::vector<double> a;
  std::vector<std::size_t> n;
  std::vector<double> rate;                 ///< monotone_cramer_rate(a)
  std::vector<std::optional<double>> rate_ref;
  std::vector<std::vector<double>> trace;   ///< (1/n) log P(X_n >= a), [a][n]
  std::vector<std::vector<double>> open_trace;  ///< (1/n) log P(X_n > a)
  double tolerance = 0.0;                   ///< tol(n_max)
  double worst_error = 0.0;                 ///< max |trace(n_max) + rate|
  double worst_ref_error = 0.0;             ///< max |rate - rate_ref|
  bool limit_ok = true;
  bool open_limit_ok = true;
  bool upper_bound_ok = true;               ///< trace <= -rate + 1e-12 at every n
  bool rate_shape_ok = true;                ///< 0 below the mean, nondecreasing
  std::vector<std::string> failures;
  bool ok() const { return limit_ok && open_limit_ok && upper_bound_ok && rate_shape_ok; }
};

/// Requires exact tails; ns and as strictly increasing. tolerance replaces
/// cramer_tolerance(ns.back()) for the limit checks.
RateReport verify_monotone_cramer(const SampleModel& model, const std::vector<double>& as,
                                  const std::vector<std::size_t>& ns, std::size_t threads = 1,
                                  std::optional<double> tolerance = std::nullopt);

struct EmpiricalJ {
  std::uint64_t hits = 0;
  std::uint64_t trials = 0;
  double estimate = 0.0;  ///< (1/n) log(hits / trials); -inf on zero hits
  double ci_lo = 0.0;     ///< Wilson 95% interval mapped to (1/n) log
  double ci_hi = 0.0;
  bool zero_hits = false;
  double zero_hit_bound = 0.0;  ///< (1/n) log(3 / trials), set on zero hits
};

/// Monte Carlo estimate of (1/n) log P(X_n >= a). Trials are split into
/// blocks with derived seeds, so the result does not depend on threads.
EmpiricalJ empirical_J(const SampleModel& model, double a, std::size_t n, std::uint64_t trials,
                       std::uint64_t seed, std::size_t threads = 1);

/// Experimental: rate of the sample mean of independent coordinates in
/// dimension <= 3 with cone [0, inf)^d, by brute-force conjugation on a
/// product dual grid (each axis 0 plus geometric points up to mu_max).
double product_cramer_rate(const std::vector<SampleModel>& coords, const std::vector<double>& x,
                           double mu_max = 20.0, std::size_t points = 400);

}  // namespace maxitive
