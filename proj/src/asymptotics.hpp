#pragma once

// Sequences of capacities and sublinear expectations; limsup tail rates.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "cramer.hpp"
#include "preorder.hpp"

namespace maxitive {

/// [a, inf) when closed, (a, inf) otherwise.
struct HalfLine {
  double a = 0.0;
  bool closed = true;
};

using SetQuery = std::variant<HalfLine, Subset>;

/// n -> log mu_n(A). Values in [-inf, 0]; -inf marks an exact zero.
class CapacitySequence {
 public:
  using Evaluator = std::function<double(std::size_t, const SetQuery&)>;

  CapacitySequence(std::string name, Evaluator eval) : name_(std::move(name)), eval_(std::move(eval)) {}

  static CapacitySequence exact_binomial(double p);
  static CapacitySequence exact_gaussian(double mean, double variance);
  /// Any model with exact tails.
  static CapacitySequence exact_model(const SampleModel& model);
  /// Hit fraction over `trials` sample means; per-n seed derive_seed(seed, n).
  static CapacitySequence monte_carlo(const SampleModel& model, std::uint64_t trials,
                                      std::uint64_t seed);
  /// mu_n(A) = max_k P_k(X_n in A) for sample means under each model.
  static CapacitySequence max_of_measures(const std::vector<SampleModel>& models);
  /// Finite space: mu_n(A) = max_k sum_{x in A} e^{-n I_k(x)} / Z_{k,n}.
  static CapacitySequence tilted_max_of_measures(std::size_t size,
                                                 const std::vector<std::vector<double>>& rates);

  const std::string& name() const { return name_; }
  double log_mu(std::size_t n, const SetQuery& query) const { return eval_(n, query); }

 private:
  std::string name_;
  Evaluator eval_;
};

struct LimsupEstimate {
  double value = 0.0;  ///< max of the trace over the tail half of the schedule
  std::size_t n_lo = 0;
  std::size_t n_hi = 0;
  std::vector<std::size_t> n;
  std::vector<double> log_mu;
  std::vector<double> trace;  ///< log_mu / n
  double slope = 0.0;         ///< least-squares fit trace ~ intercept + slope / n on the tail
  double intercept = 0.0;
  bool tail_monotone = true;  ///< trace monotone over the tail window
  bool has_zero = false;      ///< some mu_n(A) was exactly 0
};

/// Builds the estimate from an already computed log_mu sequence.
LimsupEstimate limsup_from_trace(const std::vector<std::size_t>& schedule,
                                 std::vector<double> log_mu);

/// Evaluates the sequence on a strictly increasing schedule; evaluator
/// errors are rethrown with n attached.
LimsupEstimate log_rate_estimate(const CapacitySequence& seq, const SetQuery& query,
                                 const std::vector<std::size_t>& schedule, std::size_t threads = 1);

struct LargestTermReport {
  bool ok = true;
  double combined = 0.0;               ///< limsup estimate of (1/n) log sum_i a_n^i
  double largest = 0.0;                ///< max_i limsup estimate of (1/n) log a_n^i
  std::vector<double> components;
};

/// components[i][k] = log a^i at schedule[k].
LargestTermReport largest_term_check(const std::vector<std::size_t>& schedule,
                                     const std::vector<std::vector<double>>& components,
                                     double tol = 1e-3);

/// Layer-cake integral sum_k (v_k - v_{k-1}) mu({g >= v_k}) for g >= 0.
double choquet_integral(const std::function<double(const Subset&)>& mu,
                        std::span<const double> g);

/// Sublinear expectation E_n(h) = max_k E_k[h(X_n)] over sample-mean laws.
class MaxOfMeasures {
 public:
  explicit MaxOfMeasures(std::vector<SampleModel> models);

  const std::vector<SampleModel>& models() const { return models_; }
  /// log E_n(e^{n f(X_n)}).
  double log_expectation(std::size_t n, const std::function<double(double)>& f) const;
  /// log of the Choquet integral of e^{n f(X_n)} against mu_n = E_n(1_.).
  double log_choquet(std::size_t n, const std::function<double(double)>& f) const;
  /// log E_n(e^{n f(X_n)} 1_K(X_n)) with K = [lo, hi].
  double log_restricted_expectation(std::size_t n, const std::function<double(double)>& f,
                                    double lo, double hi) const;

 private:
  std::vector<SampleModel> models_;
};

struct EntropicChoquet {
  LimsupEstimate entropic;
  LimsupEstimate choquet;
  double difference = 0.0;  ///< |entropic.value - choquet.value|
};

EntropicChoquet entropic_vs_choquet(const MaxOfMeasures& seq, const std::function<double(double)>& f,
                                    const std::vector<std::size_t>& schedule,
                                    std::size_t threads = 1);

struct RestrictedBound {
  LimsupEstimate estimate;
  double bound = 0.0;  ///< max over the x-grid of f(x) - I(x)
  bool ok = true;
};

/// limsup (1/n) log E_n(e^{n f} 1_K) <= sup_x {f(x) - I(x)} + tol.
RestrictedBound restricted_entropic_bound(const MaxOfMeasures& seq,
                                          const std::function<double(double)>& f, double lo,
                                          double hi, const std::function<double(double)>& rate,
                                          const std::vector<double>& x_grid,
                                          const std::vector<std::size_t>& schedule,
                                          double tol = 1e-2);

}  // namespace maxitive
