#include "asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"
#include "extended_real.hpp"
#include "logmath.hpp"
#include "parallel.hpp"
#include "random.hpp"

namespace maxitive {

namespace {

const HalfLine& require_half_line(const SetQuery& query, const std::string& who) {
  const auto* h = std::get_if<HalfLine>(&query);
  if (!h) fail(ErrorCode::invalid_argument, who + " accepts half-line queries only");
  if (std::isnan(h->a)) fail(ErrorCode::domain_error, "half-line threshold is NaN");
  return *h;
}

// log(e^hi - e^lo) for hi > lo.
double log_sub(double hi, double lo) {
  if (lo == kNegInf) return hi;
  return hi + std::log1p(-std::exp(lo - hi));
}

// Atoms of X_n under every model, merged on a common value axis.
struct JointAtoms {
  std::vector<double> values;
  std::vector<std::vector<double>> log_probs;  // [model][value], -inf when absent
};

JointAtoms joint_atoms(const std::vector<SampleModel>& models, std::size_t n) {
  std::vector<Atoms> per;
  per.reserve(models.size());
  for (const auto& m : models) per.push_back(sample_mean_atoms(m, n));
  JointAtoms out;
  for (const auto& a : per) out.values.insert(out.values.end(), a.values.begin(), a.values.end());
  std::sort(out.values.begin(), out.values.end());
  out.values.erase(std::unique(out.values.begin(), out.values.end()), out.values.end());
  out.log_probs.assign(per.size(), std::vector<double>(out.values.size(), kNegInf));
  for (std::size_t k = 0; k < per.size(); ++k) {
    for (std::size_t j = 0; j < per[k].values.size(); ++j) {
      const auto it = std::lower_bound(out.values.begin(), out.values.end(), per[k].values[j]);
      auto& slot = out.log_probs[k][static_cast<std::size_t>(it - out.values.begin())];
      slot = log_add(slot, per[k].log_probs[j]);
    }
  }
  return out;
}

double eval_f(const std::function<double(double)>& f, double x) {
  const double v = f(x);
  if (std::isnan(v) || v == kPosInf) fail(ErrorCode::domain_error, "f must be bounded above");
  return v;
}

}  // namespace

CapacitySequence CapacitySequence::exact_binomial(double p) {
  return exact_model(SampleModel::bernoulli(p));
}

CapacitySequence CapacitySequence::exact_gaussian(double mean, double variance) {
  return exact_model(SampleModel::gaussian(mean, variance));
}

CapacitySequence CapacitySequence::exact_model(const SampleModel& model) {
  if (!model.has_exact_tail()) {
    fail(ErrorCode::missing_capability, model.to_string() + " has no exact tail");
  }
  return CapacitySequence("exact " + model.to_string(), [model](std::size_t n, const SetQuery& q) {
    const auto& h = require_half_line(q, "exact sequence");
    return exact_tail_log(model, h.a, n, !h.closed);
  });
}

CapacitySequence CapacitySequence::monte_carlo(const SampleModel& model, std::uint64_t trials,
                                               std::uint64_t seed) {
  if (trials == 0) fail(ErrorCode::invalid_argument, "trials must be positive");
  return CapacitySequence(
      "monte-carlo " + model.to_string(), [model, trials, seed](std::size_t n, const SetQuery& q) {
        const auto& h = require_half_line(q, "monte-carlo sequence");
        if (n == 0) fail(ErrorCode::invalid_argument, "n must be positive");
        Rng rng(derive_seed(seed, n));
        std::uint64_t hits = 0;
        for (std::uint64_t t = 0; t < trials; ++t) {
          double sum = 0.0;
          for (std::size_t i = 0; i < n; ++i) sum += model.sample(rng);
          const double mean = sum / static_cast<double>(n);
          if (h.closed ? mean >= h.a : mean > h.a) ++hits;
        }
        if (hits == 0) return kNegInf;
        return std::log(static_cast<double>(hits)) - std::log(static_cast<double>(trials));
      });
}

CapacitySequence CapacitySequence::max_of_measures(const std::vector<SampleModel>& models) {
  if (models.empty()) fail(ErrorCode::invalid_argument, "max of measures needs a model");
  std::string name = "max";
  for (const auto& m : models) {
    if (!m.has_exact_tail()) {
      fail(ErrorCode::missing_capability, m.to_string() + " has no exact tail");
    }
    name += " " + m.to_string();
  }
  return CapacitySequence(name, [models](std::size_t n, const SetQuery& q) {
    const auto& h = require_half_line(q, "max-of-measures sequence");
    double best = kNegInf;
    for (const auto& m : models) best = std::max(best, exact_tail_log(m, h.a, n, !h.closed));
    return best;
  });
}

CapacitySequence CapacitySequence::tilted_max_of_measures(
    std::size_t size, const std::vector<std::vector<double>>& rates) {
  if (size == 0 || size > 64) fail(ErrorCode::invalid_argument, "space size must be in [1, 64]");
  if (rates.empty()) fail(ErrorCode::invalid_argument, "tilted family needs a rate");
  for (const auto& r : rates) {
    if (r.size() != size) fail(ErrorCode::size_mismatch, "rate length differs from space size");
    bool finite = false;
    for (double v : r) {
      if (std::isnan(v) || v < 0.0) fail(ErrorCode::domain_error, "rates must lie in [0, inf]");
      finite = finite || v != kPosInf;
    }
    if (!finite) fail(ErrorCode::invalid_argument, "each rate needs a finite value");
  }
  return CapacitySequence("tilted", [size, rates](std::size_t n, const SetQuery& q) {
    const auto* s = std::get_if<Subset>(&q);
    if (!s) fail(ErrorCode::invalid_argument, "tilted sequence accepts subset queries only");
    if (s->size() != size) fail(ErrorCode::size_mismatch, "subset size differs from space size");
    const auto dn = static_cast<double>(n);
    double best = kNegInf;
    for (const auto& r : rates) {
      std::vector<double> all;
      std::vector<double> in;
      for (std::size_t x = 0; x < size; ++x) {
        const double w = r[x] == kPosInf ? kNegInf : -dn * r[x];
        all.push_back(w);
        if (s->contains(x)) in.push_back(w);
      }
      best = std::max(best, log_sum_exp(in) - log_sum_exp(all));
    }
    return std::min(best, 0.0);
  });
}

LimsupEstimate limsup_from_trace(const std::vector<std::size_t>& schedule,
                                 std::vector<double> log_mu) {
  if (schedule.empty()) fail(ErrorCode::invalid_argument, "schedule is empty");
  if (schedule.size() != log_mu.size()) fail(ErrorCode::size_mismatch, "trace length differs");
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    if (schedule[k] == 0) fail(ErrorCode::invalid_argument, "schedule entries must be positive");
    if (k > 0 && schedule[k] <= schedule[k - 1]) {
      fail(ErrorCode::invalid_argument, "schedule must be strictly increasing");
    }
    if (std::isnan(log_mu[k]) || log_mu[k] == kPosInf) {
      fail(ErrorCode::domain_error, "log mu_n must lie in [-inf, inf)");
    }
  }
  LimsupEstimate est;
  est.n = schedule;
  est.log_mu = std::move(log_mu);
  est.trace.resize(schedule.size());
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    est.trace[k] = est.log_mu[k] / static_cast<double>(schedule[k]);
    est.has_zero = est.has_zero || est.log_mu[k] == kNegInf;
  }
  const std::size_t lo = schedule.size() / 2;
  est.n_lo = schedule[lo];
  est.n_hi = schedule.back();
  est.value = kNegInf;
  for (std::size_t k = lo; k < schedule.size(); ++k) est.value = std::max(est.value, est.trace[k]);

  bool up = true;
  bool down = true;
  for (std::size_t k = lo + 1; k < schedule.size(); ++k) {
    up = up && est.trace[k] >= est.trace[k - 1];
    down = down && est.trace[k] <= est.trace[k - 1];
  }
  est.tail_monotone = up || down;

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t m = 0;
  for (std::size_t k = lo; k < schedule.size(); ++k) {
    if (!is_finite(est.trace[k])) continue;
    const double x = 1.0 / static_cast<double>(schedule[k]);
    sx += x;
    sy += est.trace[k];
    sxx += x * x;
    sxy += x * est.trace[k];
    ++m;
  }
  if (m >= 2) {
    const double dm = static_cast<double>(m);
    const double den = dm * sxx - sx * sx;
    if (den > 0.0) {
      est.slope = (dm * sxy - sx * sy) / den;
      est.intercept = (sy - est.slope * sx) / dm;
    } else {
      est.intercept = sy / dm;
    }
  } else if (m == 1) {
    est.intercept = sy;
  } else {
    est.intercept = est.value;
  }
  return est;
}

LimsupEstimate log_rate_estimate(const CapacitySequence& seq, const SetQuery& query,
                                 const std::vector<std::size_t>& schedule, std::size_t threads) {
  if (schedule.empty()) fail(ErrorCode::invalid_argument, "schedule is empty");
  for (std::size_t k = 1; k < schedule.size(); ++k) {
    if (schedule[k] <= schedule[k - 1]) {
      fail(ErrorCode::invalid_argument, "schedule must be strictly increasing");
    }
  }
  std::vector<double> log_mu(schedule.size(), kNegInf);
  parallel_for(schedule.size(), threads, [&](std::size_t k) {
    try {
      log_mu[k] = seq.log_mu(schedule[k], query);
    } catch (const Error& e) {
      fail(e.code(), "n = " + std::to_string(schedule[k]) + ": " + e.what());
    }
  });
  return limsup_from_trace(schedule, std::move(log_mu));
}

LargestTermReport largest_term_check(const std::vector<std::size_t>& schedule,
                                     const std::vector<std::vector<double>>& components,
                                     double tol) {
  if (components.empty()) fail(ErrorCode::invalid_argument, "no components");
  LargestTermReport report;
  std::vector<double> combined(schedule.size(), kNegInf);
  report.largest = kNegInf;
  for (const auto& c : components) {
    if (c.size() != schedule.size()) fail(ErrorCode::size_mismatch, "component length differs");
    const auto est = limsup_from_trace(schedule, c);
    report.components.push_back(est.value);
    report.largest = std::max(report.largest, est.value);
    for (std::size_t k = 0; k < schedule.size(); ++k) combined[k] = log_add(combined[k], c[k]);
  }
  report.combined = limsup_from_trace(schedule, std::move(combined)).value;
  report.ok = report.combined == report.largest || std::abs(report.combined - report.largest) <= tol;
  return report;
}

double choquet_integral(const std::function<double(const Subset&)>& mu, std::span<const double> g) {
  if (g.empty()) fail(ErrorCode::invalid_argument, "function is empty");
  if (g.size() > 64) fail(ErrorCode::cap_exceeded, "at most 64 points");
  for (double v : g) {
    if (std::isnan(v) || v < 0.0) fail(ErrorCode::domain_error, "g must be nonnegative");
    if (v == kPosInf) fail(ErrorCode::domain_error, "g must be finite");
  }
  std::vector<double> levels(g.begin(), g.end());
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  double total = 0.0;
  double prev = 0.0;
  for (double v : levels) {
    if (v == 0.0) continue;
    Subset at_least(g.size());
    for (std::size_t x = 0; x < g.size(); ++x) {
      if (g[x] >= v) at_least.insert(x);
    }
    total += (v - prev) * mu(at_least);
    prev = v;
  }
  return total;
}

MaxOfMeasures::MaxOfMeasures(std::vector<SampleModel> models) : models_(std::move(models)) {
  if (models_.empty()) fail(ErrorCode::invalid_argument, "max of measures needs a model");
  for (const auto& m : models_) {
    if (m.family() != ModelFamily::bernoulli && m.family() != ModelFamily::finite_support) {
      fail(ErrorCode::missing_capability, m.to_string() + " has no exact atoms");
    }
  }
}

double MaxOfMeasures::log_expectation(std::size_t n, const std::function<double(double)>& f) const {
  return log_restricted_expectation(n, f, kNegInf, kPosInf);
}

double MaxOfMeasures::log_restricted_expectation(std::size_t n,
                                                 const std::function<double(double)>& f, double lo,
                                                 double hi) const {
  const auto atoms = joint_atoms(models_, n);
  const auto dn = static_cast<double>(n);
  std::vector<double> nf(atoms.values.size());
  for (std::size_t j = 0; j < nf.size(); ++j) nf[j] = dn * eval_f(f, atoms.values[j]);
  double best = kNegInf;
  for (const auto& lp : atoms.log_probs) {
    std::vector<double> terms;
    for (std::size_t j = 0; j < nf.size(); ++j) {
      if (atoms.values[j] < lo || atoms.values[j] > hi) continue;
      terms.push_back(ext_add(lp[j], nf[j]));
    }
    best = std::max(best, log_sum_exp(terms));
  }
  return best;
}

double MaxOfMeasures::log_choquet(std::size_t n, const std::function<double(double)>& f) const {
  const auto atoms = joint_atoms(models_, n);
  const auto dn = static_cast<double>(n);
  // log g at each atom, g = e^{n f}.
  std::vector<double> lg(atoms.values.size());
  for (std::size_t j = 0; j < lg.size(); ++j) lg[j] = dn * eval_f(f, atoms.values[j]);
  std::vector<std::size_t> order(lg.size());
  for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return lg[a] > lg[b]; });

  // Walk levels from the top: mu({g >= v}) = max_k sum of atoms with lg >= v.
  std::vector<double> mass(models_.size(), kNegInf);
  std::vector<double> level_value;
  std::vector<double> level_mu;
  for (std::size_t i = 0; i < order.size();) {
    const double v = lg[order[i]];
    std::size_t end = i;
    while (end < order.size() && lg[order[end]] == v) {
      for (std::size_t k = 0; k < models_.size(); ++k) {
        mass[k] = log_add(mass[k], atoms.log_probs[k][order[end]]);
      }
      ++end;
    }
    double mu = kNegInf;
    for (double m : mass) mu = std::max(mu, m);
    level_value.push_back(v);
    level_mu.push_back(std::min(mu, 0.0));
    i = end;
  }
  // Ascending layer-cake: sum_k (g_k - g_{k-1}) mu({g >= g_k}) with g_0 = 0.
  std::vector<double> terms;
  for (std::size_t r = level_value.size(); r-- > 0;) {
    const double v = level_value[r];
    if (v == kNegInf) continue;
    const double below = r + 1 < level_value.size() ? level_value[r + 1] : kNegInf;
    terms.push_back(ext_add(log_sub(v, below), level_mu[r]));
  }
  return log_sum_exp(terms);
}

EntropicChoquet entropic_vs_choquet(const MaxOfMeasures& seq, const std::function<double(double)>& f,
                                    const std::vector<std::size_t>& schedule, std::size_t threads) {
  std::vector<double> left(schedule.size());
  std::vector<double> right(schedule.size());
  parallel_for(schedule.size(), threads, [&](std::size_t k) {
    try {
      left[k] = seq.log_expectation(schedule[k], f);
      right[k] = seq.log_choquet(schedule[k], f);
    } catch (const Error& e) {
      fail(e.code(), "n = " + std::to_string(schedule[k]) + ": " + e.what());
    }
  });
  EntropicChoquet out;
  out.entropic = limsup_from_trace(schedule, std::move(left));
  out.choquet = limsup_from_trace(schedule, std::move(right));
  out.difference = out.entropic.value == out.choquet.value
                       ? 0.0
                       : std::abs(out.entropic.value - out.choquet.value);
  return out;
}

RestrictedBound restricted_entropic_bound(const MaxOfMeasures& seq,
                                          const std::function<double(double)>& f, double lo,
                                          double hi, const std::function<double(double)>& rate,
                                          const std::vector<double>& x_grid,
                                          const std::vector<std::size_t>& schedule, double tol) {
  if (!(lo <= hi)) fail(ErrorCode::invalid_argument, "K must satisfy lo <= hi");
  if (x_grid.empty()) fail(ErrorCode::invalid_argument, "x-grid is empty");
  std::vector<double> log_e(schedule.size());
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    try {
      log_e[k] = seq.log_restricted_expectation(schedule[k], f, lo, hi);
    } catch (const Error& e) {
      fail(e.code(), "n = " + std::to_string(schedule[k]) + ": " + e.what());
    }
  }
  RestrictedBound out;
  out.estimate = limsup_from_trace(schedule, std::move(log_e));
  out.bound = kNegInf;
  for (double x : x_grid) {
    const double r = rate(x);
    if (std::isnan(r)) fail(ErrorCode::domain_error, "rate is NaN");
    if (r == kPosInf) continue;
    out.bound = std::max(out.bound, eval_f(f, x) - r);
  }
  out.ok = out.estimate.value == kNegInf || out.estimate.value <= out.bound + tol;
  return out;
}

}  // namespace maxitive
