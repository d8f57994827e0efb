#include "cramer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "convex.hpp"
#include "error.hpp"
#include "extended_real.hpp"
#include "logmath.hpp"
#include "parallel.hpp"
#include "text.hpp"

namespace maxitive {

namespace {

constexpr std::size_t kLatticeTailLimit = 4096;
constexpr std::size_t kGeneralTailLimit = 64;
constexpr std::size_t kMaxLatticeSpan = 4096;
constexpr std::size_t kMaxAtoms = 2'000'000;

/// Support x0 + h * k_i with integer k_i >= 0.
struct Lattice {
  double x0 = 0.0;
  double h = 1.0;
  std::vector<std::size_t> k;
  std::vector<double> log_p;
  std::size_t span = 0;
};

std::optional<Lattice> detect_lattice(const SampleModel& model) {
  const auto& pts = model.points();
  Lattice lat;
  lat.x0 = pts.front();
  for (double p : model.probs()) lat.log_p.push_back(std::log(p));
  if (pts.size() == 1) {
    lat.k = {0};
    return lat;
  }
  double gap = kPosInf;
  for (std::size_t i = 1; i < pts.size(); ++i) gap = std::min(gap, pts[i] - pts[i - 1]);
  for (int q = 1; q <= 64; ++q) {
    const double h = gap / q;
    std::vector<std::size_t> ks;
    bool fits = true;
    for (double x : pts) {
      const double r = (x - lat.x0) / h;
      const double nearest = std::round(r);
      if (std::abs(r - nearest) > 1e-9 * std::max(1.0, r) || nearest > kMaxLatticeSpan) {
        fits = false;
        break;
      }
      ks.push_back(static_cast<std::size_t>(nearest));
    }
    if (fits) {
      lat.h = h;
      lat.k = std::move(ks);
      lat.span = lat.k.back();
      return lat;
    }
  }
  return std::nullopt;
}

/// Smallest t in [0, top] with t / n >= r (or > r); top + 1 if none.
std::size_t first_index(double r, std::size_t n, std::size_t top, bool open) {
  const auto dn = static_cast<double>(n);
  auto pass = [&](std::size_t t) {
    const double q = static_cast<double>(t) / dn;
    return open ? q > r : q >= r;
  };
  if (std::isnan(r)) fail(ErrorCode::domain_error, "threshold is NaN");
  if (r <= 0.0 && pass(0)) return 0;
  if (!pass(top)) return top + 1;
  double guess = std::ceil(r * dn);
  guess = std::clamp(guess, 0.0, static_cast<double>(top));
  auto t = static_cast<std::size_t>(guess);
  while (t > 0 && pass(t - 1)) --t;
  while (t <= top && !pass(t)) ++t;
  return t;
}

/// suffix[t] = log sum_{s >= t} e^{pmf[s]}; suffix has pmf.size() + 1 entries.
std::vector<double> suffix_log_sums(const std::vector<double>& pmf) {
  std::vector<double> suffix(pmf.size() + 1, kNegInf);
  for (std::size_t t = pmf.size(); t-- > 0;) suffix[t] = log_add(pmf[t], suffix[t + 1]);
  return suffix;
}

/// One step of the log-domain convolution of T_n with the lattice step law.
std::vector<double> convolve_step(const std::vector<double>& pmf, const Lattice& lat) {
  std::vector<double> next(pmf.size() + lat.span, kNegInf);
  std::vector<double> terms(lat.k.size());
  for (std::size_t t = 0; t < next.size(); ++t) {
    for (std::size_t i = 0; i < lat.k.size(); ++i) {
      const std::size_t k = lat.k[i];
      terms[i] = (t >= k && t - k < pmf.size()) ? ext_add(pmf[t - k], lat.log_p[i]) : kNegInf;
    }
    next[t] = log_sum_exp(terms);
  }
  return next;
}

/// Atoms of S_n for a support without lattice structure.
Atoms general_sum_atoms(const SampleModel& model, std::size_t n) {
  Atoms cur{{0.0}, {0.0}};
  const auto& pts = model.points();
  const auto& probs = model.probs();
  for (std::size_t step = 0; step < n; ++step) {
    std::vector<std::pair<double, double>> next;
    next.reserve(cur.values.size() * pts.size());
    for (std::size_t a = 0; a < cur.values.size(); ++a) {
      for (std::size_t i = 0; i < pts.size(); ++i) {
        next.emplace_back(cur.values[a] + pts[i], cur.log_probs[a] + std::log(probs[i]));
      }
    }
    std::sort(next.begin(), next.end());
    Atoms merged;
    for (const auto& [v, lp] : next) {
      if (!merged.values.empty() &&
          std::abs(v - merged.values.back()) <= 1e-9 * std::max(1.0, std::abs(v))) {
        merged.log_probs.back() = log_add(merged.log_probs.back(), lp);
      } else {
        merged.values.push_back(v);
        merged.log_probs.push_back(lp);
      }
    }
    if (merged.values.size() > kMaxAtoms) {
      fail(ErrorCode::cap_exceeded, "exact law of the sum has too many atoms");
    }
    cur = std::move(merged);
  }
  return cur;
}

void check_n(std::size_t n) {
  if (n == 0) fail(ErrorCode::invalid_argument, "n must be positive");
}

double clamp_log_prob(double v) { return v > 0.0 ? 0.0 : v; }

}  // namespace

SampleModel SampleModel::bernoulli(double p) {
  if (!(p > 0.0 && p < 1.0)) fail(ErrorCode::invalid_argument, "bernoulli p must lie in (0, 1)");
  SampleModel m;
  m.family_ = ModelFamily::bernoulli;
  m.params_[0] = p;
  m.points_ = {0.0, 1.0};
  m.probs_ = {1.0 - p, p};
  return m;
}

SampleModel SampleModel::gaussian(double mean, double variance) {
  if (!is_finite(mean) || !(variance > 0.0) || !is_finite(variance)) {
    fail(ErrorCode::invalid_argument, "gaussian needs finite mean and positive variance");
  }
  SampleModel m;
  m.family_ = ModelFamily::gaussian;
  m.params_[0] = mean;
  m.params_[1] = variance;
  return m;
}

SampleModel SampleModel::exponential(double lambda) {
  if (!(lambda > 0.0) || !is_finite(lambda)) {
    fail(ErrorCode::invalid_argument, "exponential rate must be positive");
  }
  SampleModel m;
  m.family_ = ModelFamily::exponential;
  m.params_[0] = lambda;
  return m;
}

SampleModel SampleModel::finite_support(std::vector<double> points, std::vector<double> probs) {
  if (points.empty() || points.size() != probs.size()) {
    fail(ErrorCode::invalid_argument, "finite support needs matching points and probabilities");
  }
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return points[a] < points[b]; });
  SampleModel m;
  m.family_ = ModelFamily::finite_support;
  double total = 0.0;
  for (auto i : order) {
    if (!is_finite(points[i])) fail(ErrorCode::invalid_argument, "support points must be finite");
    if (!(probs[i] > 0.0 && probs[i] <= 1.0)) {
      fail(ErrorCode::invalid_argument, "probabilities must lie in (0, 1]");
    }
    total += probs[i];
    if (!m.points_.empty() && m.points_.back() == points[i]) {
      m.probs_.back() += probs[i];
    } else {
      m.points_.push_back(points[i]);
      m.probs_.push_back(probs[i]);
    }
  }
  if (std::abs(total - 1.0) > 1e-12) {
    fail(ErrorCode::invalid_argument, "probabilities must sum to 1");
  }
  return m;
}

SampleModel SampleModel::parse(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    fail(ErrorCode::parse_error, "model spec must be family:parameters, got '" +
                                     std::string(spec) + "'");
  }
  const std::string family(trim(spec.substr(0, colon)));
  const auto args = split(spec.substr(colon + 1), ',');
  auto need = [&](std::size_t count) {
    if (args.size() != count) {
      fail(ErrorCode::parse_error, family + " expects " + std::to_string(count) + " parameter(s)");
    }
  };
  if (family == "bernoulli") {
    need(1);
    return bernoulli(parse_real(args[0]));
  }
  if (family == "gaussian" || family == "normal") {
    need(2);
    return gaussian(parse_real(args[0]), parse_real(args[1]));
  }
  if (family == "exponential") {
    need(1);
    return exponential(parse_real(args[0]));
  }
  if (family == "finite") {
    std::vector<double> pts;
    std::vector<double> probs;
    for (const auto& item : args) {
      const auto at = item.find('@');
      if (at == std::string::npos) fail(ErrorCode::parse_error, "finite atoms are x@p");
      pts.push_back(parse_real(item.substr(0, at)));
      probs.push_back(parse_real(item.substr(at + 1)));
    }
    return finite_support(std::move(pts), std::move(probs));
  }
  fail(ErrorCode::parse_error, "unknown model family '" + family + "'");
}

std::string SampleModel::to_string() const {
  switch (family_) {
    case ModelFamily::bernoulli:
      return "bernoulli:" + format_shortest(params_[0]);
    case ModelFamily::gaussian:
      return "gaussian:" + format_shortest(params_[0]) + "," + format_shortest(params_[1]);
    case ModelFamily::exponential:
      return "exponential:" + format_shortest(params_[0]);
    case ModelFamily::finite_support: {
      std::string out = "finite:";
      for (std::size_t i = 0; i < points_.size(); ++i) {
        if (i > 0) out += ",";
        out += format_shortest(points_[i]) + "@" + format_shortest(probs_[i]);
      }
      return out;
    }
  }
  return {};
}

double SampleModel::mean() const {
  switch (family_) {
    case ModelFamily::bernoulli:
      return params_[0];
    case ModelFamily::gaussian:
      return params_[0];
    case ModelFamily::exponential:
      return 1.0 / params_[0];
    case ModelFamily::finite_support: {
      double m = 0.0;
      for (std::size_t i = 0; i < points_.size(); ++i) m += points_[i] * probs_[i];
      return m;
    }
  }
  return 0.0;
}

double SampleModel::variance() const {
  switch (family_) {
    case ModelFamily::bernoulli:
      return params_[0] * (1.0 - params_[0]);
    case ModelFamily::gaussian:
      return params_[1];
    case ModelFamily::exponential:
      return 1.0 / (params_[0] * params_[0]);
    case ModelFamily::finite_support: {
      const double m = mean();
      double v = 0.0;
      for (std::size_t i = 0; i < points_.size(); ++i) v += probs_[i] * (points_[i] - m) * (points_[i] - m);
      return v;
    }
  }
  return 0.0;
}

double SampleModel::support_min() const {
  switch (family_) {
    case ModelFamily::gaussian:
      return kNegInf;
    case ModelFamily::exponential:
      return 0.0;
    default:
      return points_.front();
  }
}

double SampleModel::support_max() const {
  switch (family_) {
    case ModelFamily::gaussian:
    case ModelFamily::exponential:
      return kPosInf;
    default:
      return points_.back();
  }
}

double SampleModel::log_mgf(double mu) const {
  if (!(mu >= 0.0) || !is_finite(mu)) {
    fail(ErrorCode::invalid_argument, "log-MGF is evaluated on the dual cone mu >= 0 only");
  }
  if (mu == 0.0) return 0.0;
  switch (family_) {
    case ModelFamily::bernoulli:
      return log_add(std::log1p(-params_[0]), std::log(params_[0]) + mu);
    case ModelFamily::gaussian:
      return params_[0] * mu + 0.5 * params_[1] * mu * mu;
    case ModelFamily::exponential:
      return mu < params_[0] ? -std::log1p(-mu / params_[0]) : kPosInf;
    case ModelFamily::finite_support: {
      std::vector<double> terms(points_.size());
      for (std::size_t i = 0; i < points_.size(); ++i) terms[i] = std::log(probs_[i]) + mu * points_[i];
      return log_sum_exp(terms);
    }
  }
  return 0.0;
}

double SampleModel::log_mgf_derivative(double mu) const {
  if (!(mu >= 0.0) || !is_finite(mu)) {
    fail(ErrorCode::invalid_argument, "log-MGF is evaluated on the dual cone mu >= 0 only");
  }
  switch (family_) {
    case ModelFamily::bernoulli:
      return 1.0 / (1.0 + (1.0 - params_[0]) / params_[0] * std::exp(-mu));
    case ModelFamily::gaussian:
      return params_[0] + params_[1] * mu;
    case ModelFamily::exponential:
      return mu < params_[0] ? 1.0 / (params_[0] - mu) : kPosInf;
    case ModelFamily::finite_support: {
      std::vector<double> terms(points_.size());
      for (std::size_t i = 0; i < points_.size(); ++i) terms[i] = std::log(probs_[i]) + mu * points_[i];
      const double norm = log_sum_exp(terms);
      double d = 0.0;
      for (std::size_t i = 0; i < points_.size(); ++i) d += points_[i] * std::exp(terms[i] - norm);
      return d;
    }
  }
  return 0.0;
}

double SampleModel::mgf_domain_end() const {
  return family_ == ModelFamily::exponential ? params_[0] : kPosInf;
}

double SampleModel::sample(Rng& rng) const {
  switch (family_) {
    case ModelFamily::bernoulli:
      return rng.bernoulli(params_[0]) ? 1.0 : 0.0;
    case ModelFamily::gaussian:
      return params_[0] + std::sqrt(params_[1]) * rng.normal();
    case ModelFamily::exponential:
      return rng.exponential(params_[0]);
    case ModelFamily::finite_support: {
      const double u = rng.uniform();
      double acc = 0.0;
      for (std::size_t i = 0; i + 1 < points_.size(); ++i) {
        acc += probs_[i];
        if (u < acc) return points_[i];
      }
      return points_.back();
    }
  }
  return 0.0;
}

namespace {

/// Rate at or beyond the upper end of the support, if x is there.
std::optional<double> edge_rate(const SampleModel& model, double x) {
  if (std::isnan(x)) fail(ErrorCode::domain_error, "rate evaluated at NaN");
  if (x <= model.mean()) return 0.0;
  const double top = model.support_max();
  if (x > top) return kPosInf;
  if (x == top) return 0.0 - std::log(model.probs().back());
  return std::nullopt;
}

double objective(const SampleModel& model, double mu, double x) {
  const double lam = model.log_mgf(mu);
  return lam == kPosInf ? kNegInf : mu * x - lam;
}

}  // namespace

double monotone_cramer_rate(const SampleModel& model, double x) {
  if (const auto r = edge_rate(model, x)) return *r;
  // Upper bracket with derivative >= x.
  const double end = model.mgf_domain_end();
  double hi = 1.0;
  if (is_finite(end)) {
    hi = 0.5 * end;
    for (int k = 2; k < 1000 && model.log_mgf_derivative(hi) < x; ++k) {
      hi = end * (1.0 - std::ldexp(1.0, -k));
      if (!(hi < end)) break;
    }
  } else {
    for (int k = 0; k < 1100 && model.log_mgf_derivative(hi) < x; ++k) hi *= 2.0;
  }
  double lo = 0.0;
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (model.log_mgf_derivative(mid) < x) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::max({0.0, objective(model, lo, x), objective(model, hi, x)});
}

double monotone_cramer_rate_golden(const SampleModel& model, double x) {
  if (const auto r = edge_rate(model, x)) return *r;
  double hi = 1.0;
  while (hi < 1e6 && objective(model, 2.0 * hi, x) >= objective(model, hi, x)) hi *= 2.0;
  double lo = 0.0;
  hi *= 2.0;
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = hi - phi * (hi - lo);
  double d = lo + phi * (hi - lo);
  double fc = objective(model, c, x);
  double fd = objective(model, d, x);
  while (hi - lo > 1e-10 * std::max(1.0, hi)) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - phi * (hi - lo);
      fc = objective(model, c, x);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + phi * (hi - lo);
      fd = objective(model, d, x);
    }
  }
  return std::max({0.0, fc, fd, objective(model, lo, x), objective(model, hi, x)});
}

std::optional<double> closed_form_rate(const SampleModel& model, double x) {
  if (std::isnan(x)) fail(ErrorCode::domain_error, "rate evaluated at NaN");
  switch (model.family()) {
    case ModelFamily::bernoulli: {
      const double p = model.parameter(0);
      if (x <= p) return 0.0;
      if (x > 1.0) return kPosInf;
      if (x == 1.0) return -std::log(p);
      return x * std::log(x / p) + (1.0 - x) * std::log((1.0 - x) / (1.0 - p));
    }
    case ModelFamily::gaussian: {
      const double d = x - model.parameter(0);
      return d <= 0.0 ? 0.0 : d * d / (2.0 * model.parameter(1));
    }
    case ModelFamily::exponential: {
      const double lx = model.parameter(0) * x;
      return lx <= 1.0 ? 0.0 : lx - 1.0 - std::log(lx);
    }
    case ModelFamily::finite_support:
      return std::nullopt;
  }
  return std::nullopt;
}

std::size_t finite_support_tail_limit(const SampleModel& model) {
  if (model.family() != ModelFamily::finite_support) return 0;
  return detect_lattice(model) ? kLatticeTailLimit : kGeneralTailLimit;
}

std::vector<std::vector<double>> exact_tail_table(const SampleModel& model,
                                                  const std::vector<double>& as,
                                                  const std::vector<std::size_t>& ns, bool open) {
  for (auto n : ns) check_n(n);
  for (double a : as) {
    if (std::isnan(a)) fail(ErrorCode::domain_error, "threshold is NaN");
  }
  std::vector<std::vector<double>> out(as.size(), std::vector<double>(ns.size(), kNegInf));
  switch (model.family()) {
    case ModelFamily::exponential:
      fail(ErrorCode::missing_capability, "exponential model has no exact tail");
    case ModelFamily::gaussian: {
      const double m = model.parameter(0);
      const double sd = std::sqrt(model.parameter(1));
      for (std::size_t i = 0; i < as.size(); ++i) {
        for (std::size_t k = 0; k < ns.size(); ++k) {
          if (as[i] == kNegInf) {
            out[i][k] = 0.0;
          } else if (as[i] == kPosInf) {
            out[i][k] = kNegInf;
          } else {
            out[i][k] = clamp_log_prob(
                log_normal_tail((as[i] - m) * std::sqrt(static_cast<double>(ns[k])) / sd));
          }
        }
      }
      return out;
    }
    case ModelFamily::bernoulli: {
      const double p = model.parameter(0);
      const double lp = std::log(p);
      const double lq = std::log1p(-p);
      for (std::size_t k = 0; k < ns.size(); ++k) {
        const std::size_t n = ns[k];
        std::vector<double> pmf(n + 1);
        for (std::size_t j = 0; j <= n; ++j) pmf[j] = log_binomial_pmf(n, j, lp, lq);
        const auto suffix = suffix_log_sums(pmf);
        for (std::size_t i = 0; i < as.size(); ++i) {
          const auto t = first_index(as[i], n, n, open);
          out[i][k] = t == 0 ? 0.0 : clamp_log_prob(suffix[t]);
        }
      }
      return out;
    }
    case ModelFamily::finite_support:
      break;
  }
  std::size_t n_max = 0;
  for (auto n : ns) n_max = std::max(n_max, n);
  const auto lat = detect_lattice(model);
  if (lat) {
    if (n_max > kLatticeTailLimit) {
      fail(ErrorCode::missing_capability, "exact finite-support tails limited to n <= 4096");
    }
    std::vector<double> pmf{0.0};
    for (std::size_t n = 1; n <= n_max; ++n) {
      pmf = convolve_step(pmf, *lat);
      bool wanted = false;
      for (auto m : ns) wanted = wanted || m == n;
      if (!wanted) continue;
      const auto suffix = suffix_log_sums(pmf);
      const std::size_t top = pmf.size() - 1;
      for (std::size_t i = 0; i < as.size(); ++i) {
        const double r = (as[i] - lat->x0) / lat->h;
        const auto t = first_index(r, n, top, open);
        const double v = t == 0 ? 0.0 : clamp_log_prob(suffix[t]);
        for (std::size_t k = 0; k < ns.size(); ++k) {
          if (ns[k] == n) out[i][k] = v;
        }
      }
    }
    return out;
  }
  if (n_max > kGeneralTailLimit) {
    fail(ErrorCode::missing_capability,
         "exact tails for non-lattice finite supports limited to n <= 64");
  }
  for (std::size_t k = 0; k < ns.size(); ++k) {
    const auto atoms = sample_mean_atoms(model, ns[k]);
    const auto suffix = suffix_log_sums(atoms.log_probs);
    for (std::size_t i = 0; i < as.size(); ++i) {
      const auto it = open ? std::upper_bound(atoms.values.begin(), atoms.values.end(), as[i])
                           : std::lower_bound(atoms.values.begin(), atoms.values.end(), as[i]);
      const auto t = static_cast<std::size_t>(it - atoms.values.begin());
      out[i][k] = t == 0 ? 0.0 : clamp_log_prob(suffix[t]);
    }
  }
  return out;
}

double exact_tail_log(const SampleModel& model, double a, std::size_t n, bool open) {
  return exact_tail_table(model, {a}, {n}, open)[0][0];
}

Atoms sample_mean_atoms(const SampleModel& model, std::size_t n) {
  check_n(n);
  const auto dn = static_cast<double>(n);
  Atoms out;
  switch (model.family()) {
    case ModelFamily::gaussian:
    case ModelFamily::exponential:
      fail(ErrorCode::missing_capability, "continuous model has no atoms");
    case ModelFamily::bernoulli: {
      const double lp = std::log(model.parameter(0));
      const double lq = std::log1p(-model.parameter(0));
      for (std::size_t j = 0; j <= n; ++j) {
        out.values.push_back(static_cast<double>(j) / dn);
        out.log_probs.push_back(log_binomial_pmf(n, j, lp, lq));
      }
      return out;
    }
    case ModelFamily::finite_support:
      break;
  }
  if (const auto lat = detect_lattice(model)) {
    if (n > kLatticeTailLimit) {
      fail(ErrorCode::missing_capability, "exact finite-support law limited to n <= 4096");
    }
    std::vector<double> pmf{0.0};
    for (std::size_t s = 0; s < n; ++s) pmf = convolve_step(pmf, *lat);
    for (std::size_t t = 0; t < pmf.size(); ++t) {
      if (pmf[t] == kNegInf) continue;
      out.values.push_back(lat->x0 + lat->h * static_cast<double>(t) / dn);
      out.log_probs.push_back(pmf[t]);
    }
    return out;
  }
  if (n > kGeneralTailLimit) {
    fail(ErrorCode::missing_capability, "exact law for non-lattice supports limited to n <= 64");
  }
  auto sums = general_sum_atoms(model, n);
  for (auto& v : sums.values) v /= dn;
  return sums;
}

SupermultiplicativityReport supermultiplicativity_check(const SampleModel& model,
                                                        const std::vector<double>& as,
                                                        const std::vector<std::size_t>& ns,
                                                        double tol) {
  std::vector<std::size_t> all;
  for (auto n : ns) {
    check_n(n);
    all.push_back(n);
    all.push_back(2 * n);
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  const auto tails = exact_tail_table(model, as, all);
  SupermultiplicativityReport report;
  for (std::size_t i = 0; i < as.size(); ++i) {
    auto at = [&](std::size_t n) {
      const auto pos = std::lower_bound(all.begin(), all.end(), n) - all.begin();
      return tails[i][static_cast<std::size_t>(pos)] / static_cast<double>(n);
    };
    for (auto n : ns) {
      ++report.pairs;
      const double gap = signed_gap(at(2 * n), at(n));
      if (gap < report.worst_gap) {
        report.worst_gap = gap;
        if (gap < -tol) {
          report.witness_n = n;
          report.witness_a = as[i];
        }
      }
    }
  }
  report.ok = !report.witness_n.has_value();
  return report;
}

SupermultiplicativityReport supermultiplicativity_check(const SampleModel& model, double a,
                                                        const std::vector<std::size_t>& ns,
                                                        double tol) {
  return supermultiplicativity_check(model, std::vector<double>{a}, ns, tol);
}

double cramer_tolerance(const SampleModel& model, std::size_t n) {
  check_n(n);
  const auto dn = static_cast<double>(n);
  if (model.family() == ModelFamily::gaussian) return 6.0 / dn;
  return (std::log(dn) + 5.0) / dn;
}

RateReport verify_monotone_cramer(const SampleModel& model, const std::vector<double>& as,
                                  const std::vector<std::size_t>& ns, std::size_t threads,
                                  std::optional<double> tolerance) {
  if (as.empty()) fail(ErrorCode::invalid_argument, "a-grid is empty");
  if (ns.empty()) fail(ErrorCode::invalid_argument, "n schedule is empty");
  for (std::size_t k = 1; k < ns.size(); ++k) {
    if (!(ns[k - 1] < ns[k])) fail(ErrorCode::invalid_argument, "n schedule must increase");
  }
  for (std::size_t i = 1; i < as.size(); ++i) {
    if (!(as[i - 1] < as[i])) fail(ErrorCode::invalid_argument, "a-grid must increase");
  }
  if (!model.has_exact_tail()) {
    fail(ErrorCode::missing_capability, "model has no exact tail; use the Monte Carlo path");
  }
  RateReport rep;
  rep.a = as;
  rep.n = ns;
  rep.rate.resize(as.size());
  rep.rate_ref.resize(as.size());
  parallel_for(as.size(), threads, [&](std::size_t i) {
    rep.rate[i] = monotone_cramer_rate(model, as[i]);
    rep.rate_ref[i] = closed_form_rate(model, as[i]);
  });
  const auto closed = exact_tail_table(model, as, ns, false);
  const auto open = exact_tail_table(model, as, ns, true);
  rep.trace.assign(as.size(), std::vector<double>(ns.size()));
  rep.open_trace.assign(as.size(), std::vector<double>(ns.size()));
  for (std::size_t i = 0; i < as.size(); ++i) {
    for (std::size_t k = 0; k < ns.size(); ++k) {
      rep.trace[i][k] = closed[i][k] / static_cast<double>(ns[k]);
      rep.open_trace[i][k] = open[i][k] / static_cast<double>(ns[k]);
    }
  }
  rep.tolerance = tolerance.value_or(cramer_tolerance(model, ns.back()));
  const double top = model.support_max();
  for (std::size_t i = 0; i < as.size(); ++i) {
    const double limit = 0.0 - rep.rate[i];
    const double err = std::abs(signed_gap(rep.trace[i].back(), limit));
    rep.worst_error = std::max(rep.worst_error, err);
    if (!(err <= rep.tolerance)) {
      rep.limit_ok = false;
      rep.failures.push_back("closed tail at a = " + format_shortest(as[i]) + " misses the rate by " +
                             format_shortest(err));
    }
    const double open_limit = as[i] >= top ? kNegInf : limit;
    const double open_err = std::abs(signed_gap(rep.open_trace[i].back(), open_limit));
    if (!(open_err <= rep.tolerance)) {
      rep.open_limit_ok = false;
      rep.failures.push_back("open tail at a = " + format_shortest(as[i]) + " misses the rate by " +
                             format_shortest(open_err));
    }
    for (std::size_t k = 0; k < ns.size(); ++k) {
      if (signed_gap(limit, rep.trace[i][k]) < -1e-12) {
        rep.upper_bound_ok = false;
        rep.failures.push_back("upper bound fails at a = " + format_shortest(as[i]) +
                               ", n = " + std::to_string(ns[k]));
      }
    }
    if (rep.rate_ref[i]) {
      rep.worst_ref_error =
          std::max(rep.worst_ref_error, std::abs(signed_gap(rep.rate[i], *rep.rate_ref[i])));
    }
    if (as[i] <= model.mean() && rep.rate[i] != 0.0) {
      rep.rate_shape_ok = false;
      rep.failures.push_back("rate nonzero below the mean at a = " + format_shortest(as[i]));
    }
    if (i > 0 && rep.rate[i] < rep.rate[i - 1]) {
      rep.rate_shape_ok = false;
      rep.failures.push_back("rate decreases at a = " + format_shortest(as[i]));
    }
  }
  if (!is_convex_on_grid(as, rep.rate, 1e-9)) {
    rep.rate_shape_ok = false;
    rep.failures.push_back("rate is not convex on the a-grid");
  }
  return rep;
}

EmpiricalJ empirical_J(const SampleModel& model, double a, std::size_t n, std::uint64_t trials,
                       std::uint64_t seed, std::size_t threads) {
  check_n(n);
  if (trials == 0) fail(ErrorCode::invalid_argument, "trials must be positive");
  if (std::isnan(a)) fail(ErrorCode::domain_error, "threshold is NaN");
  constexpr std::uint64_t kBlock = 4096;
  const std::uint64_t blocks = (trials + kBlock - 1) / kBlock;
  std::vector<std::uint64_t> hits(blocks, 0);
  const auto dn = static_cast<double>(n);
  parallel_for(static_cast<std::size_t>(blocks), threads, [&](std::size_t b) {
    Rng rng(derive_seed(seed, b));
    const std::uint64_t begin = b * kBlock;
    const std::uint64_t end = std::min(trials, begin + kBlock);
    std::uint64_t count = 0;
    for (std::uint64_t t = begin; t < end; ++t) {
      double sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) sum += model.sample(rng);
      if (sum / dn >= a) ++count;
    }
    hits[b] = count;
  });
  EmpiricalJ out;
  out.trials = trials;
  for (auto h : hits) out.hits += h;
  const auto dt = static_cast<double>(trials);
  const double phat = static_cast<double>(out.hits) / dt;
  const double z = 1.96;
  const double denom = 1.0 + z * z / dt;
  const double center = (phat + z * z / (2.0 * dt)) / denom;
  const double half = z / denom * std::sqrt(phat * (1.0 - phat) / dt + z * z / (4.0 * dt * dt));
  const double lo = std::max(0.0, center - half);
  const double hi = std::min(1.0, center + half);
  out.ci_lo = lo == 0.0 ? kNegInf : std::log(lo) / dn;
  out.ci_hi = std::min(0.0, std::log(hi) / dn);
  if (out.hits == 0) {
    out.zero_hits = true;
    out.estimate = kNegInf;
    out.zero_hit_bound = std::log(3.0 / dt) / dn;
  } else {
    out.estimate = out.hits == trials ? 0.0 : std::log(phat) / dn;
  }
  return out;
}

double product_cramer_rate(const std::vector<SampleModel>& coords, const std::vector<double>& x,
                           double mu_max, std::size_t points) {
  const std::size_t d = coords.size();
  if (d == 0 || d > 3) fail(ErrorCode::invalid_argument, "product rate supports 1 to 3 coordinates");
  if (x.size() != d) fail(ErrorCode::size_mismatch, "point dimension does not match");
  const auto mu = dual_grid(mu_max, points);
  // Per-axis terms mu x_i - Lambda_i(mu); the max over the product grid is taken jointly.
  std::vector<std::vector<double>> axis(d, std::vector<double>(mu.size()));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t k = 0; k < mu.size(); ++k) axis[i][k] = objective(coords[i], mu[k], x[i]);
  }
  const std::size_t m = mu.size();
  double best = kNegInf;
  const std::size_t m1 = d > 1 ? m : 1;
  const std::size_t m2 = d > 2 ? m : 1;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m1; ++b) {
      const double ab = axis[0][a] + (d > 1 ? axis[1][b] : 0.0);
      for (std::size_t c = 0; c < m2; ++c) {
        best = std::max(best, ab + (d > 2 ? axis[2][c] : 0.0));
      }
    }
  }
  return std::max(0.0, best);
}

}  // namespace maxitive
