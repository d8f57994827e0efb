#include "expectation.hpp"

#include <algorithm>
#include <cfloat>

#include "error.hpp"
#include "generators.hpp"
#include "logmath.hpp"

namespace maxitive {

namespace {

bool all_neg_inf(std::span<const double> f) {
  return std::all_of(f.begin(), f.end(), [](double v) { return v == kNegInf; });
}

double entropic_value(const EntropicFamily& e, std::span<const double> f) {
  double best = kNegInf;
  std::vector<double> terms(f.size());
  for (const auto& p : e.measures) {
    for (std::size_t x = 0; x < f.size(); ++x) {
      terms[x] = p[x] == 0.0 ? kNegInf : ext_add(std::log(p[x]), ext_mul(e.n, f[x]));
    }
    best = std::max(best, log_sum_exp(terms) / e.n);
  }
  return best;
}

bool pointwise_leq(std::span<const double> f, std::span<const double> g) {
  for (std::size_t x = 0; x < f.size(); ++x) {
    if (!(f[x] <= g[x])) return false;
  }
  return true;
}

std::vector<double> shifted(std::span<const double> f, double c) {
  std::vector<double> out(f.begin(), f.end());
  for (auto& v : out) v = ext_add(v, c);
  return out;
}

}  // namespace

FunctionalModel FunctionalModel::wrapped(Concentration j) {
  auto family = j.family_ptr();
  return FunctionalModel(std::move(family), WrappedMaxitive{std::move(j)});
}

FunctionalModel FunctionalModel::entropic(FamilyPtr family,
                                          std::vector<std::vector<double>> measures, double n) {
  if (!family) fail(ErrorCode::invalid_argument, "functional needs an up-set family");
  if (!(n > 0.0) || n > kMaxEntropicIndex) {
    fail(ErrorCode::invalid_argument, "entropic index must lie in (0, 1e4]");
  }
  if (measures.empty()) fail(ErrorCode::invalid_argument, "entropic family needs a measure");
  for (const auto& p : measures) {
    if (p.size() != family->space().size()) {
      fail(ErrorCode::size_mismatch, "measure length does not match the space");
    }
    double total = 0.0;
    for (double w : p) {
      if (!(w >= 0.0) || !is_finite(w)) {
        fail(ErrorCode::domain_error, "measure weights must be nonnegative");
      }
      total += w;
    }
    if (std::abs(total - 1.0) > 1e-12) fail(ErrorCode::domain_error, "measure must sum to 1");
  }
  return FunctionalModel(std::move(family), EntropicFamily{std::move(measures), n});
}

FunctionalModel FunctionalModel::table(FamilyPtr family,
                                       std::map<std::vector<double>, double> entries) {
  if (!family) fail(ErrorCode::invalid_argument, "functional needs an up-set family");
  for (const auto& [f, v] : entries) {
    if (f.size() != family->space().size()) {
      fail(ErrorCode::size_mismatch, "tabulated function length does not match the space");
    }
    if (std::isnan(v) || v == kPosInf) fail(ErrorCode::domain_error, "tabulated value invalid");
  }
  return FunctionalModel(std::move(family), Tabulated{std::move(entries)});
}

double FunctionalModel::operator()(std::span<const double> f) const {
  if (f.size() != space().size()) {
    fail(ErrorCode::size_mismatch, "function length does not match the space");
  }
  for (double v : f) {
    if (std::isnan(v) || v == kPosInf) {
      fail(ErrorCode::domain_error, "function must be bounded above");
    }
  }
  if (all_neg_inf(f)) return kNegInf;
  if (const auto* w = std::get_if<WrappedMaxitive>(&impl_)) return maxitive_integral(w->j, f);
  if (const auto* e = std::get_if<EntropicFamily>(&impl_)) return entropic_value(*e, f);
  const auto& t = std::get<Tabulated>(impl_);
  const auto it = t.entries.find(std::vector<double>(f.begin(), f.end()));
  if (it == t.entries.end()) fail(ErrorCode::domain_error, "function not tabulated");
  return it->second;
}

std::string FunctionalModel::kind() const {
  if (std::holds_alternative<WrappedMaxitive>(impl_)) return "wrapped_maxitive";
  if (std::holds_alternative<EntropicFamily>(impl_)) return "entropic_family";
  return "table";
}

PropertyReport verify_properties(const FunctionalModel& psi,
                                 std::span<const std::vector<double>> fns, double tol) {
  PropertyReport report;
  const std::vector<double> zero(psi.space().size(), 0.0);
  double at_zero = 0.0;
  try {
    at_zero = psi(zero);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::domain_error) throw;
    return {false, "psi(0) is not available", std::nullopt, std::nullopt};
  }
  if (!(std::abs(at_zero) <= tol)) {
    return {false, "psi(0) = " + format_real(at_zero), std::nullopt, std::nullopt};
  }
  std::vector<double> values(fns.size());
  for (std::size_t i = 0; i < fns.size(); ++i) values[i] = psi(fns[i]);
  for (std::size_t i = 0; i < fns.size(); ++i) {
    for (std::size_t j = 0; j < fns.size(); ++j) {
      if (i == j || !pointwise_leq(fns[i], fns[j])) continue;
      if (signed_gap(values[j], values[i]) < -tol) {
        return {false, "monotonicity fails", i, j};
      }
    }
  }
  for (std::size_t i = 0; i < fns.size(); ++i) {
    for (double c : {-1.25, 0.5, 3.0}) {
      double moved = 0.0;
      try {
        moved = psi(shifted(fns[i], c));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::domain_error) throw;
        continue;
      }
      if (std::abs(signed_gap(moved, ext_add(values[i], c))) > tol) {
        return {false, "translation fails for c = " + format_real(c), i, std::nullopt};
      }
    }
  }
  return report;
}

Concentration induced_concentration(const FunctionalModel& psi, double tol) {
  const auto& family = *psi.family();
  std::vector<double> raw(family.size());
  for (std::size_t i = 0; i < family.size(); ++i) {
    double v = psi(log_indicator(family[i]));
    if (v > 0.0) {
      if (v > tol) {
        fail(ErrorCode::property_violation,
             "psi(-inf 1_{A^c}) = " + format_real(v) + " > 0 at A = " + family[i].to_string());
      }
      v = 0.0;
    }
    raw[i] = v;
  }
  if (raw[family.full_index()] < -tol) {
    fail(ErrorCode::property_violation, "psi(0) = " + format_real(raw[family.full_index()]));
  }
  raw[family.full_index()] = 0.0;
  auto hull = monotone_hull(family, raw);
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (signed_gap(hull[i], raw[i]) > tol) {
      fail(ErrorCode::property_violation,
           "induced set function not monotone at " + family[i].to_string());
    }
  }
  return Concentration(psi.family(), std::move(hull));
}

Staircase simple_staircase(std::span<const double> f, double a, double b, std::size_t n) {
  if (n == 0) fail(ErrorCode::invalid_argument, "staircase needs N >= 1");
  if (!is_finite(a) || !is_finite(b) || !(a < b)) {
    fail(ErrorCode::invalid_argument, "staircase needs finite a < b");
  }
  for (double v : f) {
    if (!(a < v && v < b)) fail(ErrorCode::invalid_argument, "staircase needs a < f < b");
  }
  Staircase s;
  s.step = (b - a) / static_cast<double>(n);
  s.lower.assign(f.size(), kNegInf);
  s.upper.assign(f.size(), kNegInf);
  for (std::size_t j = 0; j < n; ++j) {
    const double level = a + static_cast<double>(j) * s.step;
    for (std::size_t x = 0; x < f.size(); ++x) {
      if (f[x] > level) s.lower[x] = std::max(s.lower[x], level);
      if (f[x] >= level) s.upper[x] = std::max(s.upper[x], level);
    }
  }
  const double slack = 8.0 * DBL_EPSILON * std::max({std::abs(a), std::abs(b), 1.0});
  for (std::size_t x = 0; x < f.size(); ++x) {
    if (!(f[x] - s.step <= s.lower[x] + slack && s.lower[x] <= s.upper[x] && s.upper[x] <= f[x])) {
      fail(ErrorCode::internal, "staircase sandwich violated at element " + std::to_string(x));
    }
  }
  return s;
}

RepresentationGap representation_gap(const FunctionalModel& psi,
                                     std::span<const std::vector<double>> fns) {
  const auto j = induced_concentration(psi);
  RepresentationGap gap;
  for (std::size_t i = 0; i < fns.size(); ++i) {
    const double d = std::abs(signed_gap(psi(fns[i]), maxitive_integral(j, fns[i])));
    if (d > gap.worst || (!gap.worst_index && d == gap.worst)) {
      gap.worst = d;
      gap.worst_index = i;
    }
  }
  return gap;
}

std::vector<double> representation_gap_curve(FamilyPtr family,
                                             const std::vector<std::vector<double>>& measures,
                                             std::span<const double> indices,
                                             std::span<const std::vector<double>> fns) {
  std::vector<double> out;
  out.reserve(indices.size());
  for (double n : indices) {
    out.push_back(
        representation_gap(FunctionalModel::entropic(family, measures, n), fns).worst);
  }
  return out;
}

WeakMaxitivitySample sample_weak_maxitivity(const FunctionalModel& psi, Rng& rng,
                                            std::size_t samples, double tol) {
  const auto& family = *psi.family();
  const auto& space = family.space();
  WeakMaxitivitySample result;
  result.samples = samples;
  for (std::size_t s = 0; s < samples; ++s) {
    const auto k = 1 + rng.below(3);
    std::vector<double> top(space.size(), kNegInf);
    double best = kNegInf;
    for (std::size_t i = 0; i < k; ++i) {
      const auto g = random_increasing_fn(rng, family);
      best = std::max(best, psi(g));
      for (std::size_t x = 0; x < top.size(); ++x) top[x] = std::max(top[x], g[x]);
    }
    for (auto& v : top) {
      if (!rng.bernoulli(0.3)) v = ext_add(v, -rng.uniform(0.0, 2.0));
    }
    const double value = psi(increasing_envelope(space, top));
    const double gap = signed_gap(best, value);
    result.worst_gap = std::min(result.worst_gap, gap);
    if (gap < -tol) result.ok = false;
  }
  return result;
}

std::vector<double> truncate_above(std::span<const double> f, double level) {
  std::vector<double> out(f.begin(), f.end());
  for (auto& v : out) v = std::min(v, level);
  return out;
}

std::vector<double> truncate_below(std::span<const double> f, double level) {
  std::vector<double> out(f.begin(), f.end());
  for (auto& v : out) v = std::max(v, level);
  return out;
}

}  // namespace maxitive
