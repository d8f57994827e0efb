#include "concentration.hpp"

#include <algorithm>

#include "error.hpp"

namespace maxitive {

namespace {

void check_length(const FinitePreorder& space, std::span<const double> f) {
  if (f.size() != space.size()) {
    fail(ErrorCode::size_mismatch, "function has " + std::to_string(f.size()) +
                                       " values, space has " + std::to_string(space.size()));
  }
}

void check_bounded_above(std::span<const double> f) {
  for (double v : f) {
    if (std::isnan(v)) fail(ErrorCode::domain_error, "function value is NaN");
    if (v == kPosInf) fail(ErrorCode::domain_error, "function must be bounded above");
  }
}

void check_increasing_fn(const FinitePreorder& space, std::span<const double> f) {
  check_length(space, f);
  check_bounded_above(f);
  if (!is_increasing(space, f)) fail(ErrorCode::not_increasing, "function is not increasing");
}

std::vector<double> distinct_finite(std::span<const double> f) {
  std::vector<double> v;
  for (double x : f) {
    if (is_finite(x)) v.push_back(x);
  }
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

FamilyPtr make_family(const FinitePreorder& space, std::size_t cap) {
  return std::make_shared<const UpSetFamily>(enumerate_up_sets(space, cap));
}

IncreasingFn::IncreasingFn(const FinitePreorder& space, std::vector<double> values)
    : values_(std::move(values)) {
  check_increasing_fn(space, values_);
}

RateFunction::RateFunction(std::vector<double> values) : values_(std::move(values)) {
  for (double& v : values_) {
    if (std::isnan(v) || v < 0.0) fail(ErrorCode::domain_error, "rate values must lie in [0, inf]");
    if (v == 0.0) v = 0.0;
  }
}

Concentration::Concentration(FamilyPtr family, std::vector<double> values)
    : family_(std::move(family)), values_(std::move(values)) {
  if (!family_) fail(ErrorCode::invalid_argument, "concentration needs an up-set family");
  const auto& fam = *family_;
  if (values_.size() != fam.size()) {
    fail(ErrorCode::size_mismatch, "concentration has " + std::to_string(values_.size()) +
                                       " values for " + std::to_string(fam.size()) + " up-sets");
  }
  for (double& v : values_) {
    if (std::isnan(v) || v > 0.0) {
      fail(ErrorCode::domain_error, "concentration values must lie in [-inf, 0]");
    }
    if (v == 0.0) v = 0.0;
  }
  if (values_[fam.empty_index()] != kNegInf) {
    fail(ErrorCode::domain_error, "concentration of the empty set must be -inf");
  }
  if (values_[fam.full_index()] != 0.0) {
    fail(ErrorCode::domain_error, "concentration of the full space must be 0");
  }
  const auto& space = fam.space();
  principal_index_.resize(space.size());
  for (std::size_t x = 0; x < space.size(); ++x) {
    principal_index_[x] = *fam.index_of(space.principal_up(x));
  }
  // Every strict inclusion of up-sets is a chain of single-step extensions A -> A u up(x).
  for (std::size_t i = 0; i < fam.size(); ++i) {
    const Subset& a = fam[i];
    for (std::size_t x = 0; x < space.size(); ++x) {
      if (a.contains(x)) continue;
      const auto j = *fam.index_of(a | space.principal_up(x));
      if (values_[i] > values_[j]) {
        fail(ErrorCode::domain_error, "concentration is not monotone: J(" + a.to_string() +
                                          ") = " + format_real(values_[i]) + " > J(" +
                                          fam[j].to_string() + ") = " + format_real(values_[j]));
      }
    }
  }
}

Concentration Concentration::from_rate(FamilyPtr family, std::span<const double> rate) {
  if (!family) fail(ErrorCode::invalid_argument, "concentration needs an up-set family");
  check_length(family->space(), rate);
  RateFunction checked(std::vector<double>(rate.begin(), rate.end()));
  if (*std::min_element(rate.begin(), rate.end()) != 0.0) {
    fail(ErrorCode::domain_error, "rate function must attain 0");
  }
  std::vector<double> values(family->size());
  for (std::size_t i = 0; i < family->size(); ++i) {
    double m = kPosInf;
    for (auto x : (*family)[i].members()) m = std::min(m, rate[x]);
    values[i] = 0.0 - m;
  }
  return Concentration(std::move(family), std::move(values));
}

std::size_t Concentration::index_of(const Subset& upset) const {
  const auto idx = family_->index_of(upset);
  if (!idx) {
    if (upset.size() != space().size()) {
      fail(ErrorCode::size_mismatch, "subset does not belong to this space");
    }
    fail(ErrorCode::not_upset, "subset " + upset.to_string() + " is not an up-set");
  }
  return *idx;
}

double Concentration::at(const Subset& upset) const { return values_[index_of(upset)]; }

Capacity Capacity::from_values(FamilyPtr family, std::span<const double> pi) {
  if (!family) fail(ErrorCode::invalid_argument, "capacity needs an up-set family");
  std::vector<double> logs(pi.size());
  for (std::size_t i = 0; i < pi.size(); ++i) {
    if (std::isnan(pi[i]) || pi[i] < 0.0 || pi[i] > 1.0) {
      fail(ErrorCode::domain_error, "capacity values must lie in [0, 1]");
    }
    logs[i] = pi[i] == 1.0 ? 0.0 : std::log(pi[i]);
  }
  return Capacity(Concentration(std::move(family), std::move(logs)));
}

double Capacity::at(std::size_t index) const {
  const double j = log_.at(index);
  return j == 0.0 ? 1.0 : std::exp(j);
}

Capacity capacity_from_concentration(const Concentration& j) { return Capacity(j); }

Concentration concentration_from_capacity(const Capacity& pi) { return pi.log_values(); }

Subset level_set_geq(std::span<const double> f, double v) {
  Subset s(f.size());
  for (std::size_t x = 0; x < f.size(); ++x) {
    if (f[x] >= v) s.insert(x);
  }
  return s;
}

Subset level_set_gt(std::span<const double> f, double v) {
  Subset s(f.size());
  for (std::size_t x = 0; x < f.size(); ++x) {
    if (f[x] > v) s.insert(x);
  }
  return s;
}

double shilkret_integral(const Capacity& pi, std::span<const double> f) {
  check_increasing_fn(pi.family().space(), f);
  for (double v : f) {
    if (v < 0.0) fail(ErrorCode::domain_error, "Shilkret integrand must be nonnegative");
  }
  std::vector<double> levels;
  for (double v : distinct_finite(f)) {
    if (v > 0.0) levels.push_back(v);
  }
  double strict = 0.0;
  double closed = 0.0;
  double previous = 0.0;
  for (double v : levels) {
    // On c in [previous, v) the set {f > c} is {f > previous}.
    strict = std::max(strict, v * pi.at(level_set_gt(f, previous)));
    closed = std::max(closed, v * pi.at(level_set_geq(f, v)));
    previous = v;
  }
  if (strict != closed) {
    fail(ErrorCode::internal, "Shilkret branches disagree: " + format_real(strict) + " vs " +
                                  format_real(closed));
  }
  return closed;
}

double maxitive_integral(const Concentration& j, std::span<const double> f) {
  check_increasing_fn(j.space(), f);
  double strict = kNegInf;
  double closed = kNegInf;
  double previous = kNegInf;
  for (double v : distinct_finite(f)) {
    strict = std::max(strict, ext_add(v, j.at(level_set_gt(f, previous))));
    closed = std::max(closed, ext_add(v, j.at(level_set_geq(f, v))));
    previous = v;
  }
  if (strict != closed) {
    fail(ErrorCode::internal, "maxitive integral branches disagree: " + format_real(strict) +
                                  " vs " + format_real(closed));
  }
  return closed;
}

double maxitive_integral_extended(const Concentration& j, std::span<const double> f) {
  check_length(j.space(), f);
  check_bounded_above(f);
  double strict = kNegInf;
  double closed = kNegInf;
  double previous = kNegInf;
  for (double v : distinct_finite(f)) {
    strict = std::max(strict, ext_add(v, extended_concentration(j, level_set_gt(f, previous))));
    closed = std::max(closed, ext_add(v, extended_concentration(j, level_set_geq(f, v))));
    previous = v;
  }
  if (strict != closed) {
    fail(ErrorCode::internal, "extended integral branches disagree: " + format_real(strict) +
                                  " vs " + format_real(closed));
  }
  return closed;
}

std::vector<double> monotone_hull(const UpSetFamily& family, std::span<const double> raw) {
  if (raw.size() != family.size()) fail(ErrorCode::size_mismatch, "one value per up-set expected");
  const auto& space = family.space();
  std::vector<double> hull(raw.begin(), raw.end());
  // Any up-set B strictly inside A misses some x in A, hence lies in A minus down(x).
  for (std::size_t i = 0; i < family.size(); ++i) {
    const Subset& a = family[i];
    for (auto x : a.members()) {
      const Subset below = Subset::from_bits(a.size(), a.bits() & ~space.down_bits(x));
      hull[i] = std::max(hull[i], hull[*family.index_of(below)]);
    }
  }
  return hull;
}

std::vector<double> log_indicator(const Subset& a) {
  std::vector<double> f(a.size(), kNegInf);
  for (auto x : a.members()) f[x] = 0.0;
  return f;
}

IndicatorGauge indicator_gauge(const Concentration& j, const Subset& upset) {
  j.index_of(upset);
  IndicatorGauge g{};
  g.via_indicator = maxitive_integral(j, log_indicator(upset));
  // phi(r 1_{A^c}) decreases with r and is constant once r < J_A.
  const Subset outside = upset.complement();
  double previous = kPosInf;
  double value = kPosInf;
  double r = -1.0;
  bool settled = false;
  for (int k = 0; k < 1100 && std::isfinite(r); ++k, r *= 2.0) {
    std::vector<double> f(upset.size(), 0.0);
    for (auto x : outside.members()) f[x] = r;
    value = maxitive_integral(j, f);
    if (value == previous) {
      settled = true;
      break;
    }
    previous = value;
  }
  g.via_limit = settled ? value : kNegInf;
  return g;
}

double extended_concentration(const Concentration& j, const Subset& s) {
  const auto& fam = j.family();
  if (s.size() != fam.space().size()) {
    fail(ErrorCode::size_mismatch, "subset does not belong to this space");
  }
  double scan = 0.0;
  for (std::size_t i = 0; i < fam.size(); ++i) {
    if (s.is_subset_of(fam[i])) scan = std::min(scan, j.at(i));
  }
  const double closure = j.at(up_closure(fam.space(), s));
  if (scan != closure) {
    fail(ErrorCode::internal, "extended concentration scan " + format_real(scan) +
                                  " differs from closure value " + format_real(closure));
  }
  return closure;
}

}  // namespace maxitive
