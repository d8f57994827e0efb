#include "maxitivity.hpp"

#include <algorithm>

#include "error.hpp"

namespace maxitive {

namespace {

void check_rate(const Concentration& j, std::span<const double> rate) {
  if (rate.size() != j.space().size()) {
    fail(ErrorCode::size_mismatch, "rate function length does not match the space");
  }
  for (double v : rate) {
    if (std::isnan(v) || v < 0.0) fail(ErrorCode::domain_error, "rate values must lie in [0, inf]");
  }
}

double min_over(const Subset& s, std::span<const double> rate) {
  double m = kPosInf;
  for (auto x : s.members()) m = std::min(m, rate[x]);
  return m;
}

std::vector<Subset> minimal_cover(const Concentration& j, const Subset& a) {
  std::vector<Subset> cover;
  for (auto x : a.members()) {
    const Subset up = j.space().principal_up(x);
    bool dominated = false;
    for (auto y : a.members()) {
      const Subset other = j.space().principal_up(y);
      if (up.is_subset_of(other) && !(up == other)) {
        dominated = true;
        break;
      }
    }
    if (!dominated && std::find(cover.begin(), cover.end(), up) == cover.end()) {
      cover.push_back(up);
    }
  }
  return cover;
}

}  // namespace

MaxitivityReport is_weakly_maxitive(const Concentration& j) {
  const auto& fam = j.family();
  MaxitivityReport report;
  for (std::size_t i = 0; i < fam.size(); ++i) {
    const Subset& a = fam[i];
    if (a.empty()) continue;
    double rhs = kNegInf;
    for (auto x : a.members()) rhs = std::max(rhs, j.principal(x));
    if (j.at(i) > rhs) {
      report.verdict = false;
      report.witness = CoverWitness{a, minimal_cover(j, a), j.at(i), rhs};
      return report;
    }
  }
  return report;
}

MaxitivityReport weak_maxitivity_cover_search(const Concentration& j) {
  const auto& fam = j.family();
  MaxitivityReport report;
  for (std::size_t i = 0; i < fam.size(); ++i) {
    const Subset& a = fam[i];
    if (a.empty()) continue;
    Subset covered(a.size());
    std::vector<Subset> cover;
    double rhs = kNegInf;
    for (std::size_t k = 0; k < fam.size(); ++k) {
      if (!(j.at(k) < j.at(i)) || (fam[k] & a).empty()) continue;
      covered = covered | fam[k];
      cover.push_back(fam[k]);
      rhs = std::max(rhs, j.at(k));
    }
    if (a.is_subset_of(covered)) {
      report.verdict = false;
      report.witness = CoverWitness{a, std::move(cover), j.at(i), rhs};
      return report;
    }
  }
  return report;
}

bool is_completely_maxitive(const Concentration& j) {
  const auto& fam = j.family();
  for (std::size_t a = 0; a < fam.size(); ++a) {
    for (std::size_t b = a; b < fam.size(); ++b) {
      if (j.at(fam[a] | fam[b]) != std::max(j.at(a), j.at(b))) return false;
    }
  }
  return true;
}

std::vector<double> minimal_rate(const Concentration& j) {
  std::vector<double> rate(j.space().size());
  for (std::size_t x = 0; x < rate.size(); ++x) rate[x] = 0.0 - j.principal(x);
  return rate;
}

BoundReport check_mldp(const Concentration& j, std::span<const double> rate, double tol) {
  check_rate(j, rate);
  const auto& fam = j.family();
  BoundReport report;
  for (std::size_t i = 0; i < fam.size(); ++i) {
    if (fam[i].empty()) continue;
    const double bound = 0.0 - min_over(fam[i], rate);
    const double lower = signed_gap(j.at(i), bound);
    const double upper = signed_gap(bound, j.at(i));
    if (lower < report.worst_gap_lower) {
      report.worst_gap_lower = lower;
      if (lower < -tol) report.lower_witness = i;
    }
    if (upper < report.worst_gap_upper) {
      report.worst_gap_upper = upper;
      if (upper < -tol) report.upper_witness = i;
    }
  }
  report.lower_ok = !report.lower_witness.has_value();
  report.upper_ok = !report.upper_witness.has_value();
  return report;
}

double sup_minus_rate(std::span<const double> f, std::span<const double> rate) {
  if (f.size() != rate.size()) fail(ErrorCode::size_mismatch, "function and rate lengths differ");
  double m = kNegInf;
  for (std::size_t x = 0; x < f.size(); ++x) m = std::max(m, ext_add(f[x], 0.0 - rate[x]));
  return m;
}

VaradhanGap varadhan_gap(const Concentration& j, std::span<const double> rate,
                         std::span<const double> f) {
  check_rate(j, rate);
  const double phi = maxitive_integral(j, f);
  const double s = sup_minus_rate(f, rate);
  return {signed_gap(phi, s), signed_gap(s, phi)};
}

BoundReport check_mlp(const Concentration& j, std::span<const double> rate,
                      std::span<const std::vector<double>> fns, double tol) {
  BoundReport report;
  for (std::size_t k = 0; k < fns.size(); ++k) {
    const auto gap = varadhan_gap(j, rate, fns[k]);
    if (gap.lower < report.worst_gap_lower) {
      report.worst_gap_lower = gap.lower;
      if (gap.lower < -tol) report.lower_witness = k;
    }
    if (gap.upper < report.worst_gap_upper) {
      report.worst_gap_upper = gap.upper;
      if (gap.upper < -tol) report.upper_witness = k;
    }
  }
  report.lower_ok = !report.lower_witness.has_value();
  report.upper_ok = !report.upper_witness.has_value();
  return report;
}

MinimalityReport rate_minimality_check(const Concentration& j, std::span<const double> rate) {
  const auto bounds = check_mldp(j, rate);
  MinimalityReport report;
  report.lower_bound = bounds.lower_ok;
  report.upper_bound = bounds.upper_ok;
  report.envelope = increasing_envelope(j.space(), rate);
  report.minimal = minimal_rate(j);
  if (report.upper_bound) {
    bool ok = true;
    for (std::size_t x = 0; x < rate.size(); ++x) ok = ok && report.envelope[x] <= report.minimal[x];
    report.upper_direction = ok;
  }
  if (report.lower_bound) {
    bool ok = true;
    for (std::size_t x = 0; x < rate.size(); ++x) ok = ok && report.minimal[x] <= report.envelope[x];
    report.lower_direction = ok;
  }
  return report;
}

TightnessReport tightness_check(const Concentration& j, std::span<const TightnessProbe> probes) {
  TightnessReport report;
  for (std::size_t p = 0; p < probes.size(); ++p) {
    const auto& probe = probes[p];
    if (!(probe.eps > 0.0)) fail(ErrorCode::invalid_argument, "tightness eps must be positive");
    const double lhs = j.at(probe.c);
    const double truncated = j.at(up_closure(j.space(), probe.c & probe.k));
    const double rhs = std::max(ext_add(truncated, probe.eps), -1.0 / probe.eps);
    if (lhs > rhs) {
      report.ok = false;
      report.failing_probe = p;
      report.lhs = lhs;
      report.rhs = rhs;
      return report;
    }
  }
  return report;
}

bool is_tight(const Concentration& j) {
  std::vector<TightnessProbe> probes;
  const Subset whole = Subset::full(j.space().size());
  for (const auto& c : j.family().sets()) {
    for (double eps : {1.0, 0.1, 1e-3, 1e-9}) probes.push_back({c, whole, eps});
  }
  return tightness_check(j, probes).ok;
}

}  // namespace maxitive
