#include "convex.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"
#include "extended_real.hpp"
#include "parallel.hpp"

namespace maxitive {

namespace {

std::optional<std::size_t> find_knot(std::span<const double> knots, double v) {
  const auto it = std::lower_bound(knots.begin(), knots.end(), v);
  const double slack = 1e-9 * std::max(1.0, std::abs(v));
  std::optional<std::size_t> best;
  for (auto cand : {it, it == knots.begin() ? it : it - 1}) {
    if (cand == knots.end()) continue;
    if (std::abs(*cand - v) <= slack) best = static_cast<std::size_t>(cand - knots.begin());
  }
  return best;
}

double half_sum(double a, double b) { return ext_add(0.5 * a, 0.5 * b); }

}  // namespace

Grid1D::Grid1D(std::vector<double> k, std::vector<double> v)
    : knots(std::move(k)), values(std::move(v)) {
  if (knots.size() != values.size()) fail(ErrorCode::size_mismatch, "knots and values differ");
  if (knots.empty()) fail(ErrorCode::invalid_argument, "grid is empty");
  for (std::size_t i = 0; i < knots.size(); ++i) {
    if (!is_finite(knots[i])) fail(ErrorCode::invalid_argument, "knots must be finite");
    if (i > 0 && !(knots[i - 1] < knots[i])) {
      fail(ErrorCode::invalid_argument, "knots must be strictly increasing");
    }
    if (std::isnan(values[i])) fail(ErrorCode::domain_error, "grid value is NaN");
  }
}

ConjugateResult fenchel_conjugate(const Grid1D& rate, std::span<const double> mu,
                                  std::size_t threads) {
  ConjugateResult out;
  out.mu.assign(mu.begin(), mu.end());
  out.values.assign(mu.size(), kNegInf);
  out.argmax.assign(mu.size(), kNoIndex);
  for (double m : mu) {
    if (!is_finite(m)) fail(ErrorCode::invalid_argument, "dual points must be finite");
  }
  parallel_for(mu.size(), threads, [&](std::size_t i) {
    double best = kNegInf;
    std::size_t arg = kNoIndex;
    for (std::size_t x = 0; x < rate.size(); ++x) {
      if (rate.values[x] == kPosInf) continue;
      const double v = rate.values[x] == kNegInf ? kPosInf : mu[i] * rate.knots[x] - rate.values[x];
      if (v > best) {
        best = v;
        arg = x;
      }
    }
    out.values[i] = best;
    out.argmax[i] = arg;
  });
  std::size_t positive = 0;
  std::size_t saturated = 0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (mu[i] <= 0.0) continue;
    ++positive;
    if (out.argmax[i] == rate.size() - 1) ++saturated;
  }
  out.boundary_fraction =
      positive == 0 ? 0.0 : static_cast<double>(saturated) / static_cast<double>(positive);
  return out;
}

ConjugateResult fenchel_conjugate_nonneg(const Grid1D& rate, std::span<const double> mu,
                                         std::size_t threads) {
  for (double m : mu) {
    if (!(m >= 0.0)) fail(ErrorCode::invalid_argument, "dual points must be nonnegative");
  }
  return fenchel_conjugate(rate, mu, threads);
}

Grid1D biconjugate(const Grid1D& rate, std::span<const double> mu, std::size_t threads) {
  const auto star = fenchel_conjugate(rate, mu, threads);
  std::vector<double> values(rate.size(), kNegInf);
  parallel_for(rate.size(), threads, [&](std::size_t x) {
    double best = kNegInf;
    for (std::size_t i = 0; i < mu.size(); ++i) {
      if (star.values[i] == kPosInf) continue;
      const double v = star.values[i] == kNegInf ? kPosInf : mu[i] * rate.knots[x] - star.values[i];
      best = std::max(best, v);
    }
    values[x] = best;
  });
  return Grid1D(rate.knots, std::move(values));
}

std::vector<double> dual_grid(double mu_max, std::size_t points) {
  if (!(mu_max > 0.0) || !is_finite(mu_max)) {
    fail(ErrorCode::invalid_argument, "mu_max must be positive and finite");
  }
  if (points < 2) fail(ErrorCode::invalid_argument, "dual grid needs at least 2 points");
  std::vector<double> out{0.0};
  const double lo = mu_max * 1e-4;
  const std::size_t m = points - 1;
  for (std::size_t i = 0; i < m; ++i) {
    const double t = m == 1 ? 1.0 : static_cast<double>(i) / static_cast<double>(m - 1);
    out.push_back(i + 1 == m ? mu_max : lo * std::pow(mu_max / lo, t));
  }
  return out;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t points) {
  if (points < 2 || !(lo < hi)) fail(ErrorCode::invalid_argument, "linear grid needs lo < hi");
  std::vector<double> out(points);
  const double step = (hi - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) out[i] = lo + static_cast<double>(i) * step;
  out.back() = hi;
  return out;
}

bool is_convex_on_grid(std::span<const double> knots, std::span<const double> values,
                       double tol) {
  if (knots.size() != values.size()) fail(ErrorCode::size_mismatch, "knots and values differ");
  std::size_t first = values.size();
  std::size_t last = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] == kNegInf) return false;
    if (values[i] != kPosInf) {
      first = std::min(first, i);
      last = i;
    }
  }
  if (first == values.size()) return true;
  for (std::size_t i = first; i <= last; ++i) {
    if (values[i] == kPosInf) return false;
  }
  for (std::size_t i = first + 1; i < last; ++i) {
    const double left = (values[i] - values[i - 1]) / (knots[i] - knots[i - 1]);
    const double right = (values[i + 1] - values[i]) / (knots[i + 1] - knots[i]);
    if (right < left - tol) return false;
  }
  return true;
}

MidpointReport midpoint_condition_check(std::span<const double> knots,
                                        std::span<const double> j_halfline, double tol) {
  if (knots.size() != j_halfline.size()) fail(ErrorCode::size_mismatch, "knots and values differ");
  for (std::size_t i = 0; i < knots.size(); ++i) {
    if (std::isnan(j_halfline[i]) || j_halfline[i] > 0.0) {
      fail(ErrorCode::domain_error, "half-line values must lie in [-inf, 0]");
    }
    if (i > 0 && !(knots[i - 1] < knots[i])) {
      fail(ErrorCode::invalid_argument, "knots must be strictly increasing");
    }
    if (i > 0 && j_halfline[i] > j_halfline[i - 1]) {
      fail(ErrorCode::invalid_argument, "half-line values must be nonincreasing");
    }
  }
  MidpointReport report;
  for (std::size_t i = 0; i < knots.size(); ++i) {
    for (std::size_t k = i + 1; k < knots.size(); ++k) {
      const auto m = find_knot(knots, 0.5 * (knots[i] + knots[k]));
      if (!m) continue;
      ++report.pairs_checked;
      const double gap = signed_gap(j_halfline[*m], half_sum(j_halfline[i], j_halfline[k]));
      if (gap < report.worst_gap) {
        report.worst_gap = gap;
        if (gap < -tol) report.witness = std::make_pair(i, k);
      }
    }
  }
  report.ok = !report.witness.has_value();
  if (knots.size() >= 2) {
    std::vector<double> rate(j_halfline.begin(), j_halfline.end() - 1);
    for (auto& v : rate) v = 0.0 - v;
    report.rate_convex = is_convex_on_grid(knots.subspan(1), rate, 1e-9);
  }
  return report;
}

MidpointReport midpoint_condition_check_box(const std::vector<std::vector<double>>& axes,
                                            std::span<const double> values, double tol) {
  const std::size_t d = axes.size();
  if (d == 0 || d > 3) fail(ErrorCode::invalid_argument, "box check supports 1 to 3 axes");
  std::size_t total = 1;
  for (const auto& axis : axes) {
    if (axis.empty()) fail(ErrorCode::invalid_argument, "empty axis");
    for (std::size_t i = 1; i < axis.size(); ++i) {
      if (!(axis[i - 1] < axis[i])) fail(ErrorCode::invalid_argument, "axis not increasing");
    }
    total *= axis.size();
  }
  if (values.size() != total) fail(ErrorCode::size_mismatch, "value count does not match grid");
  auto unflatten = [&](std::size_t flat) {
    std::vector<std::size_t> idx(d);
    for (std::size_t a = d; a-- > 0;) {
      idx[a] = flat % axes[a].size();
      flat /= axes[a].size();
    }
    return idx;
  };
  auto flatten = [&](const std::vector<std::size_t>& idx) {
    std::size_t flat = 0;
    for (std::size_t a = 0; a < d; ++a) flat = flat * axes[a].size() + idx[a];
    return flat;
  };
  for (std::size_t p = 0; p < total; ++p) {
    const auto idx = unflatten(p);
    for (std::size_t a = 0; a < d; ++a) {
      if (idx[a] + 1 < axes[a].size()) {
        auto next = idx;
        ++next[a];
        if (values[flatten(next)] > values[p]) {
          fail(ErrorCode::invalid_argument, "orthant values must be nonincreasing");
        }
      }
    }
  }
  MidpointReport report;
  for (std::size_t p = 0; p < total; ++p) {
    const auto ip = unflatten(p);
    for (std::size_t q = p + 1; q < total; ++q) {
      const auto iq = unflatten(q);
      std::vector<std::size_t> mid(d);
      bool on_grid = true;
      for (std::size_t a = 0; a < d && on_grid; ++a) {
        const auto m = find_knot(axes[a], 0.5 * (axes[a][ip[a]] + axes[a][iq[a]]));
        on_grid = m.has_value();
        if (m) mid[a] = *m;
      }
      if (!on_grid) continue;
      ++report.pairs_checked;
      const double gap = signed_gap(values[flatten(mid)], half_sum(values[p], values[q]));
      if (gap < report.worst_gap) {
        report.worst_gap = gap;
        if (gap < -tol) report.witness = std::make_pair(p, q);
      }
    }
  }
  report.ok = !report.witness.has_value();
  return report;
}

}  // namespace maxitive
