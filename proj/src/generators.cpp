#include "generators.hpp"

#include <algorithm>

namespace maxitive {

namespace {

double coarse_value(Rng& rng, double lo, double hi) {
  // Half-integer grid half the time, to force ties.
  const double v = rng.uniform(lo, hi);
  return rng.bernoulli(0.5) ? std::round(2.0 * v) / 2.0 : v;
}

}  // namespace

FinitePreorder random_preorder(Rng& rng, std::size_t size) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  const double density = rng.uniform(0.0, 0.6);
  for (std::size_t x = 0; x < size; ++x) {
    for (std::size_t y = x + 1; y < size; ++y) {
      if (rng.bernoulli(density)) edges.emplace_back(x, y);
    }
  }
  if (size >= 2 && rng.bernoulli(0.15)) {
    const auto x = static_cast<std::size_t>(rng.below(size));
    const auto y = static_cast<std::size_t>(rng.below(size));
    edges.emplace_back(std::max(x, y), std::min(x, y));
  }
  // Random relabelling so that the order is not aligned with indices.
  std::vector<std::size_t> perm(size);
  for (std::size_t i = 0; i < size; ++i) perm[i] = i;
  for (std::size_t i = size; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
  for (auto& [x, y] : edges) {
    x = perm[x];
    y = perm[y];
  }
  return FinitePreorder::from_edges(size, edges);
}

std::vector<double> random_increasing_fn(Rng& rng, const UpSetFamily& family) {
  const auto& space = family.space();
  const std::size_t n = space.size();
  const auto kind = rng.below(4);
  if (kind == 0) {
    std::vector<double> f(n);
    for (auto& v : f) v = rng.bernoulli(0.1) ? kNegInf : coarse_value(rng, -5.0, 5.0);
    return increasing_envelope(space, f);
  }
  if (kind == 1) {
    return log_indicator(family[rng.below(family.size())]);
  }
  // Staircase: max over a few levels c_i on up-sets A_i, floor elsewhere.
  const double floor = rng.bernoulli(0.3) ? kNegInf : coarse_value(rng, -5.0, 0.0);
  std::vector<double> f(n, floor);
  const auto steps = 1 + rng.below(4);
  for (std::size_t s = 0; s < steps; ++s) {
    const Subset& a = family[rng.below(family.size())];
    const double c = coarse_value(rng, -5.0, 5.0);
    for (auto x : a.members()) f[x] = std::max(f[x], c);
  }
  if (kind == 3) {
    for (auto& v : f) {
      if (is_finite(v)) v += coarse_value(rng, -1.0, 1.0);
    }
    f = increasing_envelope(space, f);
  }
  return f;
}

std::vector<double> random_bounded_increasing_fn(Rng& rng, const FinitePreorder& space, double lo,
                                                 double hi) {
  std::vector<double> f(space.size());
  const double margin = (hi - lo) * 1e-3;
  for (auto& v : f) {
    v = rng.bernoulli(0.3) ? std::round(rng.uniform(lo + margin, hi - margin))
                           : rng.uniform(lo + margin, hi - margin);
    v = std::clamp(v, lo + margin, hi - margin);
  }
  return increasing_envelope(space, f);
}

std::vector<double> random_rate(Rng& rng, std::size_t size) {
  std::vector<double> rate(size);
  for (auto& v : rate) {
    const auto kind = rng.below(6);
    v = kind == 0 ? 0.0 : kind == 1 ? kPosInf : coarse_value(rng, 0.0, 5.0);
  }
  rate[rng.below(size)] = 0.0;
  return rate;
}

Concentration random_maxitive_concentration(Rng& rng, const FamilyPtr& family) {
  return Concentration::from_rate(family, random_rate(rng, family->space().size()));
}

Concentration random_monotone_concentration(Rng& rng, const FamilyPtr& family) {
  std::vector<double> raw(family->size());
  for (auto& v : raw) v = rng.bernoulli(0.15) ? kNegInf : coarse_value(rng, -5.0, 0.0);
  raw[family->empty_index()] = kNegInf;
  raw[family->full_index()] = 0.0;
  auto hull = monotone_hull(*family, raw);
  hull[family->empty_index()] = kNegInf;
  return Concentration(family, std::move(hull));
}

Concentration random_concentration(Rng& rng, const FamilyPtr& family) {
  return rng.bernoulli(0.5) ? random_maxitive_concentration(rng, family)
                            : random_monotone_concentration(rng, family);
}

}  // namespace maxitive
