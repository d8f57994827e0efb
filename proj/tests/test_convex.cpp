#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "convex.hpp"
#include "error.hpp"
#include "extended_real.hpp"
#include "oracles.hpp"
#include "random.hpp"

using namespace maxitive;
using doctest::Approx;

namespace {

Grid1D sample(double lo, double hi, std::size_t points, double (*fn)(double)) {
  auto x = linear_grid(lo, hi, points);
  std::vector<double> v(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) v[i] = fn(x[i]);
  return Grid1D(std::move(x), std::move(v));
}

double half_square(double x) { return 0.5 * x * x; }
double positive_part(double x) { return std::max(x, 0.0); }
double double_well(double x) { return (x * x - 1.0) * (x * x - 1.0); }

}  // namespace

TEST_CASE("conjugate examples") {
  const auto g = sample(-5.0, 5.0, 2001, half_square);
  const std::vector<double> mu = {0.0, 1.0, 2.0};
  const auto c = fenchel_conjugate(g, mu);
  CHECK(c.values[0] == Approx(0.0).scale(1.0));
  CHECK(c.values[1] == Approx(0.5).epsilon(0.01));
  CHECK(c.values[2] == Approx(2.0).epsilon(0.01));
  CHECK(g.knots[c.argmax[1]] == Approx(1.0));

  const Grid1D flat(linear_grid(0.0, 1.0, 11), std::vector<double>(11, 0.0));
  const std::vector<double> two = {2.0};
  CHECK(fenchel_conjugate_nonneg(flat, two).values[0] == 2.0);
  CHECK(fenchel_conjugate_nonneg(flat, two).boundary_fraction == 1.0);
  const std::vector<double> negative = {-1.0};
  CHECK_THROWS_AS(fenchel_conjugate_nonneg(flat, negative), Error);

  const Grid1D never({0.0, 1.0}, {kPosInf, kPosInf});
  const auto none = fenchel_conjugate(never, two);
  CHECK(none.values[0] == kNegInf);
  CHECK(none.argmax[0] == kNoIndex);
  const Grid1D minus({0.0, 1.0}, {kNegInf, 0.0});
  CHECK(fenchel_conjugate(minus, two).values[0] == kPosInf);
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(Grid1D({0.0, 0.0}, {1.0, 1.0}), Error);
  CHECK_THROWS_AS(Grid1D({0.0, 1.0}, {1.0}), Error);
  CHECK_THROWS_AS(Grid1D({0.0, 1.0}, {1.0, std::nan("")}), Error);
  CHECK_THROWS_AS(Grid1D({}, {}), Error);
  const auto d = dual_grid(3.0, 5);
  CHECK(d.front() == 0.0);
  CHECK(d.back() == Approx(3.0));
  CHECK(d[1] == Approx(3e-4));
}

TEST_CASE("biconjugate of a convex increasing function is itself") {
  const auto g = sample(-2.0, 2.0, 401, positive_part);
  const auto mu = linear_grid(0.0, 1.0, 101);
  const auto bi = biconjugate(g, mu);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(bi.values[i] == Approx(g.values[i]).scale(1.0).epsilon(1e-12));
}

TEST_CASE("dual-cone biconjugate of the double well is its convex increasing minorant") {
  const auto g = sample(-2.0, 2.0, 401, double_well);
  const auto mu = linear_grid(0.0, 30.0, 3001);
  const auto bi = biconjugate(g, mu);
  const auto expect = oracle::convex_increasing_minorant(g.knots, g.values);
  const double step = g.knots[1] - g.knots[0];
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(bi.values[i] <= g.values[i] + 1e-12);
    // Dual spacing 0.01 times |x| <= 2, plus the primal step.
    CHECK(std::abs(bi.values[i] - expect[i]) <= 2.0 * 0.01 + 2.0 * step);
  }
  CHECK(is_convex_on_grid(bi.knots, bi.values, 1e-6));
  CHECK_FALSE(is_convex_on_grid(g.knots, g.values));
}

TEST_CASE("Young inequality and order reversal on random grids") {
  Rng rng(59);
  const auto x = linear_grid(-1.0, 3.0, 81);
  const auto mu = dual_grid(5.0, 60);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> a(x.size()), b(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      a[i] = 4.0 * rng.uniform();
      b[i] = a[i] + rng.uniform();
    }
    const Grid1D ga(x, a), gb(x, b);
    const auto ca = fenchel_conjugate(ga, mu);
    const auto cb = fenchel_conjugate(gb, mu);
    for (std::size_t k = 0; k < mu.size(); ++k) {
      CHECK(ca.values[k] >= cb.values[k]);
      for (std::size_t i = 0; i < x.size(); ++i) CHECK(a[i] + ca.values[k] >= mu[k] * x[i] - 1e-12);
    }
    const auto bi = biconjugate(ga, mu);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(bi.values[i] <= a[i] + 1e-12);
  }
}

TEST_CASE("threads do not change the conjugate") {
  const auto g = sample(-5.0, 5.0, 501, double_well);
  const auto mu = linear_grid(-3.0, 3.0, 97);
  const auto one = fenchel_conjugate(g, mu, 1);
  const auto four = fenchel_conjugate(g, mu, 4);
  CHECK(one.values == four.values);
  CHECK(one.argmax == four.argmax);
}

TEST_CASE("midpoint condition") {
  const auto knots = linear_grid(0.0, 2.0, 21);
  std::vector<double> concave(knots.size());
  for (std::size_t i = 0; i < knots.size(); ++i) concave[i] = -0.5 * knots[i] * knots[i];
  const auto good = midpoint_condition_check(knots, concave);
  CHECK(good.ok);
  CHECK(good.rate_convex);
  CHECK(good.pairs_checked > 0);
  CHECK(good.worst_gap >= 0.0);

  const std::vector<double> k3 = {0.0, 1.0, 2.0};
  const std::vector<double> bad = {0.0, -2.0, -2.5};
  const auto r = midpoint_condition_check(k3, bad);
  CHECK_FALSE(r.ok);
  REQUIRE(r.witness);
  CHECK(r.witness->first == 0);
  CHECK(r.witness->second == 2);
  CHECK(r.worst_gap == Approx(-0.75));
}

TEST_CASE("box midpoint condition on a product of concave coordinates") {
  const std::vector<std::vector<double>> axes = {linear_grid(0.0, 1.0, 5), linear_grid(0.0, 1.0, 5)};
  std::vector<double> values;
  for (double a : axes[0])
    for (double b : axes[1]) values.push_back(-(a * a + b * b));
  CHECK(midpoint_condition_check_box(axes, values).ok);
  // Separable with a nonconvex coordinate rate 0, 2, 2.5.
  const std::vector<std::vector<double>> coarse = {{0.0, 1.0, 2.0}, {0.0, 1.0, 2.0}};
  const std::vector<double> rate = {0.0, 2.0, 2.5};
  std::vector<double> bad;
  for (double ra : rate)
    for (double rb : rate) bad.push_back(-(ra + rb));
  const auto r = midpoint_condition_check_box(coarse, bad);
  CHECK_FALSE(r.ok);
  CHECK(r.worst_gap == Approx(-1.5));
  values[0] = -0.1;  // below its neighbour along the second axis
  CHECK_THROWS_AS(midpoint_condition_check_box(axes, values), Error);
}
