#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "asymptotics.hpp"
#include "error.hpp"
#include "extended_real.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "random.hpp"

using namespace maxitive;
using doctest::Approx;

namespace {

std::vector<std::size_t> schedule(std::size_t lo, std::size_t hi, std::size_t step) {
  std::vector<std::size_t> out;
  for (std::size_t n = lo; n <= hi; n += step) out.push_back(n);
  return out;
}

double bernoulli_log_mgf(double p, double mu) { return std::log(1.0 - p + p * std::exp(mu)); }

/// Two-sided rate of the Bernoulli sample mean.
double kl_or_inf(double x, double p) {
  if (x < 0.0 || x > 1.0) return kPosInf;
  return oracle::kl_bernoulli(x, p);
}

}  // namespace

TEST_CASE("limsup of geometric and alternating sequences") {
  const auto ns = schedule(10, 400, 10);
  const double rho = 0.3;
  std::vector<double> geo, alt;
  for (auto n : ns) {
    geo.push_back(static_cast<double>(n) * std::log(rho));
    alt.push_back(static_cast<double>(n) * std::log(rho) - ((n / 10) % 2 == 1 ? static_cast<double>(n) : 0.0));
  }
  const auto g = limsup_from_trace(ns, geo);
  CHECK(g.value == Approx(std::log(rho)).epsilon(1e-12));
  CHECK(g.tail_monotone);
  CHECK(g.slope == Approx(0.0).scale(1.0).epsilon(1e-9));
  CHECK(g.intercept == Approx(std::log(rho)).epsilon(1e-9));
  const auto a = limsup_from_trace(ns, alt);
  CHECK(a.value == Approx(std::log(rho)).epsilon(1e-12));
  CHECK_FALSE(a.tail_monotone);
  CHECK(a.n_hi == 400);
  CHECK(a.n_lo == ns[ns.size() / 2]);
}

TEST_CASE("limsup input validation") {
  CHECK_THROWS_AS(limsup_from_trace({1, 1}, {0.0, 0.0}), Error);
  CHECK_THROWS_AS(limsup_from_trace({0, 1}, {0.0, 0.0}), Error);
  CHECK_THROWS_AS(limsup_from_trace({1, 2}, {0.0}), Error);
  CHECK_THROWS_AS(limsup_from_trace({1, 2}, {0.0, std::nan("")}), Error);
  CHECK_THROWS_AS(limsup_from_trace({1, 2}, {0.0, kPosInf}), Error);
  const auto z = limsup_from_trace({1, 2, 3, 4}, {-1.0, kNegInf, -3.0, kNegInf});
  CHECK(z.has_zero);
  CHECK(z.value == Approx(-1.0));
}

TEST_CASE("binomial tail rate at three quarters") {
  const auto seq = CapacitySequence::exact_binomial(0.5);
  const auto est = log_rate_estimate(seq, HalfLine{0.75}, schedule(100, 2000, 100), 2);
  CHECK(est.value == Approx(-0.13081).epsilon(0.005 / 0.13081));
  CHECK(std::abs(est.value + oracle::kl_bernoulli(0.75, 0.5)) <= 0.005);
  CHECK(est.value <= -oracle::kl_bernoulli(0.75, 0.5) + 1e-12);
  CHECK(est.tail_monotone);
  const auto open = log_rate_estimate(seq, HalfLine{0.75, false}, schedule(100, 2000, 100));
  CHECK(open.value <= est.value);
  CHECK(std::abs(open.value - est.value) <= 0.005);
}

TEST_CASE("sequence factories") {
  const auto g = CapacitySequence::exact_gaussian(0.0, 1.0);
  CHECK(g.log_mu(100, HalfLine{1.0}) == Approx(oracle::log_normal_tail(10.0)).epsilon(1e-10));
  const auto m = CapacitySequence::exact_model(SampleModel::bernoulli(0.5));
  CHECK(m.log_mu(10, HalfLine{1.0}) == Approx(-10.0 * std::log(2.0)));
  CHECK_THROWS_AS(m.log_mu(10, Subset::parse("01")), Error);
  try {
    CapacitySequence::exact_model(SampleModel::exponential(1.0)).log_mu(5, HalfLine{2.0});
    FAIL("expected missing capability");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::missing_capability);
  }
  const auto mx = CapacitySequence::max_of_measures(
      {SampleModel::bernoulli(0.3), SampleModel::bernoulli(0.6)});
  CHECK(mx.log_mu(50, HalfLine{0.7}) ==
        Approx(oracle::binomial_log_tail(50, 35, 0.6)).epsilon(1e-10));
}

TEST_CASE("Monte Carlo sequence is reproducible and close to the exact tail") {
  const auto model = SampleModel::bernoulli(0.5);
  const auto mc = CapacitySequence::monte_carlo(model, 100000, 17);
  const auto ns = schedule(10, 40, 10);
  const auto one = log_rate_estimate(mc, HalfLine{0.7}, ns, 1);
  const auto four = log_rate_estimate(mc, HalfLine{0.7}, ns, 4);
  CHECK(one.log_mu == four.log_mu);
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const auto k = static_cast<std::size_t>(std::ceil(0.7 * static_cast<double>(ns[i]) - 1e-9));
    CHECK(std::abs(one.log_mu[i] - oracle::binomial_log_tail(ns[i], k, 0.5)) <= 0.1);
  }
}

TEST_CASE("largest term principle") {
  const auto ns = schedule(100, 2000, 100);
  std::vector<double> a, b;
  for (auto n : ns) {
    a.push_back(-static_cast<double>(n));
    b.push_back(-2.0 * static_cast<double>(n));
  }
  const auto r = largest_term_check(ns, {a, b});
  CHECK(r.ok);
  CHECK(r.combined == Approx(-1.0).epsilon(1e-3));
  CHECK(r.largest == -1.0);
  const auto equal = largest_term_check(ns, {a, a, a});
  CHECK(equal.ok);
  CHECK(std::abs(equal.combined + 1.0) <= 1e-3);
  CHECK_THROWS_AS(largest_term_check(ns, {}), Error);
}

TEST_CASE("Choquet integral examples") {
  const auto uniform = [](const Subset& s) { return static_cast<double>(s.count()) / 4.0; };
  CHECK(choquet_integral(uniform, std::vector<double>{1.0, 2.0, 3.0, 4.0}) == Approx(2.5));
  const auto any = [](const Subset& s) { return s.empty() ? 0.0 : 1.0; };
  CHECK(choquet_integral(any, std::vector<double>{1.0, 3.0}) == Approx(3.0));
  CHECK(choquet_integral(any, std::vector<double>{0.0, 0.0}) == 0.0);
  CHECK_THROWS_AS(choquet_integral(any, std::vector<double>{-1.0, 2.0}), Error);
  CHECK_THROWS_AS(choquet_integral(any, std::vector<double>{kPosInf, 2.0}), Error);
}

TEST_CASE("Choquet integral matches the Riemann oracle for max-of-measure capacities") {
  Rng rng(61);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<std::vector<double>> ms(2, std::vector<double>(4));
    for (auto& m : ms) {
      double t = 0.0;
      for (auto& v : m) t += (v = rng.uniform());
      for (auto& v : m) v /= t;
    }
    const auto mu_lib = [&](const Subset& s) {
      double best = 0.0;
      for (const auto& m : ms) {
        double p = 0.0;
        for (std::size_t x = 0; x < 4; ++x)
          if (s.contains(x)) p += m[x];
        best = std::max(best, p);
      }
      return best;
    };
    const auto mu_oracle = [&](const oracle::Set& s) {
      double best = 0.0;
      for (const auto& m : ms) {
        double p = 0.0;
        for (std::size_t x = 0; x < 4; ++x)
          if (s[x]) p += m[x];
        best = std::max(best, p);
      }
      return best;
    };
    std::vector<double> g(4);
    for (auto& v : g) v = 3.0 * rng.uniform();
    CHECK(choquet_integral(mu_lib, g) == Approx(oracle::choquet_riemann(mu_oracle, g, 200000)).epsilon(1e-4));
  }
}

TEST_CASE("linear f: entropic trace equals the largest log-MGF at every n") {
  const MaxOfMeasures seq({SampleModel::bernoulli(0.3), SampleModel::bernoulli(0.6)});
  const double limit = std::max(bernoulli_log_mgf(0.3, 1.0), bernoulli_log_mgf(0.6, 1.0));
  CHECK(limit == Approx(std::log(0.4 + 0.6 * std::exp(1.0))));
  CHECK(limit == Approx(0.708513).epsilon(1e-6));
  for (std::size_t n : {1u, 7u, 100u, 2000u}) {
    const double t = seq.log_expectation(n, [](double x) { return x; }) / static_cast<double>(n);
    CHECK(t == Approx(limit).epsilon(1e-9));
  }
}

TEST_CASE("entropic and Choquet limits agree") {
  const MaxOfMeasures seq({SampleModel::bernoulli(0.3), SampleModel::bernoulli(0.6)});
  const auto r = entropic_vs_choquet(seq, [](double x) { return x; }, schedule(100, 2000, 100), 2);
  CHECK(r.difference <= 0.01);
  CHECK(r.entropic.value == Approx(0.708513).epsilon(1e-6));
  CHECK(std::abs(r.choquet.value - 0.708513) <= 0.01);

  const MaxOfMeasures single({SampleModel::bernoulli(0.4)});
  for (std::size_t n : {1u, 10u, 300u}) {
    const auto f = [](double x) { return x * x - 0.5 * x; };
    CHECK(single.log_choquet(n, f) == Approx(single.log_expectation(n, f)).epsilon(1e-9));
  }
  const auto c = entropic_vs_choquet(seq, [](double) { return 0.25; }, schedule(10, 100, 10));
  for (double t : c.entropic.trace) CHECK(t == Approx(0.25).epsilon(1e-12));
  for (double t : c.choquet.trace) CHECK(t == Approx(0.25).epsilon(1e-12));
}

TEST_CASE("restricted entropic bound") {
  const MaxOfMeasures seq({SampleModel::bernoulli(0.3), SampleModel::bernoulli(0.6)});
  const auto rate = [](double x) { return std::min(kl_or_inf(x, 0.3), kl_or_inf(x, 0.6)); };
  std::vector<double> grid;
  for (int i = 0; i <= 500; ++i) grid.push_back(0.5 + 0.5 * i / 500.0);
  const auto f = [](double x) { return x; };
  const auto r = restricted_entropic_bound(seq, f, 0.5, 1.0, rate, grid, schedule(100, 2000, 100));
  CHECK(r.ok);
  CHECK(r.estimate.value <= r.bound + 1e-2);
  // Tilted mean of the p = 0.6 law lies in K, so the bound is attained.
  CHECK(r.bound == Approx(bernoulli_log_mgf(0.6, 1.0)).epsilon(1e-4));
  CHECK(std::abs(r.estimate.value - r.bound) <= 0.01);
}

TEST_CASE("tilted max of measures is maxitive in the limit") {
  Rng rng(67);
  const std::size_t size = 5;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::vector<double>> rates(2, std::vector<double>(size));
    for (auto& r : rates)
      for (auto& v : r) v = 2.0 * rng.uniform();
    const auto seq = CapacitySequence::tilted_max_of_measures(size, rates);
    const auto limit = [&](const Subset& s) {
      double best = kNegInf;
      for (const auto& r : rates) {
        double lo = kPosInf, all = kPosInf;
        for (std::size_t x = 0; x < size; ++x) {
          all = std::min(all, r[x]);
          if (s.contains(x)) lo = std::min(lo, r[x]);
        }
        best = std::max(best, lo == kPosInf ? kNegInf : all - lo);
      }
      return best;
    };
    const auto a = Subset::from_bits(size, 1 + rng.below(31));
    const auto b = Subset::from_bits(size, 1 + rng.below(31));
    const auto ns = schedule(200, 2000, 200);
    const double ja = log_rate_estimate(seq, a, ns).value;
    const double jb = log_rate_estimate(seq, b, ns).value;
    const double jab = log_rate_estimate(seq, a | b, ns).value;
    CHECK(std::abs(ja - limit(a)) <= 1e-2);
    CHECK(std::abs(jab - std::max(ja, jb)) <= 1e-2);
  }
}
