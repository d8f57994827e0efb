#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cramer.hpp"
#include "error.hpp"
#include "extended_real.hpp"
#include "oracles.hpp"

using namespace maxitive;
using doctest::Approx;

TEST_CASE("model parsing and printing") {
  CHECK(SampleModel::parse("bernoulli:0.3").to_string() == "bernoulli:0.3");
  CHECK(SampleModel::parse("gaussian:0,1").family() == ModelFamily::gaussian);
  CHECK(SampleModel::parse("exponential:2").mean() == 0.5);
  const auto f = SampleModel::parse("finite:2@0.25,-1@0.75");
  CHECK(f.points() == std::vector<double>{-1.0, 2.0});
  CHECK(f.mean() == Approx(-0.25));
  CHECK(SampleModel::parse(f.to_string()).points() == f.points());
  for (const char* bad : {"", "bernoulli", "bernoulli:1.5", "gaussian:0,-1", "poisson:1",
                          "finite:1@0.5", "finite:1@x", "exponential:0"}) {
    CHECK_THROWS_AS(SampleModel::parse(bad), Error);
  }
}

TEST_CASE("log-MGF values") {
  const auto b = SampleModel::bernoulli(0.5);
  CHECK(b.log_mgf(1.0) == Approx(0.620114).epsilon(1e-6));
  CHECK(b.log_mgf(0.0) == 0.0);
  const auto g = SampleModel::gaussian(1.0, 4.0);
  CHECK(g.log_mgf(0.5) == Approx(0.5 + 0.5 * 4.0 * 0.25));
  const auto e = SampleModel::exponential(1.0);
  CHECK(e.log_mgf(1.0) == kPosInf);
  CHECK(e.log_mgf(0.5) == Approx(std::log(2.0)));
  CHECK(e.mgf_domain_end() == 1.0);
}

TEST_CASE("monotone rate examples") {
  const auto b = SampleModel::bernoulli(0.5);
  CHECK(monotone_cramer_rate(b, 0.75) == Approx(0.130812).epsilon(1e-6));
  CHECK(monotone_cramer_rate(b, 0.75) == Approx(oracle::kl_bernoulli(0.75, 0.5)).epsilon(1e-9));
  CHECK(monotone_cramer_rate(b, 0.3) == 0.0);
  CHECK(monotone_cramer_rate(b, 0.5) == 0.0);
  CHECK(monotone_cramer_rate(b, 1.0) == Approx(std::log(2.0)));
  CHECK(monotone_cramer_rate(b, 1.01) == kPosInf);
  const auto g = SampleModel::gaussian(0.0, 1.0);
  CHECK(monotone_cramer_rate(g, 1.0) == Approx(0.5).epsilon(1e-9));
  CHECK(monotone_cramer_rate(g, -3.0) == 0.0);
  const auto e = SampleModel::exponential(1.0);
  CHECK(monotone_cramer_rate(e, 3.0) == Approx(3.0 - 1.0 - std::log(3.0)).epsilon(1e-9));
}

TEST_CASE("rate agrees with closed forms and the golden-section solver") {
  for (double p : {0.1, 0.3, 0.5, 0.9}) {
    const auto b = SampleModel::bernoulli(p);
    for (double a = 0.0; a <= 1.0; a += 0.05) {
      const double r = monotone_cramer_rate(b, a);
      const double kl = a <= p ? 0.0 : oracle::kl_bernoulli(a, p);
      CHECK(r == Approx(kl).epsilon(1e-6).scale(1.0));
      CHECK(monotone_cramer_rate_golden(b, a) == Approx(r).epsilon(1e-6).scale(1.0));
      const auto cf = closed_form_rate(b, a);
      REQUIRE(cf);
      CHECK(*cf == Approx(kl).epsilon(1e-9).scale(1.0));
    }
  }
  const auto f = SampleModel::parse("finite:0@0.5,1@0.3,3@0.2");
  double prev = 0.0;
  for (double a = -1.0; a < 3.0; a += 0.1) {
    const double r = monotone_cramer_rate(f, a);
    CHECK(r >= prev - 1e-12);
    CHECK(monotone_cramer_rate_golden(f, a) == Approx(r).epsilon(1e-6).scale(1.0));
    prev = r;
  }
}

TEST_CASE("exact tails against direct oracles") {
  const auto b = SampleModel::bernoulli(0.5);
  CHECK(exact_tail_log(b, 1.0, 10) == Approx(-10.0 * std::log(2.0)).epsilon(1e-12));
  CHECK(exact_tail_log(b, 0.0, 10) == 0.0);
  CHECK(exact_tail_log(b, 1.0, 10, true) == kNegInf);
  for (std::size_t n : {7u, 50u, 333u, 2000u}) {
    for (double a : {0.55, 0.75, 0.9}) {
      const auto k = static_cast<std::size_t>(std::ceil(a * static_cast<double>(n) - 1e-9));
      CHECK(exact_tail_log(b, a, n) == Approx(oracle::binomial_log_tail(n, k, 0.5)).epsilon(1e-10));
    }
  }
  const auto b3 = SampleModel::bernoulli(0.3);
  CHECK(exact_tail_log(b3, 0.5, 100) == Approx(oracle::binomial_log_tail(100, 50, 0.3)).epsilon(1e-10));

  const auto g = SampleModel::gaussian(0.0, 1.0);
  CHECK(exact_tail_log(g, 1.0, 100) == Approx(-53.23).epsilon(1e-3));
  for (std::size_t n : {1u, 10u, 100u, 3000u}) {
    for (double a : {0.1, 0.5, 1.0}) {
      const double z = a * std::sqrt(static_cast<double>(n));
      CHECK(exact_tail_log(g, a, n) == Approx(oracle::log_normal_tail(z)).epsilon(1e-8));
    }
  }
  CHECK_THROWS_AS(exact_tail_log(SampleModel::exponential(1.0), 2.0, 10), Error);
}

TEST_CASE("finite-support tails by convolution match the binomial oracle") {
  // {0, 1} with P(1) = 0.3 is a Bernoulli law in finite-support form.
  const auto f = SampleModel::parse("finite:0@0.7,1@0.3");
  for (std::size_t n : {5u, 64u, 500u}) {
    const auto k = static_cast<std::size_t>(std::ceil(0.6 * static_cast<double>(n) - 1e-9));
    CHECK(exact_tail_log(f, 0.6, n) == Approx(oracle::binomial_log_tail(n, k, 0.3)).epsilon(1e-9));
  }
  // {-1, 2}: S_n >= n a counts 2s; lattice with step 3.
  const auto g = SampleModel::parse("finite:-1@0.6,2@0.4");
  const std::size_t n = 40;
  const double a = 0.5;  // 3 k - n >= n a  <=>  k >= n (1 + a) / 3 = 20
  CHECK(exact_tail_log(g, a, n) == Approx(oracle::binomial_log_tail(n, 20, 0.4)).epsilon(1e-9));
  CHECK(finite_support_tail_limit(g) == 4096);
  const auto irr = SampleModel::parse("finite:0@0.5,1@0.25,1.4142135623730951@0.25");
  CHECK(finite_support_tail_limit(irr) == 64);
  CHECK_THROWS_AS(exact_tail_log(irr, 0.5, 65), Error);
  CHECK_NOTHROW(exact_tail_log(irr, 0.5, 64));
}

TEST_CASE("sample mean atoms form a probability law") {
  const auto f = SampleModel::parse("finite:0@0.5,1@0.25,1.4142135623730951@0.25");
  const auto atoms = sample_mean_atoms(f, 6);
  double total = 0.0;
  for (std::size_t i = 0; i < atoms.values.size(); ++i) {
    total += std::exp(atoms.log_probs[i]);
    if (i > 0) CHECK(atoms.values[i - 1] < atoms.values[i]);
  }
  CHECK(total == Approx(1.0).epsilon(1e-12));
  const auto b = sample_mean_atoms(SampleModel::bernoulli(0.5), 4);
  CHECK(b.values.size() == 5);
  CHECK(b.log_probs[2] == Approx(std::log(6.0 / 16.0)));
}

TEST_CASE("supermultiplicativity of exact tails") {
  std::vector<std::size_t> ns;
  for (std::size_t n = 1; n <= 2048; n *= 2) ns.push_back(n);
  const std::vector<double> as = {0.55, 0.6, 0.75, 0.9, 1.0};
  const auto r = supermultiplicativity_check(SampleModel::bernoulli(0.5), as, ns);
  CHECK(r.ok);
  CHECK(r.pairs > 0);
  CHECK(r.worst_gap >= -1e-12);
  const auto g = supermultiplicativity_check(SampleModel::gaussian(0.0, 1.0), 0.5, ns);
  CHECK(g.ok);
}

TEST_CASE("exact traces converge to minus the rate") {
  std::vector<std::size_t> ns = {125, 250, 500, 1000, 2000};
  std::vector<double> as;
  for (double a = 0.5; a <= 0.951; a += 0.05) as.push_back(a);
  const auto r = verify_monotone_cramer(SampleModel::bernoulli(0.5), as, ns, 2);
  CHECK(r.ok());
  CHECK(r.worst_error <= 0.005);
  CHECK(r.worst_ref_error <= 1e-6);
  const auto g = verify_monotone_cramer(SampleModel::gaussian(0.0, 1.0), {0.25, 0.5, 1.0},
                                        {375, 750, 1500, 3000});
  CHECK(g.ok());
  CHECK(g.worst_error <= 0.005);
  CHECK_THROWS_AS(verify_monotone_cramer(SampleModel::bernoulli(0.5), {0.7, 0.6}, ns), Error);
}

TEST_CASE("Monte Carlo estimate brackets the exact tail") {
  const auto b = SampleModel::bernoulli(0.5);
  const std::size_t n = 20;
  const auto e = empirical_J(b, 0.7, n, 200000, 99, 1);
  const double exact = exact_tail_log(b, 0.7, n) / static_cast<double>(n);
  CHECK(e.ci_lo <= exact);
  CHECK(exact <= e.ci_hi);
  const auto e4 = empirical_J(b, 0.7, n, 200000, 99, 4);
  CHECK(e4.hits == e.hits);
  const auto none = empirical_J(b, 1.0, 200, 1000, 5);
  CHECK(none.zero_hits);
  CHECK(none.estimate == kNegInf);
  CHECK(none.zero_hit_bound == Approx(std::log(3.0 / 1000.0) / 200.0));
}

TEST_CASE("product rate of independent coordinates is additive") {
  const std::vector<SampleModel> coords = {SampleModel::gaussian(0.0, 1.0),
                                           SampleModel::bernoulli(0.5)};
  const double r = product_cramer_rate(coords, {1.0, 0.75});
  CHECK(r == Approx(0.5 + oracle::kl_bernoulli(0.75, 0.5)).epsilon(1e-3));
}
