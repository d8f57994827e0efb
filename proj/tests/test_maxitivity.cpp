#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "generators.hpp"
#include "maxitivity.hpp"
#include "oracles.hpp"

using namespace maxitive;
using doctest::Approx;

TEST_CASE("V example is not weakly maxitive") {
  const auto j = fixtures::v_violation();
  const auto weak = is_weakly_maxitive(j);
  REQUIRE_FALSE(weak.verdict);
  REQUIRE(weak.witness);
  CHECK(weak.witness->set == Subset::parse("011"));
  CHECK(weak.witness->lhs == -1.0);
  CHECK(weak.witness->rhs == -2.0);
  CHECK_FALSE(is_completely_maxitive(j));

  const auto search = weak_maxitivity_cover_search(j);
  REQUIRE_FALSE(search.verdict);
  REQUIRE(search.witness);
  Subset covered(3);
  for (const auto& b : search.witness->cover) {
    CHECK(j.at(b) < search.witness->lhs);
    covered = covered | b;
  }
  CHECK(search.witness->set.is_subset_of(covered));

  const auto rate = minimal_rate(j);
  CHECK(rate == std::vector<double>{0.0, 2.0, 2.0});
  const auto report = check_mldp(j, rate);
  CHECK(report.lower_ok);
  CHECK_FALSE(report.upper_ok);
  CHECK(report.worst_gap_upper == -1.0);
  // f = log 1_{a, b}: phi_J(f) = -1 but max(f - I) = -2.
  const auto gap = varadhan_gap(j, rate, log_indicator(Subset::parse("011")));
  CHECK(gap.lower == 1.0);
  CHECK(gap.upper == -1.0);
}

TEST_CASE("minimal rate examples") {
  CHECK(minimal_rate(fixtures::chain_example()) == std::vector<double>{0.0, 1.0, 2.0});
  const auto anti = fixtures::from_table(FinitePreorder::antichain(2),
                                         {{"00", kNegInf}, {"10", -1.0}, {"01", -1.0}, {"11", 0.0}});
  CHECK(minimal_rate(anti) == std::vector<double>{1.0, 1.0});
  CHECK_FALSE(is_weakly_maxitive(anti).verdict);
  const auto ok = fixtures::from_table(FinitePreorder::antichain(2),
                                       {{"00", kNegInf}, {"10", -1.0}, {"01", 0.0}, {"11", 0.0}});
  CHECK(is_weakly_maxitive(ok).verdict);
  CHECK(minimal_rate(ok) == std::vector<double>{1.0, 0.0});
}

TEST_CASE("chain example satisfies both bounds with its minimal rate") {
  const auto j = fixtures::chain_example();
  CHECK(is_weakly_maxitive(j).verdict);
  CHECK(is_completely_maxitive(j));
  const auto rate = minimal_rate(j);
  CHECK(check_mldp(j, rate).ok());
  std::vector<std::vector<double>> fns = {{0.5, 1.5, 3.0}, {0.0, 0.0, 0.0}, {kNegInf, 0.0, 0.0}};
  CHECK(check_mlp(j, rate, fns).ok());
  CHECK(sup_minus_rate(fns[0], rate) == 1.0);
}

TEST_CASE("rate minimality") {
  const auto j = fixtures::chain_example();
  const std::vector<double> larger = {0.0, 1.5, 2.5};
  const auto r = rate_minimality_check(j, larger);
  CHECK(r.lower_bound);
  CHECK_FALSE(r.upper_bound);
  CHECK(r.holds());
  CHECK(r.minimal == std::vector<double>{0.0, 1.0, 2.0});
  REQUIRE(r.lower_direction);
  CHECK(*r.lower_direction);
  CHECK_FALSE(r.upper_direction);

  const auto exact = rate_minimality_check(j, minimal_rate(j));
  CHECK(exact.lower_bound);
  CHECK(exact.upper_bound);
  CHECK(exact.holds());
  CHECK(exact.envelope == exact.minimal);
}

TEST_CASE("tightness probes") {
  const auto j = fixtures::chain_example();
  const std::vector<TightnessProbe> bad = {{Subset::parse("011"), Subset::parse("001"), 0.5}};
  const auto r = tightness_check(j, bad);
  CHECK_FALSE(r.ok);
  CHECK(r.lhs == -1.0);
  CHECK(r.rhs == -1.5);
  const std::vector<TightnessProbe> good = {{Subset::parse("011"), Subset::full(3), 0.5}};
  CHECK(tightness_check(j, good).ok);
  CHECK(is_tight(j));
}

TEST_CASE("weak maxitivity agrees with literal cover enumeration") {
  Rng rng(31);
  std::size_t negatives = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto p = random_preorder(rng, 1 + rng.below(5));
    const auto fam = make_family(p);
    if (fam->size() > 16) continue;  // enumeration is 2^(up-set count)
    const auto j = random_concentration(rng, fam);
    const auto table = fixtures::table_of(j);
    std::vector<oracle::Set> sets;
    for (const auto& s : fam->sets()) sets.push_back(fixtures::set_of(s));
    const bool expected = oracle::weakly_maxitive_by_covers(sets, table);
    const auto principal = is_weakly_maxitive(j);
    CHECK(principal.verdict == expected);
    CHECK(weak_maxitivity_cover_search(j).verdict == expected);
    CHECK(is_completely_maxitive(j) == expected);
    if (!expected) {
      ++negatives;
      REQUIRE(principal.witness);
      CHECK(principal.witness->lhs > principal.witness->rhs);
    }
  }
  CHECK(negatives > 20);
}

TEST_CASE("rate concentrations are maxitive and recover their rate envelope") {
  Rng rng(37);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = random_preorder(rng, 1 + rng.below(6));
    const auto fam = make_family(p);
    const auto rate = random_rate(rng, p.size());
    const auto j = Concentration::from_rate(fam, rate);
    CHECK(is_weakly_maxitive(j).verdict);
    CHECK(is_completely_maxitive(j));
    const auto env = increasing_envelope(p, rate);
    CHECK(minimal_rate(j) == env);
    CHECK(check_mldp(j, rate).ok());
    std::vector<std::vector<double>> fns;
    for (int k = 0; k < 10; ++k) fns.push_back(random_increasing_fn(rng, *fam));
    CHECK(check_mlp(j, rate, fns).ok());
    const auto m = rate_minimality_check(j, rate);
    CHECK(m.precondition_ok());
    CHECK(m.holds());
  }
}
