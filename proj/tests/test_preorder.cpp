#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "error.hpp"
#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "preorder.hpp"

using namespace maxitive;
using fixtures::relation_of;
using fixtures::set_of;

namespace {

Subset sub(std::size_t n, std::initializer_list<std::size_t> members) {
  return Subset::from_members(n, members);
}

std::vector<std::string> names(const UpSetFamily& fam) {
  std::vector<std::string> out;
  for (const auto& s : fam.sets()) out.push_back(s.to_string());
  return out;
}

}  // namespace

TEST_CASE("subset basics") {
  auto s = Subset::parse("0110");
  CHECK(s.size() == 4);
  CHECK(s.count() == 2);
  CHECK(s.contains(1));
  CHECK_FALSE(s.contains(0));
  CHECK(s.complement().to_string() == "1001");
  CHECK((s | Subset::parse("1000")).to_string() == "1110");
  CHECK((s & Subset::parse("0011")).to_string() == "0010");
  CHECK(Subset::parse("0010").is_subset_of(s));
  CHECK(Subset::full(3).is_full());
  CHECK_THROWS_AS(Subset::parse("01x"), Error);
}

TEST_CASE("up and down closures") {
  const auto chain = FinitePreorder::chain(3);
  CHECK(up_closure(chain, sub(3, {1})) == sub(3, {1, 2}));
  CHECK(down_closure(chain, sub(3, {1})) == sub(3, {0, 1}));
  const auto anti = FinitePreorder::antichain(2);
  CHECK(up_closure(anti, sub(2, {0})) == sub(2, {0}));
  CHECK(down_closure(anti, sub(2, {1})) == sub(2, {1}));
  const auto d = fixtures::diamond();
  CHECK(up_closure(d, sub(4, {0})) == Subset::full(4));
  CHECK(down_closure(d, sub(4, {3})) == Subset::full(4));
  CHECK_THROWS_AS(up_closure(chain, sub(4, {0})), Error);
}

TEST_CASE("closure laws hold exhaustively on random posets") {
  Rng rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + rng.below(6);
    const auto p = random_preorder(rng, n);
    const auto rel = relation_of(p);
    for (std::uint64_t m = 0; m < (1ull << n); ++m) {
      const auto s = Subset::from_bits(n, m);
      const auto u = up_closure(p, s);
      CHECK(set_of(u) == oracle::up(rel, set_of(s)));
      CHECK(set_of(down_closure(p, s)) == oracle::down(rel, set_of(s)));
      CHECK(up_closure(p, u) == u);
      CHECK(s.is_subset_of(u));
      CHECK(is_up_set(p, s) == is_down_set(p, s.complement()));
      const auto t = Subset::from_bits(n, (m * 2654435761u) & Subset::mask(n));
      CHECK(up_closure(p, s | t) == (u | up_closure(p, t)));
    }
  }
}

TEST_CASE("up-set enumeration examples") {
  CHECK(names(enumerate_up_sets(FinitePreorder::chain(3))) ==
        std::vector<std::string>{"000", "001", "011", "111"});
  CHECK(enumerate_up_sets(FinitePreorder::antichain(2)).size() == 4);
  CHECK(names(enumerate_up_sets(fixtures::v_poset())) ==
        std::vector<std::string>{"000", "010", "001", "011", "111"});
  for (std::size_t n = 1; n <= 8; ++n) {
    CHECK(enumerate_up_sets(FinitePreorder::chain(n)).size() == n + 1);
    CHECK(enumerate_up_sets(FinitePreorder::antichain(n)).size() == (1u << n));
  }
}

TEST_CASE("up-set enumeration matches the filter oracle") {
  Rng rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const auto p = random_preorder(rng, 1 + rng.below(7));
    const auto fam = enumerate_up_sets(p);
    auto expected = oracle::up_sets(relation_of(p));
    CHECK(fam.size() == expected.size());
    CHECK(fam[fam.empty_index()].empty());
    CHECK(fam[fam.full_index()].is_full());
    for (std::size_t i = 0; i < fam.size(); ++i) {
      CHECK(std::find(expected.begin(), expected.end(), set_of(fam[i])) != expected.end());
      CHECK(fam.index_of(fam[i]) == i);
      if (i > 0) CHECK(canonical_less(fam[i - 1], fam[i]));
    }
  }
}

TEST_CASE("enumeration cap") {
  CHECK_THROWS_AS(enumerate_up_sets(FinitePreorder::antichain(17)), Error);
  try {
    enumerate_up_sets(FinitePreorder::antichain(17));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::cap_exceeded);
  }
  CHECK(enumerate_up_sets(FinitePreorder::chain(20), 20).size() == 21);
  CHECK_THROWS_AS(enumerate_up_sets(FinitePreorder::chain(25), 25), Error);
}

TEST_CASE("preorder text format") {
  const auto p = FinitePreorder::parse("# diamond\n4\n0 <= 1\n0 <= 2\n\n1 <= 3\n2 <= 3\n");
  CHECK(p == fixtures::diamond());
  CHECK(p.leq(0, 3));
  CHECK(FinitePreorder::parse(p.to_text()) == p);
  for (const char* bad : {"", "x\n", "3\n0 <= 5\n", "3\n0 < 1\n", "65\n"}) {
    CHECK_THROWS_AS(FinitePreorder::parse(bad), Error);
  }
  try {
    FinitePreorder::parse("65\n");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::cap_exceeded);
  }
}

TEST_CASE("relation validation") {
  std::vector<std::vector<bool>> not_reflexive = {{true, false}, {false, false}};
  CHECK_THROWS_AS(FinitePreorder::from_relation(not_reflexive), Error);
  std::vector<std::vector<bool>> not_transitive = {
      {true, true, false}, {false, true, true}, {false, false, true}};
  CHECK_THROWS_AS(FinitePreorder::from_relation(not_transitive), Error);
  std::vector<std::vector<bool>> cycle = {{true, true}, {true, true}};
  const auto p = FinitePreorder::from_relation(cycle);
  CHECK(enumerate_up_sets(p).size() == 2);
}

TEST_CASE("is_increasing") {
  const auto chain = FinitePreorder::chain(3);
  CHECK(is_increasing(chain, std::vector<double>{0, 1, 2}));
  CHECK_FALSE(is_increasing(chain, std::vector<double>{1, 0, 2}));
  CHECK(is_increasing(FinitePreorder::antichain(3), std::vector<double>{5, -1, 2}));
  CHECK(is_increasing(chain, std::vector<double>{kNegInf, kNegInf, 0}));
  CHECK_FALSE(is_increasing(chain, std::vector<double>{0, std::nan(""), 2}));
}

TEST_CASE("increasing envelope examples") {
  const auto chain = FinitePreorder::chain(3);
  CHECK(increasing_envelope(chain, std::vector<double>{5, 1, 3}) == std::vector<double>{1, 1, 3});
  CHECK(increasing_envelope(chain, std::vector<double>{0, 1, 2}) == std::vector<double>{0, 1, 2});
  CHECK(increasing_envelope(FinitePreorder::antichain(2), std::vector<double>{7, 2}) ==
        std::vector<double>{7, 2});
}

TEST_CASE("increasing envelope is the greatest increasing minorant") {
  Rng rng(5);
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t n = 1 + rng.below(4);
    const auto p = random_preorder(rng, n);
    std::vector<double> f(n);
    for (auto& v : f) v = static_cast<double>(rng.below(5)) - 2.0;
    const auto env = increasing_envelope(p, f);
    CHECK(env == oracle::envelope_by_search(relation_of(p), f));
    CHECK(is_increasing(p, env));
  }
}
