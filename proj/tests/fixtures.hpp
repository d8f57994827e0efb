#pragma once

// Small named examples shared by the suites, built by set lookup so they do
// not depend on the canonical order.

#include <map>
#include <string>

#include "concentration.hpp"
#include "oracles.hpp"

namespace fixtures {

using namespace maxitive;

inline Concentration from_table(const FinitePreorder& space,
                                const std::map<std::string, double>& table) {
  const auto family = make_family(space);
  std::vector<double> values(family->size(), 0.0);
  for (std::size_t i = 0; i < family->size(); ++i) values[i] = table.at((*family)[i].to_string());
  return Concentration(family, std::move(values));
}

/// 0 <= 1 <= 2 with J(up 2) = -2, J(up 1) = -1; I_min = (0, 1, 2).
inline Concentration chain_example() {
  return from_table(FinitePreorder::chain(3),
                    {{"000", kNegInf}, {"001", -2.0}, {"011", -1.0}, {"111", 0.0}});
}

/// o <= a, o <= b (o = 0, a = 1, b = 2).
inline FinitePreorder v_poset() {
  const std::vector<std::pair<std::size_t, std::size_t>> edges = {{0, 1}, {0, 2}};
  return FinitePreorder::from_edges(3, edges);
}

/// J({a}) = J({b}) = -2 but J({a, b}) = -1: not weakly maxitive.
inline Concentration v_violation() {
  return from_table(v_poset(), {{"000", kNegInf},
                                {"010", -2.0},
                                {"001", -2.0},
                                {"011", -1.0},
                                {"111", 0.0}});
}

/// o <= a, o <= b, a <= t, b <= t (o = 0, a = 1, b = 2, t = 3).
inline FinitePreorder diamond() {
  const std::vector<std::pair<std::size_t, std::size_t>> edges = {{0, 1}, {0, 2}, {1, 3}, {2, 3}};
  return FinitePreorder::from_edges(4, edges);
}

inline oracle::Relation relation_of(const FinitePreorder& p) {
  oracle::Relation r(p.size(), std::vector<bool>(p.size()));
  for (std::size_t x = 0; x < p.size(); ++x)
    for (std::size_t y = 0; y < p.size(); ++y) r[x][y] = p.leq(x, y);
  return r;
}

inline oracle::Set set_of(const Subset& s) {
  oracle::Set out(s.size());
  for (std::size_t x = 0; x < s.size(); ++x) out[x] = s.contains(x);
  return out;
}

inline oracle::SetFunction table_of(const Concentration& j) {
  oracle::SetFunction out;
  for (std::size_t i = 0; i < j.family().size(); ++i) out[set_of(j.family()[i])] = j.at(i);
  return out;
}

}  // namespace fixtures
