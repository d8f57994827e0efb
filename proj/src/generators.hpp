#pragma once

// Seeded generators for the randomized suites.

#include <vector>

#include "concentration.hpp"
#include "random.hpp"

namespace maxitive {

/// Random preorder on `size` elements. Mostly acyclic; occasionally adds a
/// back edge so that equivalence classes larger than one element appear.
FinitePreorder random_preorder(Rng& rng, std::size_t size);

/// Random increasing function. Mixes envelopes of noisy values (with ties and
/// -inf plateaus), log-indicators of up-sets and multi-level staircases.
std::vector<double> random_increasing_fn(Rng& rng, const UpSetFamily& family);

/// Finite increasing function with values in (lo, hi).
std::vector<double> random_bounded_increasing_fn(Rng& rng, const FinitePreorder& space, double lo,
                                                 double hi);

/// Rate with values in [0, 5] u {inf}, attaining 0.
std::vector<double> random_rate(Rng& rng, std::size_t size);

/// Weakly maxitive J generated from a random rate.
Concentration random_maxitive_concentration(Rng& rng, const FamilyPtr& family);

/// Arbitrary monotone J (weakly maxitive or not).
Concentration random_monotone_concentration(Rng& rng, const FamilyPtr& family);

/// Either of the two above with equal probability.
Concentration random_concentration(Rng& rng, const FamilyPtr& family);

}  // namespace maxitive
