#pragma once

#include <cstdint>
#include <span>

namespace maxitive {

/// log(e^a + e^b); -inf is the identity.
double log_add(double a, double b);

/// log sum_i e^{v_i}; -inf entries are skipped, an empty or all -inf input gives -inf.
double log_sum_exp(std::span<const double> v);

/// log Q(z) with Q(z) = P(Z >= z), Z standard normal. erfc below z = 8, a
/// continued fraction for the Mills ratio above.
double log_normal_tail(double z);

/// log C(n, k) via lgamma.
double log_choose(std::uint64_t n, std::uint64_t k);

/// log P(Bin(n, p) = k) with log p and log(1 - p) supplied.
double log_binomial_pmf(std::uint64_t n, std::uint64_t k, double log_p, double log_q);

}  // namespace maxitive
