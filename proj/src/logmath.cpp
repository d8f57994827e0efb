#include "logmath.hpp"

#include <algorithm>
#include <cmath>

#include "extended_real.hpp"

namespace maxitive {

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double m = std::max(a, b);
  if (m == kPosInf) return kPosInf;
  return m + std::log1p(std::exp(std::min(a, b) - m));
}

double log_sum_exp(std::span<const double> v) {
  double m = kNegInf;
  for (double x : v) m = std::max(m, x);
  if (m == kNegInf || m == kPosInf) return m;
  double s = 0.0;
  for (double x : v) {
    if (x != kNegInf) s += std::exp(x - m);
  }
  return m + std::log(s);
}

double log_normal_tail(double z) {
  if (z < 8.0) return std::log(0.5 * std::erfc(z / std::sqrt(2.0)));
  // Q(z) = phi(z) / (z + 1/(z + 2/(z + 3/(z + ...)))), modified Lentz.
  constexpr double tiny = 1e-300;
  double f = z;
  double c = z;
  double d = 0.0;
  for (int i = 1; i < 500; ++i) {
    const double a = i;
    d = z + a * d;
    d = d == 0.0 ? 1.0 / tiny : 1.0 / d;
    c = z + a / c;
    if (c == 0.0) c = tiny;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  const double log_phi = -0.5 * z * z - 0.5 * std::log(2.0 * 3.14159265358979323846);
  return log_phi - std::log(f);
}

double log_choose(std::uint64_t n, std::uint64_t k) {
  if (k > n) return kNegInf;
  if (k == 0 || k == n) return 0.0;
  const auto dn = static_cast<double>(n);
  const auto dk = static_cast<double>(k);
  return std::lgamma(dn + 1.0) - std::lgamma(dk + 1.0) - std::lgamma(dn - dk + 1.0);
}

double log_binomial_pmf(std::uint64_t n, std::uint64_t k, double log_p, double log_q) {
  if (k > n) return kNegInf;
  const auto dk = static_cast<double>(k);
  const auto dn = static_cast<double>(n);
  return log_choose(n, k) + ext_mul(dk, log_p) + ext_mul(dn - dk, log_q);
}

}  // namespace maxitive
