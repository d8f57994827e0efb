#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <string>

namespace maxitive {

/// Values in [-inf, inf]. Plain doubles; every convention that IEEE
/// arithmetic gets wrong for set functions goes through the helpers below so
/// that NaN never leaks out of the library.
using ExtendedReal = double;

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kPosInf = std::numeric_limits<double>::infinity();

/// c + (-inf) = -inf, including c = +inf.
inline double ext_add(double a, double b) {
  if (a == kNegInf || b == kNegInf) return kNegInf;
  return a + b;
}

/// -inf * 0 = 0 (indicator convention).
inline double ext_mul(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  return a * b;
}

/// hi - lo, with hi == lo (including matching infinities) mapped to 0.
/// Sign convention everywhere: gap >= 0 means "hi >= lo holds".
inline double signed_gap(double hi, double lo) {
  if (hi == lo) return 0.0;
  return hi - lo;
}

inline bool is_finite(double v) { return std::isfinite(v); }

/// 17 significant digits; infinities as "inf" / "-inf".
inline std::string format_real(double v) {
  if (v == kNegInf) return "-inf";
  if (v == kPosInf) return "inf";
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Fewest significant digits that read back to the same double.
inline std::string format_shortest(double v) {
  if (!std::isfinite(v)) return format_real(v);
  char buf[40];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

/// Accepts anything strtod does, plus "inf"/"-inf"/"+inf".
double parse_real(const std::string& text);

}  // namespace maxitive
