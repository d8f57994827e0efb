#include "text.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>

#include "error.hpp"
#include "extended_real.hpp"

namespace maxitive {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.emplace_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_real(const std::string& raw) {
  const std::string text(trim(raw));
  if (text == "-inf" || text == "-Infinity") return kNegInf;
  if (text == "inf" || text == "+inf" || text == "Infinity") return kPosInf;
  if (text.empty()) fail(ErrorCode::parse_error, "empty number");
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || std::isnan(v)) {
    fail(ErrorCode::parse_error, "not a number: '" + text + "'");
  }
  return v;
}

std::size_t parse_count(std::string_view raw) {
  const std::string text(trim(raw));
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos ||
      text.size() > 18) {
    fail(ErrorCode::parse_error, "not a non-negative integer: '" + text + "'");
  }
  return static_cast<std::size_t>(std::stoull(text));
}

std::vector<double> parse_real_range(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() == 1) return {parse_real(parts[0])};
  if (parts.size() != 3) {
    fail(ErrorCode::parse_error, "range must be lo:hi:step, got '" + std::string(text) + "'");
  }
  const double lo = parse_real(parts[0]);
  const double hi = parse_real(parts[1]);
  const double step = parse_real(parts[2]);
  if (!is_finite(lo) || !is_finite(hi) || !is_finite(step) || step <= 0.0 || hi < lo) {
    fail(ErrorCode::invalid_argument, "range needs finite lo <= hi and step > 0");
  }
  const double span = (hi - lo) / step;
  if (span > 1e7) fail(ErrorCode::invalid_argument, "range has too many points");
  const auto count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(lo + static_cast<double>(i) * step);
  return out;
}

std::vector<std::size_t> parse_count_range(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() == 1) {
    const auto n = parse_count(parts[0]);
    if (n == 0) fail(ErrorCode::invalid_argument, "schedule entries must be positive");
    return {n};
  }
  if (parts.size() != 3) {
    fail(ErrorCode::parse_error, "schedule must be lo:hi:step, got '" + std::string(text) + "'");
  }
  const auto lo = parse_count(parts[0]);
  const auto hi = parse_count(parts[1]);
  const auto step = parse_count(parts[2]);
  if (lo == 0 || step == 0 || hi < lo) {
    fail(ErrorCode::invalid_argument, "schedule needs 0 < lo <= hi and step > 0");
  }
  std::vector<std::size_t> out;
  for (std::size_t n = lo; n <= hi; n += step) out.push_back(n);
  return out;
}

}  // namespace maxitive
