#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace maxitive {

std::string_view trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

/// Integer in [0, 2^63); throws parse_error.
std::size_t parse_count(std::string_view text);

/// "lo:hi:step", inclusive of hi when it lands on the lattice (within 1e-9
/// steps). Points are lo + i*step. A single number is a one-point grid.
std::vector<double> parse_real_range(std::string_view text);

/// "lo:hi:step" over positive integers, inclusive.
std::vector<std::size_t> parse_count_range(std::string_view text);

}  // namespace maxitive
