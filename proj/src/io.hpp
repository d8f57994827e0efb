#pragma once

// JSON and CSV serialization. Infinite values travel as the strings "-inf"
// and "inf" in both formats.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "concentration.hpp"

namespace maxitive {

using Json = nlohmann::ordered_json;

Json real_to_json(double v);
/// Accepts numbers and the strings "-inf", "inf", "+inf".
double real_from_json(const Json& v);

Json preorder_to_json(const FinitePreorder& space);
FinitePreorder preorder_from_json(const Json& v);

/// {poset, upsets, values} with up-sets in canonical order.
Json concentration_to_json(const Concentration& j);
/// Up-sets may come in any order but must be exactly the up-set family.
Concentration concentration_from_json(const Json& v, std::size_t cap = UpSetFamily::kDefaultCap);

/// Parses text, mapping JSON syntax errors to parse_error.
Json parse_json(std::string_view text);

/// Two-column numeric CSV (x, y). A non-numeric first line is a header;
/// '#' lines and blank lines are skipped.
std::vector<std::pair<double, double>> parse_xy_csv(std::string_view text);

/// Joins cells with commas; reals rendered by format_real.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  CsvWriter& cell(double v);
  CsvWriter& cell(std::size_t v);
  CsvWriter& cell(const std::string& v);
  void end_row();
  const std::string& str() const { return out_; }

 private:
  std::string out_;
  bool row_open_ = false;
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace maxitive
