#include "io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "error.hpp"
#include "extended_real.hpp"
#include "text.hpp"

namespace maxitive {

Json real_to_json(double v) {
  if (v == kNegInf) return "-inf";
  if (v == kPosInf) return "inf";
  if (std::isnan(v)) fail(ErrorCode::domain_error, "cannot serialize NaN");
  return v;
}

double real_from_json(const Json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "-inf") return kNegInf;
    if (s == "inf" || s == "+inf") return kPosInf;
  }
  fail(ErrorCode::parse_error, "expected a number or \"-inf\", got " + v.dump());
}

Json preorder_to_json(const FinitePreorder& space) {
  Json leq = Json::array();
  for (const auto& [x, y] : space.strict_relations()) leq.push_back(Json::array({x, y}));
  Json out;
  out["size"] = space.size();
  out["leq"] = std::move(leq);
  return out;
}

FinitePreorder preorder_from_json(const Json& v) {
  if (!v.is_object() || !v.contains("size")) fail(ErrorCode::parse_error, "poset needs a size");
  if (!v["size"].is_number_unsigned()) fail(ErrorCode::parse_error, "poset size must be a count");
  const auto n = v["size"].get<std::size_t>();
  if (n > kMaxElements) fail(ErrorCode::cap_exceeded, "poset has more than 64 elements");
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  if (v.contains("leq")) {
    if (!v["leq"].is_array()) fail(ErrorCode::parse_error, "leq must be an array");
    for (const auto& e : v["leq"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() ||
          !e[1].is_number_unsigned()) {
        fail(ErrorCode::parse_error, "leq entries must be [x, y] pairs");
      }
      const auto x = e[0].get<std::size_t>();
      const auto y = e[1].get<std::size_t>();
      if (x >= n || y >= n) fail(ErrorCode::parse_error, "leq entry out of range");
      edges.emplace_back(x, y);
    }
  }
  return FinitePreorder::from_edges(n, edges);
}

Json concentration_to_json(const Concentration& j) {
  Json out;
  out["poset"] = preorder_to_json(j.space());
  Json sets = Json::array();
  Json values = Json::array();
  for (std::size_t i = 0; i < j.family().size(); ++i) {
    sets.push_back(j.family()[i].to_string());
    values.push_back(real_to_json(j.at(i)));
  }
  out["upsets"] = std::move(sets);
  out["values"] = std::move(values);
  return out;
}

Concentration concentration_from_json(const Json& v, std::size_t cap) {
  if (!v.is_object()) fail(ErrorCode::parse_error, "concentration must be an object");
  for (const char* key : {"poset", "upsets", "values"}) {
    if (!v.contains(key)) fail(ErrorCode::parse_error, std::string("missing key ") + key);
  }
  const auto space = preorder_from_json(v["poset"]);
  const auto family = make_family(space, cap);
  const auto& sets = v["upsets"];
  const auto& vals = v["values"];
  if (!sets.is_array() || !vals.is_array()) {
    fail(ErrorCode::parse_error, "upsets and values must be arrays");
  }
  if (sets.size() != vals.size()) fail(ErrorCode::size_mismatch, "upsets and values differ");
  if (sets.size() != family->size()) {
    fail(ErrorCode::size_mismatch, "expected " + std::to_string(family->size()) + " up-sets, got " +
                                       std::to_string(sets.size()));
  }
  std::vector<double> values(family->size(), 0.0);
  std::vector<bool> seen(family->size(), false);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (!sets[i].is_string()) fail(ErrorCode::parse_error, "up-sets must be membership strings");
    const auto s = Subset::parse(sets[i].get<std::string>());
    if (s.size() != space.size()) fail(ErrorCode::size_mismatch, "membership string length");
    const auto idx = family->index_of(s);
    if (!idx) fail(ErrorCode::not_upset, s.to_string() + " is not an up-set");
    if (seen[*idx]) fail(ErrorCode::parse_error, "duplicate up-set " + s.to_string());
    seen[*idx] = true;
    values[*idx] = real_from_json(vals[i]);
  }
  return Concentration(family, std::move(values));
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::parse_error, std::string("invalid JSON: ") + e.what());
  }
}

std::vector<std::pair<double, double>> parse_xy_csv(std::string_view text) {
  std::vector<std::pair<double, double>> out;
  std::istringstream in{std::string(text)};
  std::string line;
  bool first = true;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto cells = split(t, ',');
    if (cells.size() != 2) {
      fail(ErrorCode::parse_error, "line " + std::to_string(lineno) + ": expected two columns");
    }
    try {
      out.emplace_back(parse_real(cells[0]), parse_real(cells[1]));
    } catch (const Error&) {
      if (!first) throw;
    }
    first = false;
  }
  return out;
}

CsvWriter::CsvWriter(std::vector<std::string> header) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i > 0) out_ += ',';
    out_ += header[i];
  }
  out_ += '\n';
}

CsvWriter& CsvWriter::cell(double v) { return cell(format_real(v)); }

CsvWriter& CsvWriter::cell(std::size_t v) { return cell(std::to_string(v)); }

CsvWriter& CsvWriter::cell(const std::string& v) {
  if (row_open_) out_ += ',';
  out_ += v;
  row_open_ = true;
  return *this;
}

void CsvWriter::end_row() {
  out_ += '\n';
  row_open_ = false;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io_error, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::io_error, "cannot write " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) fail(ErrorCode::io_error, "write failed for " + path);
}

}  // namespace maxitive
