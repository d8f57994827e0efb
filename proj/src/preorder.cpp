#include "preorder.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "error.hpp"
#include "text.hpp"

namespace maxitive {

namespace {

void check_size(std::size_t size) {
  if (size > kMaxElements) {
    fail(ErrorCode::cap_exceeded,
         "space has " + std::to_string(size) + " elements; at most 64 supported");
  }
}

void check_same_space(const FinitePreorder& space, const Subset& s) {
  if (s.size() != space.size()) {
    fail(ErrorCode::size_mismatch, "subset of size " + std::to_string(s.size()) +
                                       " used with a space of size " +
                                       std::to_string(space.size()));
  }
}

}  // namespace

Subset::Subset(std::size_t size) : size_(size) { check_size(size); }

Subset Subset::full(std::size_t size) { return from_bits(size, mask(size)); }

Subset Subset::from_bits(std::size_t size, std::uint64_t bits) {
  Subset s(size);
  s.bits_ = bits & mask(size);
  return s;
}

Subset Subset::from_members(std::size_t size, std::span<const std::size_t> members) {
  Subset s(size);
  for (auto x : members) s.insert(x);
  return s;
}

Subset Subset::parse(std::string_view membership) {
  Subset s(membership.size());
  for (std::size_t i = 0; i < membership.size(); ++i) {
    if (membership[i] == '1') {
      s.insert(i);
    } else if (membership[i] != '0') {
      fail(ErrorCode::parse_error, "membership strings use only '0' and '1'");
    }
  }
  return s;
}

std::size_t Subset::count() const { return static_cast<std::size_t>(std::popcount(bits_)); }

void Subset::insert(std::size_t x) {
  if (x >= size_) {
    fail(ErrorCode::invalid_argument, "element " + std::to_string(x) + " out of range");
  }
  bits_ |= std::uint64_t{1} << x;
}

void Subset::erase(std::size_t x) {
  if (x < size_) bits_ &= ~(std::uint64_t{1} << x);
}

bool Subset::is_subset_of(const Subset& other) const {
  return size_ == other.size_ && (bits_ & ~other.bits_) == 0;
}

std::vector<std::size_t> Subset::members() const {
  std::vector<std::size_t> out;
  for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
  }
  return out;
}

std::string Subset::to_string() const {
  std::string out(size_, '0');
  for (auto x : members()) out[x] = '1';
  return out;
}

Subset operator|(const Subset& a, const Subset& b) {
  if (a.size_ != b.size_) fail(ErrorCode::size_mismatch, "union of subsets of different spaces");
  return Subset::from_bits(a.size_, a.bits_ | b.bits_);
}

Subset operator&(const Subset& a, const Subset& b) {
  if (a.size_ != b.size_) {
    fail(ErrorCode::size_mismatch, "intersection of subsets of different spaces");
  }
  return Subset::from_bits(a.size_, a.bits_ & b.bits_);
}

bool canonical_less(const Subset& a, const Subset& b) {
  const auto ca = a.count();
  const auto cb = b.count();
  if (ca != cb) return ca < cb;
  const std::uint64_t diff = a.bits() ^ b.bits();
  if (diff == 0) return false;
  const auto low = std::countr_zero(diff);
  return ((a.bits() >> low) & 1u) != 0;
}

FinitePreorder FinitePreorder::from_relation(const std::vector<std::vector<bool>>& leq) {
  const std::size_t n = leq.size();
  check_size(n);
  FinitePreorder p;
  p.size_ = n;
  p.up_.assign(n, 0);
  p.down_.assign(n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    if (leq[x].size() != n) fail(ErrorCode::size_mismatch, "relation table must be square");
    if (!leq[x][x]) {
      fail(ErrorCode::invalid_argument, "relation is not reflexive at " + std::to_string(x));
    }
    for (std::size_t y = 0; y < n; ++y) {
      if (leq[x][y]) {
        p.up_[x] |= std::uint64_t{1} << y;
        p.down_[y] |= std::uint64_t{1} << x;
      }
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (auto y : p.principal_up(x).members()) {
      if ((p.up_[y] & ~p.up_[x]) != 0) {
        fail(ErrorCode::invalid_argument, "relation is not transitive at " + std::to_string(x) +
                                              " <= " + std::to_string(y));
      }
    }
  }
  return p;
}

FinitePreorder FinitePreorder::from_edges(
    std::size_t size, std::span<const std::pair<std::size_t, std::size_t>> edges) {
  check_size(size);
  FinitePreorder p;
  p.size_ = size;
  p.up_.assign(size, 0);
  for (std::size_t x = 0; x < size; ++x) p.up_[x] = std::uint64_t{1} << x;
  for (const auto& [x, y] : edges) {
    if (x >= size || y >= size) {
      fail(ErrorCode::invalid_argument, "edge " + std::to_string(x) + " <= " + std::to_string(y) +
                                            " outside a space of size " + std::to_string(size));
    }
    p.up_[x] |= std::uint64_t{1} << y;
  }
  // Warshall on bit rows.
  for (std::size_t k = 0; k < size; ++k) {
    for (std::size_t x = 0; x < size; ++x) {
      if ((p.up_[x] >> k) & 1u) p.up_[x] |= p.up_[k];
    }
  }
  p.down_.assign(size, 0);
  for (std::size_t x = 0; x < size; ++x) {
    for (std::uint64_t b = p.up_[x]; b != 0; b &= b - 1) {
      p.down_[static_cast<std::size_t>(std::countr_zero(b))] |= std::uint64_t{1} << x;
    }
  }
  return p;
}

FinitePreorder FinitePreorder::chain(std::size_t size) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i + 1 < size; ++i) edges.emplace_back(i, i + 1);
  return from_edges(size, edges);
}

FinitePreorder FinitePreorder::antichain(std::size_t size) { return from_edges(size, {}); }

FinitePreorder FinitePreorder::parse(std::string_view text) {
  std::vector<std::string> lines;
  for (auto& line : split(text, '\n')) {
    if (line.empty() || line[0] == '#') continue;
    lines.push_back(line);
  }
  if (lines.empty()) fail(ErrorCode::parse_error, "poset text is empty");
  std::size_t n = 0;
  try {
    n = parse_count(lines[0]);
  } catch (const Error&) {
    fail(ErrorCode::parse_error, "first line must be the element count, got '" + lines[0] + "'");
  }
  if (n == 0) fail(ErrorCode::parse_error, "poset must have at least one element");
  if (n > kMaxElements) fail(ErrorCode::cap_exceeded, "poset has more than 64 elements");
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto pos = lines[i].find("<=");
    if (pos == std::string::npos) {
      fail(ErrorCode::parse_error, "expected 'x <= y', got '" + lines[i] + "'");
    }
    std::size_t x = 0;
    std::size_t y = 0;
    try {
      x = parse_count(std::string_view(lines[i]).substr(0, pos));
      y = parse_count(std::string_view(lines[i]).substr(pos + 2));
    } catch (const Error&) {
      fail(ErrorCode::parse_error, "expected 'x <= y', got '" + lines[i] + "'");
    }
    if (x >= n || y >= n) {
      fail(ErrorCode::parse_error, "element out of range in '" + lines[i] + "'");
    }
    edges.emplace_back(x, y);
  }
  return from_edges(n, edges);
}

std::string FinitePreorder::to_text() const {
  std::ostringstream out;
  out << size_ << '\n';
  for (const auto& [x, y] : strict_relations()) out << x << " <= " << y << '\n';
  return out.str();
}

bool FinitePreorder::leq(std::size_t x, std::size_t y) const {
  if (x >= size_ || y >= size_) fail(ErrorCode::invalid_argument, "element out of range");
  return ((up_[x] >> y) & 1u) != 0;
}

std::vector<std::pair<std::size_t, std::size_t>> FinitePreorder::strict_relations() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t x = 0; x < size_; ++x) {
    for (std::size_t y = 0; y < size_; ++y) {
      if (x != y && ((up_[x] >> y) & 1u)) out.emplace_back(x, y);
    }
  }
  return out;
}

Subset up_closure(const FinitePreorder& space, const Subset& s) {
  check_same_space(space, s);
  std::uint64_t bits = 0;
  for (std::uint64_t b = s.bits(); b != 0; b &= b - 1) {
    bits |= space.up_bits(static_cast<std::size_t>(std::countr_zero(b)));
  }
  return Subset::from_bits(space.size(), bits);
}

Subset down_closure(const FinitePreorder& space, const Subset& s) {
  check_same_space(space, s);
  std::uint64_t bits = 0;
  for (std::uint64_t b = s.bits(); b != 0; b &= b - 1) {
    bits |= space.down_bits(static_cast<std::size_t>(std::countr_zero(b)));
  }
  return Subset::from_bits(space.size(), bits);
}

bool is_up_set(const FinitePreorder& space, const Subset& s) { return up_closure(space, s) == s; }

bool is_down_set(const FinitePreorder& space, const Subset& s) {
  return down_closure(space, s) == s;
}

std::optional<std::size_t> UpSetFamily::index_of(const Subset& s) const {
  if (s.size() != space_.size()) return std::nullopt;
  const auto it = index_.find(s.bits());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

UpSetFamily enumerate_up_sets(const FinitePreorder& space, std::size_t cap) {
  const std::size_t n = space.size();
  if (cap > UpSetFamily::kHardCap) {
    fail(ErrorCode::cap_exceeded, "enumeration cap above the hard limit of 24");
  }
  if (n > cap) {
    fail(ErrorCode::cap_exceeded, "up-set enumeration capped at " + std::to_string(cap) +
                                      " elements, space has " + std::to_string(n));
  }
  UpSetFamily family;
  family.space_ = space;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    bool closed = true;
    for (std::uint64_t b = bits; b != 0 && closed; b &= b - 1) {
      const auto x = static_cast<std::size_t>(std::countr_zero(b));
      closed = (space.up_bits(x) & ~bits) == 0;
    }
    if (closed) family.sets_.push_back(Subset::from_bits(n, bits));
  }
  std::sort(family.sets_.begin(), family.sets_.end(), canonical_less);
  family.index_.reserve(family.sets_.size());
  for (std::size_t i = 0; i < family.sets_.size(); ++i) {
    family.index_.emplace(family.sets_[i].bits(), i);
  }
  return family;
}

bool is_increasing(const FinitePreorder& space, std::span<const double> f) {
  if (f.size() != space.size()) {
    fail(ErrorCode::size_mismatch, "function length does not match the space");
  }
  for (std::size_t x = 0; x < f.size(); ++x) {
    if (std::isnan(f[x])) return false;
    for (std::uint64_t b = space.up_bits(x); b != 0; b &= b - 1) {
      if (!(f[x] <= f[static_cast<std::size_t>(std::countr_zero(b))])) return false;
    }
  }
  return true;
}

std::vector<double> increasing_envelope(const FinitePreorder& space, std::span<const double> f) {
  if (f.size() != space.size()) {
    fail(ErrorCode::size_mismatch, "function length does not match the space");
  }
  std::vector<double> out(f.size());
  for (std::size_t x = 0; x < f.size(); ++x) {
    double m = f[x];
    for (std::uint64_t b = space.up_bits(x); b != 0; b &= b - 1) {
      m = std::min(m, f[static_cast<std::size_t>(std::countr_zero(b))]);
    }
    out[x] = m;
  }
  return out;
}

}  // namespace maxitive
