#pragma once

// Finite preordered spaces with the discrete topology. On such a space every
// set is open, closed and compact, so the families of open, closed and
// compactly generated up-sets all coincide with the plain up-sets. This is
// the exact backend for the finite checks.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace maxitive {

inline constexpr std::size_t kMaxElements = 64;

/// Subset of {0, ..., size-1}, stored as a bit mask.
class Subset {
 public:
  Subset() = default;
  explicit Subset(std::size_t size);

  static Subset full(std::size_t size);
  static Subset from_bits(std::size_t size, std::uint64_t bits);
  static Subset from_members(std::size_t size, std::span<const std::size_t> members);
  static Subset from_members(std::size_t size, std::initializer_list<std::size_t> members) {
    return from_members(size, std::span<const std::size_t>(members.begin(), members.size()));
  }
  /// Membership string, one '0'/'1' per element, element 0 first.
  static Subset parse(std::string_view membership);

  std::size_t size() const { return size_; }
  std::uint64_t bits() const { return bits_; }
  bool contains(std::size_t x) const { return x < size_ && ((bits_ >> x) & 1u) != 0; }
  std::size_t count() const;
  bool empty() const { return bits_ == 0; }
  bool is_full() const { return bits_ == mask(size_); }

  void insert(std::size_t x);
  void erase(std::size_t x);

  Subset complement() const { return from_bits(size_, ~bits_ & mask(size_)); }
  bool is_subset_of(const Subset& other) const;
  std::vector<std::size_t> members() const;
  std::string to_string() const;

  friend Subset operator|(const Subset& a, const Subset& b);
  friend Subset operator&(const Subset& a, const Subset& b);
  friend bool operator==(const Subset& a, const Subset& b) = default;

  static std::uint64_t mask(std::size_t size) {
    return size >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << size) - 1);
  }

 private:
  std::size_t size_ = 0;
  std::uint64_t bits_ = 0;
};

/// Cardinality first, then the set holding the lowest differing element.
bool canonical_less(const Subset& a, const Subset& b);

class FinitePreorder {
 public:
  FinitePreorder() = default;

  /// Validates reflexivity and transitivity of leq (leq[x][y] <=> x <= y).
  static FinitePreorder from_relation(const std::vector<std::vector<bool>>& leq);
  /// Reflexive-transitive closure of the given x <= y edges.
  static FinitePreorder from_edges(std::size_t size,
                                   std::span<const std::pair<std::size_t, std::size_t>> edges);
  static FinitePreorder chain(std::size_t size);
  static FinitePreorder antichain(std::size_t size);

  /// Text format: first line `n`, then one `x <= y` per line. Blank lines and
  /// lines starting with '#' are ignored.
  static FinitePreorder parse(std::string_view text);
  std::string to_text() const;

  std::size_t size() const { return size_; }
  bool leq(std::size_t x, std::size_t y) const;

  /// up(x) = {y : x <= y}, down(x) = {y : y <= x}.
  Subset principal_up(std::size_t x) const { return Subset::from_bits(size_, up_[x]); }
  Subset principal_down(std::size_t x) const { return Subset::from_bits(size_, down_[x]); }
  std::uint64_t up_bits(std::size_t x) const { return up_[x]; }
  std::uint64_t down_bits(std::size_t x) const { return down_[x]; }

  /// All pairs x <= y with x != y.
  std::vector<std::pair<std::size_t, std::size_t>> strict_relations() const;

  friend bool operator==(const FinitePreorder&, const FinitePreorder&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> up_;
  std::vector<std::uint64_t> down_;
};

Subset up_closure(const FinitePreorder& space, const Subset& s);
Subset down_closure(const FinitePreorder& space, const Subset& s);
bool is_up_set(const FinitePreorder& space, const Subset& s);
bool is_down_set(const FinitePreorder& space, const Subset& s);

/// All up-sets of a finite preorder in canonical order; front() is the empty
/// set and back() the full space.
class UpSetFamily {
 public:
  static constexpr std::size_t kDefaultCap = 16;
  static constexpr std::size_t kHardCap = 24;

  const FinitePreorder& space() const { return space_; }
  std::span<const Subset> sets() const { return sets_; }
  std::size_t size() const { return sets_.size(); }
  const Subset& operator[](std::size_t i) const { return sets_[i]; }

  std::optional<std::size_t> index_of(const Subset& s) const;
  std::size_t empty_index() const { return 0; }
  std::size_t full_index() const { return sets_.size() - 1; }

 private:
  friend UpSetFamily enumerate_up_sets(const FinitePreorder&, std::size_t);

  FinitePreorder space_;
  std::vector<Subset> sets_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

/// Throws cap_exceeded when space.size() > cap (or cap > kHardCap).
UpSetFamily enumerate_up_sets(const FinitePreorder& space,
                              std::size_t cap = UpSetFamily::kDefaultCap);

/// f(x) <= f(y) whenever x <= y. Values may be -inf; NaN is never increasing.
bool is_increasing(const FinitePreorder& space, std::span<const double> f);

/// Greatest increasing function below f: min of f over up(x). Lower
/// semicontinuity is vacuous on a discrete space.
std::vector<double> increasing_envelope(const FinitePreorder& space, std::span<const double> f);

}  // namespace maxitive
