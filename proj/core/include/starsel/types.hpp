#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace starsel {

/// Hard cap on ground-set size; subsets are 16-bit words and several
/// operations sweep the powerset of a family.
inline constexpr int max_ground_size = 16;

/// Largest ground set for which "all families over X" is enumerable
/// (2^(2^n) families).
inline constexpr int max_enumerable_ground = 4;

// -- errors ------------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class UnknownReference : public Error {
 public:
  explicit UnknownReference(const std::string& name)
      : Error("unknown reference: " + name), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& expected)
      : Error("syntax error at offset " + std::to_string(position) +
              ": expected " + expected),
        position_(position),
        expected_(expected) {}
  std::size_t position() const { return position_; }
  const std::string& expected() const { return expected_; }

 private:
  std::size_t position_;
  std::string expected_;
};

class ArityError : public Error {
 public:
  using Error::Error;
};

class TypeMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidWitness : public Error {
 public:
  using Error::Error;
};

class MappedWitnessRejected : public Error {
 public:
  using Error::Error;
};

// -- ground set ---------------------------------------------------------------

/// The finite universe X = {0, ..., size-1}.
struct GroundSet {
  int size = 1;

  std::uint32_t full_mask() const {
    return (size >= 32) ? ~0u : ((1u << size) - 1u);
  }
  bool operator==(const GroundSet&) const = default;
};

// -- subset -------------------------------------------------------------------

/// A subset of the ground set, stored as a bit vector.
class Subset {
 public:
  constexpr Subset() = default;
  constexpr explicit Subset(std::uint32_t bits) : bits_(bits) {}

  static Subset of(std::initializer_list<int> elems) {
    std::uint32_t b = 0;
    for (int e : elems) b |= (1u << e);
    return Subset(b);
  }
  static constexpr Subset empty_set() { return Subset(0); }
  static Subset singleton(int x) { return Subset(1u << x); }
  static Subset full(GroundSet g) { return Subset(g.full_mask()); }

  std::uint32_t bits() const { return bits_; }
  bool empty() const { return bits_ == 0; }
  int size() const { return std::popcount(bits_); }
  bool contains(int x) const { return (bits_ >> x) & 1u; }
  bool is_subset_of(Subset other) const { return (bits_ & ~other.bits_) == 0; }
  bool meets(Subset other) const { return (bits_ & other.bits_) != 0; }
  bool in_range(GroundSet g) const { return (bits_ & ~g.full_mask()) == 0; }

  Subset complement(GroundSet g) const { return Subset(~bits_ & g.full_mask()); }
  Subset union_with(Subset o) const { return Subset(bits_ | o.bits_); }
  Subset intersect(Subset o) const { return Subset(bits_ & o.bits_); }

  std::vector<int> elements() const {
    std::vector<int> out;
    for (int i = 0; i < 32; ++i)
      if (contains(i)) out.push_back(i);
    return out;
  }

  auto operator<=>(const Subset&) const = default;

 private:
  std::uint32_t bits_ = 0;
};

// -- set family ---------------------------------------------------------------

/// A finite family of subsets: unordered, duplicate-free. Members are kept
/// sorted by numeric encoding, which is the canonical output order.
class SetFamily {
 public:
  SetFamily() = default;
  explicit SetFamily(std::vector<Subset> members) : members_(std::move(members)) {
    normalize();
  }
  static SetFamily of(std::initializer_list<std::initializer_list<int>> fams) {
    std::vector<Subset> ms;
    for (const auto& f : fams) ms.push_back(Subset::of(f));
    return SetFamily(std::move(ms));
  }

  const std::vector<Subset>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }

  bool contains(Subset s) const {
    return std::binary_search(members_.begin(), members_.end(), s);
  }

  void insert(Subset s) {
    auto it = std::lower_bound(members_.begin(), members_.end(), s);
    if (it == members_.end() || *it != s) members_.insert(it, s);
  }
  void insert_all(const SetFamily& other) {
    for (Subset s : other.members_) insert(s);
  }

  /// Union of all members (the union of the empty family is ∅).
  Subset union_of() const {
    Subset u;
    for (Subset s : members_) u = u.union_with(s);
    return u;
  }

  bool covers(GroundSet g) const { return union_of() == Subset::full(g); }
  bool in_range(GroundSet g) const {
    return std::all_of(members_.begin(), members_.end(),
                       [&](Subset s) { return s.in_range(g); });
  }

  SetFamily complemented(GroundSet g) const {
    std::vector<Subset> out;
    out.reserve(members_.size());
    for (Subset s : members_) out.push_back(s.complement(g));
    return SetFamily(std::move(out));
  }

  auto operator<=>(const SetFamily&) const = default;

 private:
  void normalize() {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  }
  std::vector<Subset> members_;
};

std::string to_string(Subset s);
std::string to_string(const SetFamily& f);

/// a ≺ b: every member of a is contained in some member of b.
bool refines_into(const SetFamily& a, const SetFamily& b);

}  // namespace starsel
