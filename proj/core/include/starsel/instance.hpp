#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "starsel/predicate.hpp"
#include "starsel/types.hpp"

namespace starsel {

// -- collection ----------------------------------------------------------------

/// A collection of set families: either an explicit, deduplicated list or a
/// predicate deciding membership. Membership is total either way.
class Collection {
 public:
  Collection() : rep_(std::vector<SetFamily>{}) {}

  static Collection extensional(std::vector<SetFamily> families);
  static Collection intensional(PredPtr predicate);

  bool is_extensional() const {
    return std::holds_alternative<std::vector<SetFamily>>(rep_);
  }
  /// Valid only when extensional; canonical order, duplicate-free.
  const std::vector<SetFamily>& families() const {
    return std::get<std::vector<SetFamily>>(rep_);
  }
  /// Valid only when intensional.
  const PredPtr& predicate() const { return std::get<PredPtr>(rep_); }

 private:
  std::variant<std::vector<SetFamily>, PredPtr> rep_;
};

// -- kappa ----------------------------------------------------------------------

/// The selection pool 𝒦 for the SS*-style principle.
struct Kappa {
  enum class Mode { Singletons, FiniteNonempty, FiniteWithEmpty, Extensional };
  Mode mode = Mode::Singletons;
  std::vector<Subset> sets;  // Extensional only; canonical order, unique

  static Kappa singletons() { return {}; }
  static Kappa finite_nonempty() { return {Mode::FiniteNonempty, {}}; }
  static Kappa finite_with_empty() { return {Mode::FiniteWithEmpty, {}}; }
  static Kappa extensional(std::vector<Subset> sets);
};

// -- instance --------------------------------------------------------------------

/// Evaluation limits carried by an instance.
struct SearchLimits {
  std::uint64_t max_steps = 50'000'000;
};

inline constexpr int default_max_horizon = 4;
inline constexpr int max_family_members = 16;

/// A fully specified evaluation problem: ground set, the collection 𝒜 the
/// adversary draws rounds from (always extensional), the target collection 𝒷,
/// the selection pool 𝒦 and a finite horizon.
struct Instance {
  GroundSet ground{1};
  std::map<std::string, SetFamily> named_families;
  // Declared programmatically only; file loading leaves this empty.
  std::map<std::string, Collection> named_collections;
  Collection a;
  Collection b;
  Kappa kappa;
  int horizon = 1;
  bool allow_large_horizon = false;
  bool sfin_empty_selection = true;    // Sfin-style subfamily selections admit ∅
  bool indexed_empty_selection = false;  // indexed fin selections admit ∅
  SearchLimits limits;

  const std::vector<SetFamily>& a_families() const { return a.families(); }

  /// Throws FormatError / BudgetExceeded / UnknownReference when an
  /// invariant is violated.
  void validate() const;
};

// -- predicate evaluation ---------------------------------------------------------

bool eval_predicate(const PredicateNode& p, const SetFamily& f, const Instance& ctx);
inline bool eval_predicate(const PredPtr& p, const SetFamily& f, const Instance& ctx) {
  return eval_predicate(*p, f, ctx);
}

bool collection_contains(const Collection& c, const SetFamily& f, const Instance& ctx);

// -- instance documents -------------------------------------------------------------

/// Decodes and validates a UTF-8 JSON instance document.
Instance load_instance(std::string_view bytes);

/// Canonical single-document rendering; loading it back yields an instance
/// with identical behaviour. Families of 𝒜 that carry no declared name are
/// exported as F0, F1, ...
std::string instance_to_json(const Instance& inst);

}  // namespace starsel
