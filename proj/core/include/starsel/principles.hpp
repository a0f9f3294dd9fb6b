#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "starsel/instance.hpp"
#include "starsel/types.hpp"

namespace starsel::principles {

// -- principle identifiers ------------------------------------------------------

enum class PrincipleId {
  S1,        // pick one member per round; target sees {Bₙ}
  Sfin,      // pick a finite subfamily per round; target sees ⋃𝒷ₙ
  S1Star,    // one member; target sees {St(Bₙ,𝒰ₙ)}
  SfinStar,  // subfamily; target sees all St(B,𝒰ₙ)
  SSStarK,   // one 𝒦-member; target sees {St(Kₙ,𝒰ₙ)}
  SS1Star,   // SSStarK with 𝒦 = singletons
  SSfinStar, // SSStarK with 𝒦 = finite nonempty sets
  CS1,       // one member; target sees the star-union families
  CSfin,     // indexed member selection; star-union families per index
  DS1,       // one member; dual-intersection families
  DSfin,     // indexed member selection; dual per index
  SCS1,      // one point; star-union families anchored at the point
  SCSfin,    // point set; per-point star-union families
  SDS1,      // one point; dual
  SDSfin,    // point set; dual
};

inline constexpr PrincipleId all_principles[] = {
    PrincipleId::S1,     PrincipleId::Sfin,    PrincipleId::S1Star,
    PrincipleId::SfinStar, PrincipleId::SSStarK, PrincipleId::SS1Star,
    PrincipleId::SSfinStar, PrincipleId::CS1,   PrincipleId::CSfin,
    PrincipleId::DS1,    PrincipleId::DSfin,   PrincipleId::SCS1,
    PrincipleId::SCSfin, PrincipleId::SDS1,    PrincipleId::SDSfin,
};

std::string to_string(PrincipleId p);
std::optional<PrincipleId> parse_principle(std::string_view s);
std::string valid_principle_ids();

// -- selections -------------------------------------------------------------------

enum class SelectorKind { Element, Subfamily, Point, PointSet, KappaMember };

SelectorKind selector_kind(PrincipleId p);

/// One round's choice. The payload in use matches the principle's selector
/// kind; subfamilies are bit masks over the round family's member indices.
struct Selection {
  SelectorKind kind = SelectorKind::Element;
  std::uint32_t index = 0;       // Element
  std::uint32_t index_mask = 0;  // Subfamily
  int x = 0;                     // Point
  Subset set;                    // PointSet / KappaMember

  static Selection element(std::uint32_t i) { return {SelectorKind::Element, i, 0, 0, {}}; }
  static Selection subfamily(std::uint32_t mask) {
    return {SelectorKind::Subfamily, 0, mask, 0, {}};
  }
  static Selection point(int x) { return {SelectorKind::Point, 0, 0, x, {}}; }
  static Selection point_set(Subset s) { return {SelectorKind::PointSet, 0, 0, 0, s}; }
  static Selection kappa_member(Subset s) {
    return {SelectorKind::KappaMember, 0, 0, 0, s};
  }

  bool operator==(const Selection&) const = default;
};

// -- evaluation options and targets --------------------------------------------------

struct EvalOptions {
  bool sfin_empty = true;
  bool indexed_empty = false;
  std::uint64_t max_steps = 50'000'000;

  static EvalOptions from(const Instance& inst) {
    return {inst.sfin_empty_selection, inst.indexed_empty_selection,
            inst.limits.max_steps};
  }
};

/// What the produced family is tested against. Defaults to the instance's
/// own 𝒷; the theorem suite swaps in cover or refinement-hull targets.
struct Target {
  enum class Kind { InstanceB, Collection, Cover, HullMinus, HullPlus };
  Kind kind = Kind::InstanceB;
  const Collection* collection = nullptr;  // Collection / Hull*

  static Target instance_b() { return {}; }
  static Target of_collection(const Collection& c) {
    return {Kind::Collection, &c};
  }
  static Target cover() { return {Kind::Cover, nullptr}; }
  static Target hull_minus(const Collection& c) { return {Kind::HullMinus, &c}; }
  static Target hull_plus(const Collection& c) { return {Kind::HullPlus, &c}; }

  bool test(const SetFamily& produced, const Instance& ctx) const;
};

// -- evaluation -------------------------------------------------------------------

/// The canonical, deterministic enumeration of a round's choices.
std::vector<Selection> selector_space(PrincipleId p, const SetFamily& u,
                                      const Instance& inst, const EvalOptions& opts);
std::vector<Selection> selector_space(PrincipleId p, const SetFamily& u,
                                      const Instance& inst);

/// The family a full round sequence produces for the target test.
/// Throws TypeMismatch when a selection's payload kind does not match p.
SetFamily produced_family(PrincipleId p, GroundSet g,
                          std::span<const std::pair<SetFamily, Selection>> rounds);

struct WitnessRound {
  int round = 0;
  int family_index = 0;  // into the instance's 𝒜 list
  Selection selection;
  bool operator==(const WitnessRound&) const = default;
};

struct Witness {
  PrincipleId principle{};
  std::vector<WitnessRound> rounds;
  SetFamily produced;
};

struct Counterexample {
  std::vector<int> family_indices;
};

enum class Verdict { Holds, Fails };

struct EvalResult {
  Verdict verdict = Verdict::Fails;
  std::optional<Witness> witness;            // verdict == Holds
  std::optional<Counterexample> counterexample;  // verdict == Fails
  bool empty_selector_seen = false;  // some round offered no selection
  std::uint64_t sequences_checked = 0;
  std::uint64_t steps = 0;
};

/// Exhaustive bounded-horizon evaluation: holds iff every length-H sequence
/// over 𝒜 admits a selection sequence whose produced family passes the
/// target. Deterministic; the stored witness is for the lexicographically
/// first sequence, the counterexample is the lexicographically first failing
/// sequence. Throws BudgetExceeded when the step limit is hit.
EvalResult evaluate(PrincipleId p, const Instance& inst);
EvalResult evaluate(PrincipleId p, const Instance& inst, const Target& target,
                    const EvalOptions& opts);

/// Recomputes a witness's produced family and target verdict from its
/// selections.
bool replay_witness(const Witness& w, const Instance& inst, const Target& target);

/// On-demand witness for one particular sequence of a holding instance.
std::optional<Witness> witness_for_sequence(PrincipleId p, const Instance& inst,
                                            std::span<const int> family_indices,
                                            const Target& target,
                                            const EvalOptions& opts);

}  // namespace starsel::principles
