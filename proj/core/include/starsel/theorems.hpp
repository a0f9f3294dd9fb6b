#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "starsel/instance.hpp"
#include "starsel/principles.hpp"

namespace starsel::theorems {

// -- theorem identifiers ------------------------------------------------------------

enum class TheoremId {
  P2_1,   // cs1 ⇒ s1star, cover target
  P2_2,   // s1star ⇒ cs1, cover target
  T2_4,   // cs1 ⟺ s1star, cover target
  P2_6,   // csfin ⇒ sfinstar, cover target
  P2_7,   // sfinstar ⇒ csfin, cover target
  T2_9,   // csfin ⟺ sfinstar, cover target
  T3_2,   // s1star(𝒷) ⇒ cs1(ℛ⁻𝒷)
  T3_3,   // cs1(𝒷) ⇒ s1star(ℛ⁺𝒷)
  T3_4,   // sfinstar(𝒷) ⇒ csfin(ℛ⁻𝒷)
  T3_5,   // csfin(𝒷) ⇒ sfinstar(ℛ⁺𝒷)
  T3_6a,  // ss1star(𝒷) ⇒ scs1(ℛ⁻𝒷)
  T3_6b,  // scs1(𝒷) ⇒ ss1star(ℛ⁺𝒷)
  T3_6c,  // ssfinstar(𝒷) ⇒ scsfin(ℛ⁻𝒷)
  T3_6d,  // scsfin(𝒷) ⇒ ssfinstar(ℛ⁺𝒷)
  T3_7,   // cs1 ⟺ ds1 on the complemented instance
  T3_8,   // scs1 ⟺ sds1 on the complemented instance
  T3_9,   // csfin ⟺ dsfin on the complemented instance
  T3_10,  // scsfin ⟺ sdsfin on the complemented instance
  DIAG,   // the implication diagram between the classical and star forms
};

std::string to_string(TheoremId t);
std::optional<TheoremId> parse_theorem(std::string_view s);
std::string valid_theorem_ids();
std::vector<TheoremId> all_theorems();
std::string describe(TheoremId t);

// -- directions ----------------------------------------------------------------------

enum class BForm { Same, Cover, HullMinus, HullPlus };

/// One proven implication: left holds on an instance ⇒ right holds on the
/// (possibly complemented) instance against the transformed target.
struct Direction {
  std::string label;
  principles::PrincipleId left;
  principles::PrincipleId right;
  BForm left_b = BForm::Same;
  BForm right_b = BForm::Same;
  bool dual_left = false;   // evaluate left on the complemented instance
  bool dual_right = false;  // evaluate right on the complemented instance
  // Align the ∅-subfamily convention across both sides (fin hull theorems).
  bool uniform_empty_subfamily = false;
  // Per-round selection transport from a left witness to a right witness.
  std::function<principles::Selection(
      const Instance& left_inst, const Instance& right_inst,
      const SetFamily& left_family, const SetFamily& right_family,
      const principles::Selection&)>
      map_selection;
};

const std::vector<Direction>& directions_of(TheoremId t);

// -- operations -----------------------------------------------------------------------

/// Complements 𝒜 member-wise and wraps 𝒷 in its complement view. Ground
/// set, 𝒦 and horizon are unchanged. Involution up to membership behaviour.
Instance dualize(const Instance& inst);

/// Transports a witness for the theorem's left principle to one for its
/// right principle (forward direction of equivalences); the result is
/// replay-checked and MappedWitnessRejected is thrown if it fails.
principles::Witness map_witness(TheoremId t, const Instance& inst,
                                const principles::Witness& w);

struct Violation {
  std::string direction;
  std::string instance_json;
  std::string details;
};

struct TheoremReport {
  TheoremId theorem{};
  std::uint64_t checked = 0;
  std::vector<Violation> violations;
  std::uint64_t witness_roundtrips = 0;
  std::uint64_t mapped_witness_rejected = 0;
  std::uint64_t skipped_budget = 0;

  bool pass() const { return violations.empty() && mapped_witness_rejected == 0; }
};

/// Evaluates every direction of the theorem on every corpus instance,
/// recording violations and round-tripping every available witness.
/// Instances whose evaluation exceeds its budget are counted, not dropped.
/// `workers` ≤ 1 runs sequentially; the report does not depend on scheduling.
TheoremReport check_theorem(TheoremId t, std::span<const Instance> corpus,
                            int workers = 1);

}  // namespace starsel::theorems
