#include "starsel/theorems.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "starsel/parallel.hpp"
#include "starsel/staralg.hpp"

namespace starsel::theorems {

using principles::EvalOptions;
using principles::EvalResult;
using principles::PrincipleId;
using principles::Selection;
using principles::Target;
using principles::Verdict;
using principles::Witness;

// -- identifiers -----------------------------------------------------------------

std::string to_string(TheoremId t) {
  switch (t) {
    case TheoremId::P2_1: return "p2_1";
    case TheoremId::P2_2: return "p2_2";
    case TheoremId::T2_4: return "t2_4";
    case TheoremId::P2_6: return "p2_6";
    case TheoremId::P2_7: return "p2_7";
    case TheoremId::T2_9: return "t2_9";
    case TheoremId::T3_2: return "t3_2";
    case TheoremId::T3_3: return "t3_3";
    case TheoremId::T3_4: return "t3_4";
    case TheoremId::T3_5: return "t3_5";
    case TheoremId::T3_6a: return "t3_6a";
    case TheoremId::T3_6b: return "t3_6b";
    case TheoremId::T3_6c: return "t3_6c";
    case TheoremId::T3_6d: return "t3_6d";
    case TheoremId::T3_7: return "t3_7";
    case TheoremId::T3_8: return "t3_8";
    case TheoremId::T3_9: return "t3_9";
    case TheoremId::T3_10: return "t3_10";
    case TheoremId::DIAG: return "diag";
  }
  return "?";
}

std::vector<TheoremId> all_theorems() {
  return {TheoremId::P2_1, TheoremId::P2_2, TheoremId::T2_4,  TheoremId::P2_6,
          TheoremId::P2_7, TheoremId::T2_9, TheoremId::T3_2,  TheoremId::T3_3,
          TheoremId::T3_4, TheoremId::T3_5, TheoremId::T3_6a, TheoremId::T3_6b,
          TheoremId::T3_6c, TheoremId::T3_6d, TheoremId::T3_7, TheoremId::T3_8,
          TheoremId::T3_9, TheoremId::T3_10, TheoremId::DIAG};
}

std::optional<TheoremId> parse_theorem(std::string_view s) {
  for (TheoremId t : all_theorems())
    if (to_string(t) == s) return t;
  return std::nullopt;
}

std::string valid_theorem_ids() {
  std::string out;
  for (TheoremId t : all_theorems()) {
    if (!out.empty()) out += ", ";
    out += to_string(t);
  }
  return out;
}

std::string describe(TheoremId t) {
  switch (t) {
    case TheoremId::P2_1: return "cs1 implies s1star for covers";
    case TheoremId::P2_2: return "s1star implies cs1 for covers";
    case TheoremId::T2_4: return "cs1 and s1star agree for covers";
    case TheoremId::P2_6: return "csfin implies sfinstar for covers";
    case TheoremId::P2_7: return "sfinstar implies csfin for covers";
    case TheoremId::T2_9: return "csfin and sfinstar agree for covers";
    case TheoremId::T3_2: return "s1star(B) implies cs1(refining hull of B)";
    case TheoremId::T3_3: return "cs1(B) implies s1star(refined hull of B)";
    case TheoremId::T3_4: return "sfinstar(B) implies csfin(refining hull of B)";
    case TheoremId::T3_5: return "csfin(B) implies sfinstar(refined hull of B)";
    case TheoremId::T3_6a: return "ss1star(B) implies scs1(refining hull of B)";
    case TheoremId::T3_6b: return "scs1(B) implies ss1star(refined hull of B)";
    case TheoremId::T3_6c: return "ssfinstar(B) implies scsfin(refining hull of B)";
    case TheoremId::T3_6d: return "scsfin(B) implies ssfinstar(refined hull of B)";
    case TheoremId::T3_7: return "cs1 agrees with ds1 on the complemented instance";
    case TheoremId::T3_8: return "scs1 agrees with sds1 on the complemented instance";
    case TheoremId::T3_9: return "csfin agrees with dsfin on the complemented instance";
    case TheoremId::T3_10:
      return "scsfin agrees with sdsfin on the complemented instance";
    case TheoremId::DIAG:
      return "implication diagram between the classical and star forms for covers";
  }
  return "?";
}

// -- dualize ----------------------------------------------------------------------

Instance dualize(const Instance& inst) {
  Instance out = inst;
  out.a = staralg::complement_collection(inst.a, inst.ground);
  out.b = staralg::complement_collection(inst.b, inst.ground);
  return out;
}

// -- selection mappers ---------------------------------------------------------------

namespace {

using Mapper = std::function<Selection(const Instance&, const Instance&,
                                       const SetFamily&, const SetFamily&,
                                       const Selection&)>;

Selection identity_map(const Instance&, const Instance&, const SetFamily&,
                       const SetFamily&, const Selection& s) {
  return s;
}

// ∅ subfamilies are re-anchored at the first member; for covers the extra
// produced sets only enlarge the union.
Selection nonempty_subfamily_map(const Instance&, const Instance&, const SetFamily&,
                                 const SetFamily& right_family, const Selection& s) {
  if (s.index_mask != 0 || right_family.empty()) return s;
  return Selection::subfamily(1u);
}

Selection singleton_to_point(const Instance&, const Instance&, const SetFamily&,
                             const SetFamily&, const Selection& s) {
  auto elems = s.set.elements();
  return Selection::point(elems.empty() ? 0 : elems.front());
}

Selection point_to_singleton(const Instance&, const Instance&, const SetFamily&,
                             const SetFamily&, const Selection& s) {
  return Selection::kappa_member(Subset::singleton(s.x));
}

Selection kappa_to_point_set(const Instance&, const Instance&, const SetFamily&,
                             const SetFamily&, const Selection& s) {
  return Selection::point_set(s.set);
}

Selection point_set_to_kappa(const Instance&, const Instance&, const SetFamily&,
                             const SetFamily&, const Selection& s) {
  return Selection::kappa_member(s.set);
}

std::uint32_t complement_index(Subset member, GroundSet g,
                               const SetFamily& target_family) {
  const Subset mapped = member.complement(g);
  const auto& ms = target_family.members();
  auto it = std::lower_bound(ms.begin(), ms.end(), mapped);
  if (it == ms.end() || *it != mapped)
    throw InvalidWitness("complemented selection is missing from the dual family");
  return static_cast<std::uint32_t>(it - ms.begin());
}

Selection complement_element(const Instance& left_inst, const Instance&,
                             const SetFamily& left_family,
                             const SetFamily& right_family, const Selection& s) {
  Subset member = left_family.members().at(s.index);
  return Selection::element(
      complement_index(member, left_inst.ground, right_family));
}

Selection complement_subfamily(const Instance& left_inst, const Instance&,
                               const SetFamily& left_family,
                               const SetFamily& right_family, const Selection& s) {
  std::uint32_t mask = 0;
  for (std::uint32_t i = 0; i < left_family.size(); ++i)
    if ((s.index_mask >> i) & 1u)
      mask |= 1u << complement_index(left_family.members()[i], left_inst.ground,
                                     right_family);
  return Selection::subfamily(mask);
}

// Diagram arrows.

Selection member_to_point(const Instance&, const Instance&,
                          const SetFamily& left_family, const SetFamily&,
                          const Selection& s) {
  Subset member = left_family.members().at(s.index);
  auto elems = member.elements();
  return Selection::kappa_member(Subset::singleton(elems.empty() ? 0 : elems.front()));
}

Selection point_to_member(const Instance&, const Instance&, const SetFamily&,
                          const SetFamily& right_family, const Selection& s) {
  const auto& ms = right_family.members();
  for (std::uint32_t i = 0; i < ms.size(); ++i)
    if (ms[i].meets(s.set)) return Selection::element(i);
  return Selection::element(0);
}

Selection subfamily_to_points(const Instance&, const Instance&,
                              const SetFamily& left_family, const SetFamily&,
                              const Selection& s) {
  Subset points;
  for (std::uint32_t i = 0; i < left_family.size(); ++i)
    if ((s.index_mask >> i) & 1u) {
      auto elems = left_family.members()[i].elements();
      if (!elems.empty()) points = points.union_with(Subset::singleton(elems.front()));
    }
  if (points.empty()) points = Subset::singleton(0);
  return Selection::kappa_member(points);
}

Selection points_to_subfamily(const Instance&, const Instance&, const SetFamily&,
                              const SetFamily& right_family, const Selection& s) {
  std::uint32_t mask = 0;
  const auto& ms = right_family.members();
  for (std::uint32_t i = 0; i < ms.size(); ++i)
    if (ms[i].meets(s.set)) mask |= 1u << i;
  return Selection::subfamily(mask);
}

Selection element_to_subfamily(const Instance&, const Instance&, const SetFamily&,
                               const SetFamily&, const Selection& s) {
  return Selection::subfamily(1u << s.index);
}

}  // namespace

// -- direction tables -------------------------------------------------------------------

namespace {

Direction dir(std::string label, PrincipleId left, PrincipleId right, BForm lb,
              BForm rb, Mapper map, bool dual_left = false,
              bool dual_right = false, bool uniform_empty = false) {
  Direction d;
  d.label = std::move(label);
  d.left = left;
  d.right = right;
  d.left_b = lb;
  d.right_b = rb;
  d.dual_left = dual_left;
  d.dual_right = dual_right;
  d.uniform_empty_subfamily = uniform_empty;
  d.map_selection = std::move(map);
  return d;
}

std::vector<Direction> build_directions(TheoremId t) {
  using P = PrincipleId;
  switch (t) {
    case TheoremId::P2_1:
      return {dir("p2_1", P::CS1, P::S1Star, BForm::Cover, BForm::Cover,
                  identity_map)};
    case TheoremId::P2_2:
      return {dir("p2_2", P::S1Star, P::CS1, BForm::Cover, BForm::Cover,
                  identity_map)};
    case TheoremId::T2_4: {
      auto fwd = build_directions(TheoremId::P2_1);
      auto rev = build_directions(TheoremId::P2_2);
      fwd[0].label = "t2_4.fwd";
      rev[0].label = "t2_4.rev";
      fwd.push_back(rev[0]);
      return fwd;
    }
    case TheoremId::P2_6:
      return {dir("p2_6", P::CSfin, P::SfinStar, BForm::Cover, BForm::Cover,
                  identity_map)};
    case TheoremId::P2_7:
      return {dir("p2_7", P::SfinStar, P::CSfin, BForm::Cover, BForm::Cover,
                  nonempty_subfamily_map)};
    case TheoremId::T2_9: {
      auto fwd = build_directions(TheoremId::P2_6);
      auto rev = build_directions(TheoremId::P2_7);
      fwd[0].label = "t2_9.fwd";
      rev[0].label = "t2_9.rev";
      fwd.push_back(rev[0]);
      return fwd;
    }
    case TheoremId::T3_2:
      return {dir("t3_2", P::S1Star, P::CS1, BForm::Same, BForm::HullMinus,
                  identity_map)};
    case TheoremId::T3_3:
      return {dir("t3_3", P::CS1, P::S1Star, BForm::Same, BForm::HullPlus,
                  identity_map)};
    case TheoremId::T3_4:
      // One ∅-subfamily convention on both sides; see the header note.
      return {dir("t3_4", P::SfinStar, P::CSfin, BForm::Same, BForm::HullMinus,
                  identity_map, false, false, true)};
    case TheoremId::T3_5:
      return {dir("t3_5", P::CSfin, P::SfinStar, BForm::Same, BForm::HullPlus,
                  identity_map, false, false, true)};
    case TheoremId::T3_6a:
      return {dir("t3_6a", P::SS1Star, P::SCS1, BForm::Same, BForm::HullMinus,
                  singleton_to_point)};
    case TheoremId::T3_6b:
      return {dir("t3_6b", P::SCS1, P::SS1Star, BForm::Same, BForm::HullPlus,
                  point_to_singleton)};
    case TheoremId::T3_6c:
      return {dir("t3_6c", P::SSfinStar, P::SCSfin, BForm::Same, BForm::HullMinus,
                  kappa_to_point_set)};
    case TheoremId::T3_6d:
      return {dir("t3_6d", P::SCSfin, P::SSfinStar, BForm::Same, BForm::HullPlus,
                  point_set_to_kappa)};
    case TheoremId::T3_7:
      return {dir("t3_7.fwd", P::CS1, P::DS1, BForm::Same, BForm::Same,
                  complement_element, false, true),
              dir("t3_7.rev", P::DS1, P::CS1, BForm::Same, BForm::Same,
                  complement_element, true, false)};
    case TheoremId::T3_8:
      return {dir("t3_8.fwd", P::SCS1, P::SDS1, BForm::Same, BForm::Same,
                  identity_map, false, true),
              dir("t3_8.rev", P::SDS1, P::SCS1, BForm::Same, BForm::Same,
                  identity_map, true, false)};
    case TheoremId::T3_9:
      return {dir("t3_9.fwd", P::CSfin, P::DSfin, BForm::Same, BForm::Same,
                  complement_subfamily, false, true),
              dir("t3_9.rev", P::DSfin, P::CSfin, BForm::Same, BForm::Same,
                  complement_subfamily, true, false)};
    case TheoremId::T3_10:
      return {dir("t3_10.fwd", P::SCSfin, P::SDSfin, BForm::Same, BForm::Same,
                  identity_map, false, true),
              dir("t3_10.rev", P::SDSfin, P::SCSfin, BForm::Same, BForm::Same,
                  identity_map, true, false)};
    case TheoremId::DIAG:
      return {
          dir("diag.s1->ss1star", P::S1, P::SS1Star, BForm::Cover, BForm::Cover,
              member_to_point),
          dir("diag.ss1star->s1star", P::SS1Star, P::S1Star, BForm::Cover,
              BForm::Cover, point_to_member),
          dir("diag.sfin->ssfinstar", P::Sfin, P::SSfinStar, BForm::Cover,
              BForm::Cover, subfamily_to_points),
          dir("diag.ssfinstar->sfinstar", P::SSfinStar, P::SfinStar, BForm::Cover,
              BForm::Cover, points_to_subfamily),
          dir("diag.s1->sfin", P::S1, P::Sfin, BForm::Cover, BForm::Cover,
              element_to_subfamily),
          dir("diag.ss1star->ssfinstar", P::SS1Star, P::SSfinStar, BForm::Cover,
              BForm::Cover, identity_map),
          dir("diag.s1star->sfinstar", P::S1Star, P::SfinStar, BForm::Cover,
              BForm::Cover, element_to_subfamily),
      };
  }
  return {};
}

}  // namespace

const std::vector<Direction>& directions_of(TheoremId t) {
  static std::mutex mu;
  static std::map<TheoremId, std::vector<Direction>> table;
  std::scoped_lock lock(mu);
  auto it = table.find(t);
  if (it == table.end()) it = table.emplace(t, build_directions(t)).first;
  return it->second;
}

// -- witness transport --------------------------------------------------------------------

namespace {

Target target_for(BForm form, const Instance& side_inst) {
  switch (form) {
    case BForm::Same:
      return Target::instance_b();
    case BForm::Cover:
      return Target::cover();
    case BForm::HullMinus:
      return Target::hull_minus(side_inst.b);
    case BForm::HullPlus:
      return Target::hull_plus(side_inst.b);
  }
  return Target::instance_b();
}

int dual_family_index(const Instance& from, const Instance& to, int index) {
  const SetFamily mapped =
      from.a_families().at(index).complemented(from.ground);
  const auto& fams = to.a_families();
  auto it = std::lower_bound(fams.begin(), fams.end(), mapped);
  if (it == fams.end() || *it != mapped)
    throw InvalidWitness("complemented family is missing from the dual instance");
  return static_cast<int>(it - fams.begin());
}

Witness transport(const Direction& d, const Instance& left_inst,
                  const Instance& right_inst, const Witness& w) {
  Witness out;
  out.principle = d.right;
  std::vector<std::pair<SetFamily, Selection>> rounds;
  for (const auto& r : w.rounds) {
    const SetFamily& left_family = left_inst.a_families().at(r.family_index);
    int right_index = r.family_index;
    if (d.dual_left != d.dual_right)
      right_index = dual_family_index(left_inst, right_inst, r.family_index);
    const SetFamily& right_family = right_inst.a_families().at(right_index);
    Selection mapped =
        d.map_selection(left_inst, right_inst, left_family, right_family,
                        r.selection);
    out.rounds.push_back({r.round, right_index, mapped});
    rounds.emplace_back(right_family, mapped);
  }
  out.produced = principles::produced_family(d.right, right_inst.ground, rounds);
  return out;
}

}  // namespace

Witness map_witness(TheoremId t, const Instance& inst, const Witness& w) {
  const auto& dirs = directions_of(t);
  const Direction* d = nullptr;
  for (const auto& cand : dirs)
    if (cand.left == w.principle) {
      d = &cand;
      break;
    }
  if (d == nullptr)
    throw InvalidWitness("witness principle " + principles::to_string(w.principle) +
                         " is not the left side of theorem " + to_string(t));

  Instance left_inst = d->dual_left ? dualize(inst) : inst;
  Instance right_inst = d->dual_right ? dualize(inst) : inst;

  bool input_ok = false;
  try {
    input_ok =
        principles::replay_witness(w, left_inst, target_for(d->left_b, left_inst));
  } catch (const Error&) {
  }
  if (!input_ok)
    throw InvalidWitness("input witness does not replay on the theorem's left side");

  Witness mapped = transport(*d, left_inst, right_inst, w);
  bool mapped_ok = false;
  try {
    mapped_ok = principles::replay_witness(mapped, right_inst,
                                           target_for(d->right_b, right_inst));
  } catch (const Error&) {
  }
  if (!mapped_ok)
    throw MappedWitnessRejected("mapped witness rejected for direction " + d->label);
  return mapped;
}

// -- checking harness ---------------------------------------------------------------------

namespace {

struct PerInstance {
  bool skipped = false;
  std::vector<Violation> violations;
  std::uint64_t roundtrips = 0;
  std::uint64_t rejected = 0;
};

PerInstance check_instance(TheoremId t, const Instance& inst) {
  PerInstance out;
  const auto& dirs = directions_of(t);
  try {
    for (const auto& d : dirs) {
      Instance left_inst = d.dual_left ? dualize(inst) : inst;
      Instance right_inst = d.dual_right ? dualize(inst) : inst;
      EvalOptions opts = EvalOptions::from(inst);
      if (d.uniform_empty_subfamily) opts.indexed_empty = true;
      Target left_target = target_for(d.left_b, left_inst);
      Target right_target = target_for(d.right_b, right_inst);

      // Hull targets over an intensional 𝒷 are only decidable on tiny
      // ground sets; treat larger instances as out of budget.
      const bool hull_right =
          d.right_b == BForm::HullMinus || d.right_b == BForm::HullPlus;
      if (hull_right && !inst.b.is_extensional() &&
          inst.ground.size > max_enumerable_ground)
        throw BudgetExceeded("hull over an intensional collection");

      EvalResult lres = principles::evaluate(d.left, left_inst, left_target, opts);
      EvalResult rres =
          principles::evaluate(d.right, right_inst, right_target, opts);
      if (lres.verdict == Verdict::Holds && rres.verdict == Verdict::Fails) {
        out.violations.push_back(
            {d.label, instance_to_json(inst), "left holds but right fails"});
        continue;
      }
      if (lres.verdict == Verdict::Holds && lres.witness) {
        try {
          Witness mapped = transport(d, left_inst, right_inst, *lres.witness);
          if (principles::replay_witness(mapped, right_inst, right_target)) {
            ++out.roundtrips;
          } else {
            ++out.rejected;
            out.violations.push_back(
                {d.label, instance_to_json(inst), "mapped witness rejected"});
          }
        } catch (const Error& e) {
          ++out.rejected;
          out.violations.push_back({d.label, instance_to_json(inst),
                                    std::string("mapped witness rejected: ") +
                                        e.what()});
        }
      }
    }
  } catch (const BudgetExceeded&) {
    out.skipped = true;
    out.violations.clear();
  }
  return out;
}

}  // namespace

TheoremReport check_theorem(TheoremId t, std::span<const Instance> corpus,
                            int workers) {
  TheoremReport report;
  report.theorem = t;
  std::vector<PerInstance> results(corpus.size());
  parallel_for_index(
      corpus.size(), [&](std::size_t i) { results[i] = check_instance(t, corpus[i]); },
      workers);
  for (const PerInstance& r : results) {
    if (r.skipped) {
      ++report.skipped_budget;
      continue;
    }
    ++report.checked;
    report.witness_roundtrips += r.roundtrips;
    report.mapped_witness_rejected += r.rejected;
    for (const auto& v : r.violations) report.violations.push_back(v);
  }
  return report;
}

}  // namespace starsel::theorems
