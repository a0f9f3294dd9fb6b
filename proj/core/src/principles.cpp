#include "starsel/principles.hpp"

#include <algorithm>

#include "starsel/staralg.hpp"

namespace starsel::principles {

// -- identifiers ---------------------------------------------------------------

std::string to_string(PrincipleId p) {
  switch (p) {
    case PrincipleId::S1: return "s1";
    case PrincipleId::Sfin: return "sfin";
    case PrincipleId::S1Star: return "s1star";
    case PrincipleId::SfinStar: return "sfinstar";
    case PrincipleId::SSStarK: return "ssstark";
    case PrincipleId::SS1Star: return "ss1star";
    case PrincipleId::SSfinStar: return "ssfinstar";
    case PrincipleId::CS1: return "cs1";
    case PrincipleId::CSfin: return "csfin";
    case PrincipleId::DS1: return "ds1";
    case PrincipleId::DSfin: return "dsfin";
    case PrincipleId::SCS1: return "scs1";
    case PrincipleId::SCSfin: return "scsfin";
    case PrincipleId::SDS1: return "sds1";
    case PrincipleId::SDSfin: return "sdsfin";
  }
  return "?";
}

std::optional<PrincipleId> parse_principle(std::string_view s) {
  for (PrincipleId p : all_principles)
    if (to_string(p) == s) return p;
  return std::nullopt;
}

std::string valid_principle_ids() {
  std::string out;
  for (PrincipleId p : all_principles) {
    if (!out.empty()) out += ", ";
    out += to_string(p);
  }
  return out;
}

SelectorKind selector_kind(PrincipleId p) {
  switch (p) {
    case PrincipleId::S1:
    case PrincipleId::S1Star:
    case PrincipleId::CS1:
    case PrincipleId::DS1:
      return SelectorKind::Element;
    case PrincipleId::Sfin:
    case PrincipleId::SfinStar:
    case PrincipleId::CSfin:
    case PrincipleId::DSfin:
      return SelectorKind::Subfamily;
    case PrincipleId::SCS1:
    case PrincipleId::SDS1:
      return SelectorKind::Point;
    case PrincipleId::SCSfin:
    case PrincipleId::SDSfin:
      return SelectorKind::PointSet;
    case PrincipleId::SSStarK:
    case PrincipleId::SS1Star:
    case PrincipleId::SSfinStar:
      return SelectorKind::KappaMember;
  }
  return SelectorKind::Element;
}

// -- selector spaces ------------------------------------------------------------

namespace {

bool empty_subfamily_allowed(PrincipleId p, const EvalOptions& opts) {
  switch (p) {
    case PrincipleId::Sfin:
    case PrincipleId::SfinStar:
      return opts.sfin_empty;
    default:
      // indexed selections enumerate k ≥ 1 choices unless flagged
      return opts.indexed_empty;
  }
}

std::vector<Selection> kappa_space(const Kappa& kappa, GroundSet g) {
  std::vector<Selection> out;
  const std::uint32_t full = g.full_mask();
  switch (kappa.mode) {
    case Kappa::Mode::Singletons:
      for (int x = 0; x < g.size; ++x)
        out.push_back(Selection::kappa_member(Subset::singleton(x)));
      break;
    case Kappa::Mode::FiniteNonempty:
      for (std::uint32_t m = 1; m <= full; ++m)
        out.push_back(Selection::kappa_member(Subset(m)));
      break;
    case Kappa::Mode::FiniteWithEmpty:
      for (std::uint32_t m = 0; m <= full; ++m)
        out.push_back(Selection::kappa_member(Subset(m)));
      break;
    case Kappa::Mode::Extensional:
      for (Subset s : kappa.sets) out.push_back(Selection::kappa_member(s));
      break;
  }
  return out;
}

}  // namespace

std::vector<Selection> selector_space(PrincipleId p, const SetFamily& u,
                                      const Instance& inst, const EvalOptions& opts) {
  std::vector<Selection> out;
  switch (selector_kind(p)) {
    case SelectorKind::Element:
      for (std::uint32_t i = 0; i < u.size(); ++i)
        out.push_back(Selection::element(i));
      break;
    case SelectorKind::Subfamily: {
      if (u.size() > static_cast<std::size_t>(max_family_members))
        throw BudgetExceeded("subfamily selector over " +
                             std::to_string(u.size()) + " members");
      const std::uint32_t count = 1u << u.size();
      const std::uint32_t first = empty_subfamily_allowed(p, opts) ? 0 : 1;
      for (std::uint32_t m = first; m < count; ++m)
        out.push_back(Selection::subfamily(m));
      break;
    }
    case SelectorKind::Point:
      for (int x = 0; x < inst.ground.size; ++x) out.push_back(Selection::point(x));
      break;
    case SelectorKind::PointSet: {
      const std::uint32_t full = inst.ground.full_mask();
      const std::uint32_t first = empty_subfamily_allowed(p, opts) ? 0 : 1;
      for (std::uint32_t m = first; m <= full; ++m)
        out.push_back(Selection::point_set(Subset(m)));
      break;
    }
    case SelectorKind::KappaMember: {
      Kappa k = inst.kappa;
      if (p == PrincipleId::SS1Star) k = Kappa::singletons();
      if (p == PrincipleId::SSfinStar) k = Kappa::finite_nonempty();
      out = kappa_space(k, inst.ground);
      break;
    }
  }
  return out;
}

std::vector<Selection> selector_space(PrincipleId p, const SetFamily& u,
                                      const Instance& inst) {
  return selector_space(p, u, inst, EvalOptions::from(inst));
}

// -- produced families -----------------------------------------------------------

namespace {

/// One round's contribution to the produced family.
SetFamily round_fragment(PrincipleId p, GroundSet g, const SetFamily& u,
                         const Selection& sel) {
  if (sel.kind != selector_kind(p))
    throw TypeMismatch("selection payload does not match principle " + to_string(p));

  auto member_at = [&](std::uint32_t i) -> Subset {
    if (i >= u.size())
      throw TypeMismatch("selection index out of range for round family");
    return u.members()[i];
  };
  auto mask_members = [&](std::uint32_t mask) {
    std::vector<Subset> out;
    for (std::uint32_t i = 0; i < u.size(); ++i)
      if ((mask >> i) & 1u) out.push_back(u.members()[i]);
    if (mask >> u.size())
      throw TypeMismatch("subfamily mask out of range for round family");
    return out;
  };

  SetFamily frag;
  switch (p) {
    case PrincipleId::S1:
      frag.insert(member_at(sel.index));
      break;
    case PrincipleId::Sfin:
      for (Subset s : mask_members(sel.index_mask)) frag.insert(s);
      break;
    case PrincipleId::S1Star:
      frag.insert(staralg::star(member_at(sel.index), u));
      break;
    case PrincipleId::SfinStar:
      for (Subset s : mask_members(sel.index_mask))
        frag.insert(staralg::star(s, u));
      break;
    case PrincipleId::SSStarK:
    case PrincipleId::SS1Star:
    case PrincipleId::SSfinStar:
      frag.insert(staralg::star(sel.set, u));
      break;
    case PrincipleId::CS1:
      frag = staralg::star_unions(u, member_at(sel.index));
      break;
    case PrincipleId::CSfin:
      for (Subset s : mask_members(sel.index_mask))
        frag.insert_all(staralg::star_unions(u, s));
      break;
    case PrincipleId::DS1:
      frag = staralg::dual_intersections(u, member_at(sel.index), g);
      break;
    case PrincipleId::DSfin:
      for (Subset s : mask_members(sel.index_mask))
        frag.insert_all(staralg::dual_intersections(u, s, g));
      break;
    case PrincipleId::SCS1:
      frag = staralg::star_unions_at(u, sel.x);
      break;
    case PrincipleId::SCSfin:
      for (int x : sel.set.elements())
        frag.insert_all(staralg::star_unions_at(u, x));
      break;
    case PrincipleId::SDS1:
      frag = staralg::dual_intersections_at(u, sel.x, g);
      break;
    case PrincipleId::SDSfin:
      for (int x : sel.set.elements())
        frag.insert_all(staralg::dual_intersections_at(u, x, g));
      break;
  }
  return frag;
}

}  // namespace

SetFamily produced_family(PrincipleId p, GroundSet g,
                          std::span<const std::pair<SetFamily, Selection>> rounds) {
  SetFamily out;
  for (const auto& [family, sel] : rounds)
    out.insert_all(round_fragment(p, g, family, sel));
  return out;
}

// -- targets -----------------------------------------------------------------------

bool Target::test(const SetFamily& produced, const Instance& ctx) const {
  switch (kind) {
    case Kind::InstanceB:
      return collection_contains(ctx.b, produced, ctx);
    case Kind::Collection:
      return collection_contains(*collection, produced, ctx);
    case Kind::Cover:
      return produced.covers(ctx.ground);
    case Kind::HullMinus:
      return staralg::hull_membership(staralg::HullKind::Minus, *collection,
                                      produced, ctx);
    case Kind::HullPlus:
      return staralg::hull_membership(staralg::HullKind::Plus, *collection,
                                      produced, ctx);
  }
  return false;
}

// -- evaluation ----------------------------------------------------------------------

namespace {

struct RoundOpts {
  std::vector<Selection> sels;
  std::vector<SetFamily> frags;
};

struct Searcher {
  PrincipleId p;
  const Instance& inst;
  const Target& target;
  const EvalOptions& opts;
  std::vector<std::optional<RoundOpts>> cache;  // per 𝒜 index
  std::uint64_t steps = 0;
  bool empty_selector_seen = false;

  explicit Searcher(PrincipleId p_, const Instance& inst_, const Target& target_,
                    const EvalOptions& opts_)
      : p(p_), inst(inst_), target(target_), opts(opts_),
        cache(inst_.a_families().size()) {}

  const RoundOpts& options_for(int family_index) {
    auto& slot = cache[family_index];
    if (!slot) {
      RoundOpts ro;
      const SetFamily& u = inst.a_families()[family_index];
      ro.sels = selector_space(p, u, inst, opts);
      ro.frags.reserve(ro.sels.size());
      for (const Selection& s : ro.sels)
        ro.frags.push_back(round_fragment(p, inst.ground, u, s));
      slot = std::move(ro);
    }
    return *slot;
  }

  void tick() {
    if (++steps > opts.max_steps)
      throw BudgetExceeded("evaluation exceeded " + std::to_string(opts.max_steps) +
                           " search steps");
  }

  // First valid selection path for the given round sequence, in canonical
  // order; fills `produced_out` on success.
  bool search(std::span<const int> seq, int round, const SetFamily& produced,
              std::vector<int>& path, SetFamily& produced_out) {
    tick();
    if (round == static_cast<int>(seq.size())) {
      if (target.test(produced, inst)) {
        produced_out = produced;
        return true;
      }
      return false;
    }
    const RoundOpts& ro = options_for(seq[round]);
    if (ro.sels.empty()) empty_selector_seen = true;
    for (std::size_t k = 0; k < ro.sels.size(); ++k) {
      SetFamily next = produced;
      next.insert_all(ro.frags[k]);
      path[round] = static_cast<int>(k);
      if (search(seq, round + 1, next, path, produced_out)) return true;
    }
    return false;
  }

  std::optional<Witness> witness_for(std::span<const int> seq) {
    std::vector<int> path(seq.size(), 0);
    SetFamily produced;
    if (!search(seq, 0, SetFamily{}, path, produced)) return std::nullopt;
    Witness w;
    w.principle = p;
    w.produced = produced;
    for (std::size_t r = 0; r < seq.size(); ++r) {
      const RoundOpts& ro = options_for(seq[r]);
      w.rounds.push_back({static_cast<int>(r), seq[r], ro.sels[path[r]]});
    }
    return w;
  }
};

}  // namespace

EvalResult evaluate(PrincipleId p, const Instance& inst, const Target& target,
                    const EvalOptions& opts) {
  inst.validate();
  const int h = inst.horizon;
  const int a_count = static_cast<int>(inst.a_families().size());
  Searcher searcher(p, inst, target, opts);
  EvalResult result;

  // Selector spaces depend only on the round's family and the produced
  // family is a union over rounds, so a sequence stands or falls with its
  // multiset; nondecreasing index tuples in lexicographic order visit each
  // multiset exactly once, at its lexicographically least representative.
  std::vector<int> seq(h, 0);
  bool first = true;
  for (;;) {
    auto witness = searcher.witness_for(seq);
    ++result.sequences_checked;
    if (!witness) {
      result.verdict = Verdict::Fails;
      result.counterexample = Counterexample{seq};
      result.witness.reset();
      break;
    }
    if (first) {
      result.witness = std::move(*witness);
      result.verdict = Verdict::Holds;
      first = false;
    }
    int i = h - 1;
    while (i >= 0 && seq[i] == a_count - 1) --i;
    if (i < 0) break;
    ++seq[i];
    for (int j = i + 1; j < h; ++j) seq[j] = seq[i];
  }
  result.empty_selector_seen = searcher.empty_selector_seen;
  result.steps = searcher.steps;
  return result;
}

EvalResult evaluate(PrincipleId p, const Instance& inst) {
  return evaluate(p, inst, Target::instance_b(), EvalOptions::from(inst));
}

bool replay_witness(const Witness& w, const Instance& inst, const Target& target) {
  std::vector<std::pair<SetFamily, Selection>> rounds;
  rounds.reserve(w.rounds.size());
  for (const WitnessRound& r : w.rounds) {
    if (r.family_index < 0 ||
        r.family_index >= static_cast<int>(inst.a_families().size()))
      return false;
    rounds.emplace_back(inst.a_families()[r.family_index], r.selection);
  }
  SetFamily produced = produced_family(w.principle, inst.ground, rounds);
  return produced == w.produced && target.test(produced, inst);
}

std::optional<Witness> witness_for_sequence(PrincipleId p, const Instance& inst,
                                            std::span<const int> family_indices,
                                            const Target& target,
                                            const EvalOptions& opts) {
  Searcher searcher(p, inst, target, opts);
  std::vector<int> seq(family_indices.begin(), family_indices.end());
  return searcher.witness_for(seq);
}

}  // namespace starsel::principles
