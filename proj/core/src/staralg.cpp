#include "starsel/staralg.hpp"

#include <algorithm>
#include <mutex>

namespace starsel::staralg {

Subset star(Subset a, const SetFamily& u) {
  Subset out;
  for (Subset member : u.members())
    if (member.meets(a)) out = out.union_with(member);
  return out;
}

SetFamily complement_family(const SetFamily& u, GroundSet g) {
  return u.complemented(g);
}

Collection complement_collection(const Collection& c, GroundSet g) {
  if (c.is_extensional()) {
    std::vector<SetFamily> out;
    out.reserve(c.families().size());
    for (const auto& fam : c.families()) out.push_back(fam.complemented(g));
    return Collection::extensional(std::move(out));
  }
  return Collection::intensional(pred::complement_view(c.predicate()));
}

bool refines(const SetFamily& a, const SetFamily& b) {
  return refines_into(a, b);
}

namespace {

const std::vector<SetFamily>& cached_all_families(GroundSet g) {
  if (g.size > max_enumerable_ground)
    throw BudgetExceeded("cannot enumerate all families over a ground set of size " +
                         std::to_string(g.size));
  static std::mutex mu;
  static std::vector<SetFamily> tables[max_enumerable_ground + 1];
  std::scoped_lock lock(mu);
  std::vector<SetFamily>& table = tables[g.size];
  if (table.empty()) {
    const std::uint32_t subsets = 1u << g.size;
    const std::uint64_t count = 1ull << subsets;
    table.reserve(count);
    for (std::uint64_t mask = 0; mask < count; ++mask) {
      std::vector<Subset> members;
      for (std::uint32_t s = 0; s < subsets; ++s)
        if ((mask >> s) & 1ull) members.push_back(Subset(s));
      table.emplace_back(std::move(members));
    }
    std::sort(table.begin(), table.end());
  }
  return table;
}

}  // namespace

std::vector<SetFamily> all_families(GroundSet g) { return cached_all_families(g); }

std::vector<SetFamily> expand_collection(const Collection& c, const Instance& ctx) {
  if (c.is_extensional()) return c.families();
  std::vector<SetFamily> out;
  for (const auto& fam : cached_all_families(ctx.ground))
    if (eval_predicate(c.predicate(), fam, ctx)) out.push_back(fam);
  return out;
}

bool hull_membership(HullKind kind, const Collection& b, const SetFamily& r,
                     const Instance& ctx) {
  auto matches = [&](const SetFamily& candidate) {
    return kind == HullKind::Minus ? refines(r, candidate) : refines(candidate, r);
  };
  if (b.is_extensional()) {
    return std::any_of(b.families().begin(), b.families().end(), matches);
  }
  // The ∃ℬ sweep over an intensional collection enumerates every family
  // over X; all_families enforces the ground-size bound.
  for (const auto& fam : cached_all_families(ctx.ground))
    if (eval_predicate(b.predicate(), fam, ctx) && matches(fam)) return true;
  return false;
}

namespace {

void require_enumerable_subfamilies(std::size_t members) {
  if (members > static_cast<std::size_t>(max_family_members))
    throw BudgetExceeded("subfamily sweep over " + std::to_string(members) +
                         " members exceeds the " +
                         std::to_string(max_family_members) + "-member budget");
}

/// Unions (or intersections) over all nonempty subfamilies of `eligible`.
SetFamily combine_subfamilies(const std::vector<Subset>& eligible, bool intersect,
                              GroundSet g) {
  require_enumerable_subfamilies(eligible.size());
  SetFamily out;
  const std::size_t k = eligible.size();
  for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
    Subset acc = intersect ? Subset::full(g) : Subset::empty_set();
    for (std::size_t i = 0; i < k; ++i)
      if ((mask >> i) & 1u)
        acc = intersect ? acc.intersect(eligible[i]) : acc.union_with(eligible[i]);
    out.insert(acc);
  }
  return out;
}

}  // namespace

SetFamily star_unions(const SetFamily& u, Subset sel) {
  std::vector<Subset> eligible;
  for (Subset member : u.members())
    if (member.meets(sel)) eligible.push_back(member);
  return combine_subfamilies(eligible, /*intersect=*/false, GroundSet{1});
}

SetFamily star_unions_at(const SetFamily& u, int x) {
  return star_unions(u, Subset::singleton(x));
}

SetFamily dual_intersections(const SetFamily& d, Subset sel, GroundSet g) {
  const Subset sel_c = sel.complement(g);
  std::vector<Subset> eligible;
  for (Subset member : d.members())
    if (member.complement(g).meets(sel_c)) eligible.push_back(member);
  return combine_subfamilies(eligible, /*intersect=*/true, g);
}

SetFamily dual_intersections_at(const SetFamily& d, int x, GroundSet g) {
  const Subset point = Subset::singleton(x);
  std::vector<Subset> eligible;
  for (Subset member : d.members())
    if (member.complement(g).meets(point)) eligible.push_back(member);
  return combine_subfamilies(eligible, /*intersect=*/true, g);
}

}  // namespace starsel::staralg
