#pragma once

#include <vector>

#include "starsel/instance.hpp"
#include "starsel/types.hpp"

namespace starsel::staralg {

/// St(A, 𝒰): the union of the members of u meeting a.
Subset star(Subset a, const SetFamily& u);

/// {X∖U : U ∈ u}. Involution.
SetFamily complement_family(const SetFamily& u, GroundSet g);

/// Complements a collection member-wise: F ∈ result ⟺ Fᶜ ∈ c.
/// Extensional collections are mapped; intensional ones are wrapped in a
/// complement view.
Collection complement_collection(const Collection& c, GroundSet g);

/// a ≺ b: every member of a is contained in some member of b.
bool refines(const SetFamily& a, const SetFamily& b);

enum class HullKind { Minus, Plus };

/// Minus: r ∈ ℛ⁻b (some ℬ ∈ b with r ≺ ℬ).
/// Plus:  r ∈ ℛ⁺b (some ℬ ∈ b with ℬ ≺ r).
/// Intensional b is decided by enumerating every family over the ground set,
/// which is a hard error above max_enumerable_ground.
bool hull_membership(HullKind kind, const Collection& b, const SetFamily& r,
                     const Instance& ctx);

/// All unions ⋃𝒱 over nonempty subfamilies 𝒱 of u whose members all meet
/// sel. The union of the result equals star(sel, u). Only NONEMPTY
/// subfamilies qualify: admitting 𝒱 = ∅ would put ∅ into every result,
/// which the point of these families rules out.
SetFamily star_unions(const SetFamily& u, Subset sel);

/// star_unions with the singleton anchor {x}: subfamilies whose members all
/// contain x.
SetFamily star_unions_at(const SetFamily& u, int x);

/// De Morgan dual of star_unions: all intersections ⋂ℱ over nonempty
/// subfamilies ℱ of d with selᶜ ∩ Eᶜ ≠ ∅ for every E ∈ ℱ. Computed
/// directly; equals complement_family(star_unions(dᶜ, selᶜ)).
SetFamily dual_intersections(const SetFamily& d, Subset sel, GroundSet g);

/// dual_intersections for a point anchor: subfamilies with x ∈ Eᶜ for every
/// member E. Equals complement_family(star_unions_at(dᶜ, x)).
SetFamily dual_intersections_at(const SetFamily& d, int x, GroundSet g);

/// Every family over the ground set, in canonical order. Requires
/// g.size ≤ max_enumerable_ground.
std::vector<SetFamily> all_families(GroundSet g);

/// Extensional expansion of a collection over a small ground set.
std::vector<SetFamily> expand_collection(const Collection& c, const Instance& ctx);

}  // namespace starsel::staralg
