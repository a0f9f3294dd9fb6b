#pragma once

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "starsel/types.hpp"

namespace starsel {

enum class PredKind {
  Cover,
  True,
  False,
  NonEmptyMembers,
  MaxSize,
  MinSize,
  CardLE,
  SubsetOf,
  Refines,
  RefinedBy,
  Contains,
  MemberOf,
  Not,
  And,
  Or,
  ComplementView,
};

struct PredicateNode;
using PredPtr = std::shared_ptr<const PredicateNode>;

/// One node of a collection predicate. Trees are immutable after
/// construction and freely shared.
struct PredicateNode {
  PredKind kind;
  int number = 0;           // MaxSize / MinSize / CardLE
  Subset set;               // Contains
  std::string name;         // SubsetOf / Refines / RefinedBy / MemberOf
  std::vector<PredPtr> children;

  bool operator==(const PredicateNode& other) const;
};

namespace pred {
PredPtr cover();
PredPtr true_();
PredPtr false_();
PredPtr nonempty_members();
PredPtr max_size(int k);
PredPtr min_size(int k);
PredPtr card_le(int k);
PredPtr subset_of(std::string name);
PredPtr refines(std::string name);
PredPtr refined_by(std::string name);
PredPtr contains(Subset s);
PredPtr member_of(std::string name);
PredPtr not_(PredPtr p);
PredPtr and_(PredPtr a, PredPtr b);
PredPtr or_(PredPtr a, PredPtr b);
PredPtr complement_view(PredPtr p);
}  // namespace pred

/// Checks that every node has the child count its kind requires.
void validate_arity(const PredicateNode& node);

/// Parses the predicate grammar. Every NAME must occur in `declared_names`.
/// Throws SyntaxError (with byte offset and expectation), UnknownReference.
PredPtr parse_predicate(std::string_view text,
                        const std::set<std::string>& declared_names);

/// Canonical rendering; print∘parse∘print is a fixed point.
std::string print_predicate(const PredicateNode& node);
inline std::string print_predicate(const PredPtr& p) { return print_predicate(*p); }

}  // namespace starsel
