#include "starsel/report.hpp"

#include "json.hpp"

namespace starsel::report {

using json = nlohmann::ordered_json;
using principles::EvalResult;
using principles::PrincipleId;
using principles::Selection;
using principles::SelectorKind;
using principles::Verdict;
using principles::Witness;

namespace {

json subset_json(Subset s) {
  json out = json::array();
  for (int e : s.elements()) out.push_back(e);
  return out;
}

json family_json(const SetFamily& f) {
  json out = json::array();
  for (Subset s : f.members()) out.push_back(subset_json(s));
  return out;
}

json selection_json(const Selection& sel, const SetFamily& family) {
  json out = json::object();
  switch (sel.kind) {
    case SelectorKind::Element:
      out["kind"] = "element";
      out["index"] = sel.index;
      out["set"] = subset_json(family.members().at(sel.index));
      break;
    case SelectorKind::Subfamily: {
      out["kind"] = "subfamily";
      json indices = json::array();
      json sets = json::array();
      for (std::uint32_t i = 0; i < family.size(); ++i)
        if ((sel.index_mask >> i) & 1u) {
          indices.push_back(i);
          sets.push_back(subset_json(family.members()[i]));
        }
      out["indices"] = indices;
      out["sets"] = sets;
      break;
    }
    case SelectorKind::Point:
      out["kind"] = "point";
      out["point"] = sel.x;
      break;
    case SelectorKind::PointSet:
      out["kind"] = "point_set";
      out["set"] = subset_json(sel.set);
      break;
    case SelectorKind::KappaMember:
      out["kind"] = "kappa_member";
      out["set"] = subset_json(sel.set);
      break;
  }
  return out;
}

json eval_json(PrincipleId p, const EvalResult& r, const Instance& inst) {
  json out = json::object();
  out["principle"] = principles::to_string(p);
  out["verdict"] = r.verdict == Verdict::Holds ? "holds" : "fails";
  out["horizon"] = inst.horizon;
  if (r.witness) {
    json rounds = json::array();
    for (const auto& wr : r.witness->rounds) {
      json round = json::object();
      round["round"] = wr.round;
      round["family"] = wr.family_index;
      round["selection"] =
          selection_json(wr.selection, inst.a_families().at(wr.family_index));
      rounds.push_back(round);
    }
    out["witness"] = rounds;
    out["produced"] = family_json(r.witness->produced);
  }
  if (r.counterexample) {
    json rounds = json::array();
    for (std::size_t i = 0; i < r.counterexample->family_indices.size(); ++i) {
      int fi = r.counterexample->family_indices[i];
      json round = json::object();
      round["round"] = i;
      round["family"] = fi;
      round["members"] = family_json(inst.a_families().at(fi));
      rounds.push_back(round);
    }
    out["counterexample"] = rounds;
  }
  out["empty_selection_round"] = r.empty_selector_seen;
  out["sequences_checked"] = r.sequences_checked;
  return out;
}

}  // namespace

std::string eval_report(PrincipleId p, const EvalResult& r, const Instance& inst) {
  return eval_json(p, r, inst).dump(2) + "\n";
}

std::string theorem_report(const theorems::TheoremReport& r,
                           const std::string& corpus_label, std::uint64_t seed) {
  json out = json::object();
  out["theorem"] = theorems::to_string(r.theorem);
  out["description"] = theorems::describe(r.theorem);
  out["corpus"] = corpus_label;
  out["seed"] = seed;
  out["checked"] = r.checked;
  json violations = json::array();
  for (const auto& v : r.violations) {
    json item = json::object();
    item["direction"] = v.direction;
    item["details"] = v.details;
    item["instance"] = json::parse(v.instance_json);
    violations.push_back(item);
  }
  out["violations"] = violations;
  out["witness_roundtrips"] = r.witness_roundtrips;
  out["mapped_witness_rejected"] = r.mapped_witness_rejected;
  out["skipped_budget"] = r.skipped_budget;
  return out.dump(2) + "\n";
}

std::string separation_report(const std::optional<search::SeparationResult>& r,
                              PrincipleId left, PrincipleId right) {
  json out = json::object();
  out["left"] = principles::to_string(left);
  out["right"] = principles::to_string(right);
  out["found"] = r.has_value();
  if (r) {
    out["candidates_tried"] = r->candidates_tried;
    out["instance"] = json::parse(instance_to_json(r->instance));
    out["left_result"] = eval_json(left, r->left_result, r->instance);
    out["right_result"] = eval_json(right, r->right_result, r->instance);
  }
  return out.dump(2) + "\n";
}

std::string separation_sidecar(const search::SeparationResult& r) {
  json out = json::object();
  out["left"] = principles::to_string(r.left);
  out["right"] = principles::to_string(r.right);
  out["left_result"] = eval_json(r.left, r.left_result, r.instance);
  out["right_result"] = eval_json(r.right, r.right_result, r.instance);
  return out.dump(2) + "\n";
}

}  // namespace starsel::report
