#include "starsel/instance.hpp"

#include <algorithm>

#include "json.hpp"

namespace starsel {

using json = nlohmann::ordered_json;

// -- collection ---------------------------------------------------------------

Collection Collection::extensional(std::vector<SetFamily> families) {
  std::sort(families.begin(), families.end());
  families.erase(std::unique(families.begin(), families.end()), families.end());
  Collection c;
  c.rep_ = std::move(families);
  return c;
}

Collection Collection::intensional(PredPtr predicate) {
  validate_arity(*predicate);
  Collection c;
  c.rep_ = std::move(predicate);
  return c;
}

Kappa Kappa::extensional(std::vector<Subset> sets) {
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  return {Mode::Extensional, std::move(sets)};
}

// -- predicate evaluation --------------------------------------------------------

static const SetFamily& resolve_family(const std::string& name, const Instance& ctx) {
  auto it = ctx.named_families.find(name);
  if (it == ctx.named_families.end()) throw UnknownReference(name);
  return it->second;
}

static const Collection& resolve_collection(const std::string& name,
                                            const Instance& ctx) {
  auto it = ctx.named_collections.find(name);
  if (it == ctx.named_collections.end()) throw UnknownReference(name);
  return it->second;
}

bool eval_predicate(const PredicateNode& p, const SetFamily& f, const Instance& ctx) {
  switch (p.kind) {
    case PredKind::Cover:
      return f.covers(ctx.ground);
    case PredKind::True:
      return true;
    case PredKind::False:
      return false;
    case PredKind::NonEmptyMembers:
      return !f.contains(Subset::empty_set());
    case PredKind::MaxSize:
      return std::all_of(f.members().begin(), f.members().end(),
                         [&](Subset s) { return s.size() <= p.number; });
    case PredKind::MinSize:
      return std::all_of(f.members().begin(), f.members().end(),
                         [&](Subset s) { return s.size() >= p.number; });
    case PredKind::CardLE:
      return f.size() <= static_cast<std::size_t>(p.number);
    case PredKind::SubsetOf: {
      const SetFamily& g = resolve_family(p.name, ctx);
      return std::all_of(f.members().begin(), f.members().end(),
                         [&](Subset s) { return g.contains(s); });
    }
    case PredKind::Refines:
      return refines_into(f, resolve_family(p.name, ctx));
    case PredKind::RefinedBy:
      return refines_into(resolve_family(p.name, ctx), f);
    case PredKind::Contains:
      return f.contains(p.set);
    case PredKind::MemberOf:
      return collection_contains(resolve_collection(p.name, ctx), f, ctx);
    case PredKind::Not:
      return !eval_predicate(*p.children[0], f, ctx);
    case PredKind::And:
      return eval_predicate(*p.children[0], f, ctx) &&
             eval_predicate(*p.children[1], f, ctx);
    case PredKind::Or:
      return eval_predicate(*p.children[0], f, ctx) ||
             eval_predicate(*p.children[1], f, ctx);
    case PredKind::ComplementView:
      return eval_predicate(*p.children[0], f.complemented(ctx.ground), ctx);
  }
  return false;
}

bool collection_contains(const Collection& c, const SetFamily& f, const Instance& ctx) {
  if (c.is_extensional()) {
    const auto& fams = c.families();
    return std::binary_search(fams.begin(), fams.end(), f);
  }
  return eval_predicate(c.predicate(), f, ctx);
}

// -- validation --------------------------------------------------------------------

static void check_predicate_refs(const PredicateNode& p, const Instance& ctx) {
  switch (p.kind) {
    case PredKind::SubsetOf:
    case PredKind::Refines:
    case PredKind::RefinedBy:
      resolve_family(p.name, ctx);
      break;
    case PredKind::MemberOf:
      resolve_collection(p.name, ctx);
      break;
    case PredKind::Contains:
      if (!p.set.in_range(ctx.ground))
        throw FormatError("contains() literal has an element outside the ground set");
      break;
    default:
      break;
  }
  for (const auto& c : p.children) check_predicate_refs(*c, ctx);
}

static void check_family(const SetFamily& f, const Instance& inst,
                         const std::string& what) {
  if (!f.in_range(inst.ground))
    throw FormatError(what + " has an element outside the ground set");
  if (f.size() > static_cast<std::size_t>(max_family_members))
    throw BudgetExceeded(what + " exceeds " + std::to_string(max_family_members) +
                         " members");
}

void Instance::validate() const {
  if (ground.size < 1) throw FormatError("ground set size must be at least 1");
  if (ground.size > max_ground_size)
    throw BudgetExceeded("ground set size exceeds " +
                         std::to_string(max_ground_size));
  for (const auto& [name, fam] : named_families)
    check_family(fam, *this, "family \"" + name + "\"");
  if (!a.is_extensional())
    throw FormatError("collection_A must be extensional");
  if (a.families().empty()) throw FormatError("collection_A must be nonempty");
  for (const auto& fam : a.families()) check_family(fam, *this, "collection_A member");
  if (b.is_extensional()) {
    for (const auto& fam : b.families())
      check_family(fam, *this, "collection_B member");
  } else {
    validate_arity(*b.predicate());
    check_predicate_refs(*b.predicate(), *this);
  }
  for (const auto& [name, coll] : named_collections) {
    if (coll.is_extensional()) {
      for (const auto& fam : coll.families())
        check_family(fam, *this, "collection \"" + name + "\" member");
    } else {
      check_predicate_refs(*coll.predicate(), *this);
    }
  }
  if (kappa.mode == Kappa::Mode::Extensional) {
    for (Subset s : kappa.sets)
      if (!s.in_range(ground))
        throw FormatError("kappa member has an element outside the ground set");
  }
  if (horizon < 1) throw FormatError("horizon must be at least 1");
  if (horizon > default_max_horizon && !allow_large_horizon)
    throw BudgetExceeded("horizon exceeds " + std::to_string(default_max_horizon) +
                         " (set allow_large_horizon to override)");
}

// -- JSON decoding --------------------------------------------------------------------

namespace {

Subset subset_from_json(const json& j, GroundSet g) {
  if (!j.is_array()) throw FormatError("subset must be an array of elements");
  Subset s;
  for (const auto& e : j) {
    if (!e.is_number_integer()) throw FormatError("subset element must be an integer");
    long v = e.get<long>();
    if (v < 0 || v >= g.size)
      throw FormatError("element " + std::to_string(v) + " out of range on ground_set " +
                        std::to_string(g.size));
    s = s.union_with(Subset::singleton(static_cast<int>(v)));
  }
  return s;
}

SetFamily family_from_json(const json& j, GroundSet g) {
  if (!j.is_array()) throw FormatError("family must be an array of subsets");
  std::vector<Subset> members;
  for (const auto& sub : j) members.push_back(subset_from_json(sub, g));
  return SetFamily(std::move(members));
}

json subset_to_json(Subset s) {
  json out = json::array();
  for (int e : s.elements()) out.push_back(e);
  return out;
}

json family_to_json(const SetFamily& f) {
  json out = json::array();
  for (Subset s : f.members()) out.push_back(subset_to_json(s));
  return out;
}

}  // namespace

Instance load_instance(std::string_view bytes) {
  json doc;
  try {
    doc = json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("not a JSON document: ") + e.what());
  }
  if (!doc.is_object()) throw FormatError("instance document must be a JSON object");

  static const std::set<std::string> known_keys = {
      "ground_set",          "families",
      "collection_A",        "collection_B",
      "kappa",               "horizon",
      "allow_large_horizon", "sfin_empty_selection",
      "indexed_empty_selection", "max_steps"};
  for (const auto& [key, _] : doc.items())
    if (!known_keys.contains(key)) throw FormatError("unknown key \"" + key + "\"");

  Instance inst;

  if (!doc.contains("ground_set") || !doc["ground_set"].is_number_integer())
    throw FormatError("ground_set must be an integer");
  long n = doc["ground_set"].get<long>();
  if (n < 1) throw FormatError("ground set size must be at least 1");
  if (n > max_ground_size)
    throw BudgetExceeded("ground set size exceeds " + std::to_string(max_ground_size));
  inst.ground = GroundSet{static_cast<int>(n)};

  if (doc.contains("families")) {
    if (!doc["families"].is_object())
      throw FormatError("families must map names to families");
    for (const auto& [name, fam] : doc["families"].items()) {
      if (name.empty()) throw FormatError("family names must be nonempty");
      inst.named_families[name] = family_from_json(fam, inst.ground);
    }
  }

  if (!doc.contains("collection_A") || !doc["collection_A"].is_array())
    throw FormatError("collection_A must be an array of family names");
  std::vector<SetFamily> a_families;
  for (const auto& ref : doc["collection_A"]) {
    if (!ref.is_string()) throw FormatError("collection_A entries must be names");
    const std::string name = ref.get<std::string>();
    auto it = inst.named_families.find(name);
    if (it == inst.named_families.end()) throw UnknownReference(name);
    a_families.push_back(it->second);
  }
  inst.a = Collection::extensional(std::move(a_families));

  if (!doc.contains("collection_B") || !doc["collection_B"].is_object())
    throw FormatError("collection_B must be an object");
  {
    const json& b = doc["collection_B"];
    const bool has_pred = b.contains("predicate");
    const bool has_ext = b.contains("extensional");
    if (has_pred == has_ext)
      throw FormatError(
          "collection_B needs exactly one of \"predicate\" or \"extensional\"");
    for (const auto& [key, _] : b.items())
      if (key != "predicate" && key != "extensional")
        throw FormatError("unknown key \"" + key + "\" in collection_B");
    if (has_pred) {
      if (!b["predicate"].is_string())
        throw FormatError("collection_B predicate must be a string");
      std::set<std::string> declared;
      for (const auto& [name, _] : inst.named_families) declared.insert(name);
      inst.b = Collection::intensional(
          parse_predicate(b["predicate"].get<std::string>(), declared));
    } else {
      if (!b["extensional"].is_array())
        throw FormatError("collection_B extensional form must be an array");
      std::vector<SetFamily> fams;
      for (const auto& fam : b["extensional"])
        fams.push_back(family_from_json(fam, inst.ground));
      inst.b = Collection::extensional(std::move(fams));
    }
  }

  if (doc.contains("kappa")) {
    const json& k = doc["kappa"];
    if (k.is_string()) {
      std::string mode = k.get<std::string>();
      if (mode == "singletons")
        inst.kappa = Kappa::singletons();
      else if (mode == "finite_nonempty")
        inst.kappa = Kappa::finite_nonempty();
      else if (mode == "finite_with_empty")
        inst.kappa = Kappa::finite_with_empty();
      else
        throw FormatError("unknown kappa mode \"" + mode + "\"");
    } else if (k.is_object() && k.contains("extensional") && k.size() == 1 &&
               k["extensional"].is_array()) {
      std::vector<Subset> sets;
      for (const auto& sub : k["extensional"])
        sets.push_back(subset_from_json(sub, inst.ground));
      inst.kappa = Kappa::extensional(std::move(sets));
    } else {
      throw FormatError("kappa must be a mode string or {\"extensional\": [...]}");
    }
  }

  if (!doc.contains("horizon") || !doc["horizon"].is_number_integer())
    throw FormatError("horizon must be an integer");
  inst.horizon = doc["horizon"].get<int>();

  if (doc.contains("allow_large_horizon")) {
    if (!doc["allow_large_horizon"].is_boolean())
      throw FormatError("allow_large_horizon must be a boolean");
    inst.allow_large_horizon = doc["allow_large_horizon"].get<bool>();
  }
  if (doc.contains("sfin_empty_selection")) {
    if (!doc["sfin_empty_selection"].is_boolean())
      throw FormatError("sfin_empty_selection must be a boolean");
    inst.sfin_empty_selection = doc["sfin_empty_selection"].get<bool>();
  }
  if (doc.contains("indexed_empty_selection")) {
    if (!doc["indexed_empty_selection"].is_boolean())
      throw FormatError("indexed_empty_selection must be a boolean");
    inst.indexed_empty_selection = doc["indexed_empty_selection"].get<bool>();
  }
  if (doc.contains("max_steps")) {
    if (!doc["max_steps"].is_number_unsigned())
      throw FormatError("max_steps must be a nonnegative integer");
    inst.limits.max_steps = doc["max_steps"].get<std::uint64_t>();
  }

  inst.validate();
  return inst;
}

// -- JSON encoding -------------------------------------------------------------------

std::string instance_to_json(const Instance& inst) {
  if (!inst.named_collections.empty())
    throw FormatError("named collections are not representable in instance documents");

  // Every 𝒜 family needs a name; unnamed ones get F0, F1, ...
  std::map<std::string, SetFamily> families = inst.named_families;
  std::vector<std::string> a_names;
  int synth = 0;
  for (const SetFamily& fam : inst.a_families()) {
    std::string found;
    for (const auto& [name, f] : families)
      if (f == fam) {
        found = name;
        break;
      }
    if (found.empty()) {
      do {
        found = "F" + std::to_string(synth++);
      } while (families.contains(found));
      families[found] = fam;
    }
    a_names.push_back(found);
  }

  json doc = json::object();
  doc["ground_set"] = inst.ground.size;
  json fams = json::object();
  for (const auto& [name, fam] : families) fams[name] = family_to_json(fam);
  doc["families"] = fams;
  doc["collection_A"] = a_names;
  if (inst.b.is_extensional()) {
    json list = json::array();
    for (const auto& fam : inst.b.families()) list.push_back(family_to_json(fam));
    doc["collection_B"] = json::object({{"extensional", list}});
  } else {
    doc["collection_B"] =
        json::object({{"predicate", print_predicate(inst.b.predicate())}});
  }
  switch (inst.kappa.mode) {
    case Kappa::Mode::Singletons:
      doc["kappa"] = "singletons";
      break;
    case Kappa::Mode::FiniteNonempty:
      doc["kappa"] = "finite_nonempty";
      break;
    case Kappa::Mode::FiniteWithEmpty:
      doc["kappa"] = "finite_with_empty";
      break;
    case Kappa::Mode::Extensional: {
      json sets = json::array();
      for (Subset s : inst.kappa.sets) sets.push_back(subset_to_json(s));
      doc["kappa"] = json::object({{"extensional", sets}});
      break;
    }
  }
  doc["horizon"] = inst.horizon;
  if (inst.allow_large_horizon) doc["allow_large_horizon"] = true;
  if (!inst.sfin_empty_selection) doc["sfin_empty_selection"] = false;
  if (inst.indexed_empty_selection) doc["indexed_empty_selection"] = true;
  if (inst.limits.max_steps != SearchLimits{}.max_steps)
    doc["max_steps"] = inst.limits.max_steps;
  return doc.dump(2) + "\n";
}

}  // namespace starsel
