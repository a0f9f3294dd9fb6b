#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "starsel/parallel.hpp"
#include "starsel/report.hpp"
#include "starsel/search.hpp"
#include "starsel/theorems.hpp"

namespace starsel::cli {

namespace {

using json = nlohmann::ordered_json;
using principles::EvalResult;
using principles::PrincipleId;
using principles::Verdict;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path);
  out << bytes;
}

PrincipleId parse_principle_or_fail(const std::string& id) {
  if (auto p = principles::parse_principle(id)) return *p;
  throw FormatError("unknown principle \"" + id +
                    "\"; valid ids: " + principles::valid_principle_ids());
}

struct CommonFlags {
  bool quiet = false;
  bool verbose = false;
};

struct BudgetFlags {
  int max_n = 0;
  int max_family = 0;
  int max_a = 0;
  int max_b = 0;
  int max_horizon = 0;
  std::string b_mode;

  search::Budget apply(search::Budget base) const {
    if (max_n > 0) base.max_n = max_n;
    if (max_family > 0) base.max_family_size = max_family;
    if (max_a > 0) base.max_a_size = max_a;
    if (max_b > 0) base.max_b_size = max_b;
    if (max_horizon > 0) base.max_horizon = max_horizon;
    if (!b_mode.empty()) {
      if (b_mode == "extensional")
        base.b_mode = search::Budget::BMode::Extensional;
      else if (b_mode == "predicate")
        base.b_mode = search::Budget::BMode::PredicatePool;
      else if (b_mode == "mixed")
        base.b_mode = search::Budget::BMode::Mixed;
      else if (b_mode == "cover")
        base.b_mode = search::Budget::BMode::CoverOnly;
      else
        throw FormatError("unknown b-mode \"" + b_mode +
                          "\"; valid: extensional, predicate, mixed, cover");
    }
    return base;
  }
};

void add_budget_flags(CLI::App* cmd, BudgetFlags& flags) {
  cmd->add_option("--max-n", flags.max_n, "ground set ceiling");
  cmd->add_option("--max-family", flags.max_family, "family size ceiling");
  cmd->add_option("--max-a", flags.max_a, "collection A size ceiling");
  cmd->add_option("--max-b", flags.max_b, "extensional B size ceiling");
  cmd->add_option("--max-horizon", flags.max_horizon, "horizon ceiling");
  cmd->add_option("--b-mode", flags.b_mode,
                  "target draw mode: extensional|predicate|mixed|cover");
}

int run_eval(const std::string& instance_path, const std::string& principle_id,
             int horizon_override, const CommonFlags& common, std::ostream& out,
             std::ostream& err) {
  PrincipleId p = parse_principle_or_fail(principle_id);
  Instance inst = load_instance(read_file(instance_path));
  if (horizon_override > 0) {
    inst.horizon = horizon_override;
    inst.validate();
  }
  EvalResult result = principles::evaluate(p, inst);
  const bool holds = result.verdict == Verdict::Holds;
  if (common.verbose)
    err << principles::to_string(p) << " on " << instance_path << ": "
        << (holds ? "holds" : "fails") << " at horizon " << inst.horizon << " ("
        << result.sequences_checked << " sequences)\n";
  if (common.quiet)
    out << (holds ? "holds" : "fails") << "\n";
  else
    out << report::eval_report(p, result, inst);
  return 0;
}

int run_validate(const std::string& instance_path, const CommonFlags& common,
                 std::ostream& out) {
  Instance inst = load_instance(read_file(instance_path));
  if (common.quiet) {
    out << "valid\n";
    return 0;
  }
  json doc = json::object();
  doc["valid"] = true;
  doc["instance"] = json::parse(instance_to_json(inst));
  out << doc.dump(2) << "\n";
  return 0;
}

std::vector<Instance> build_corpus(const std::string& corpus_kind,
                                   const BudgetFlags& flags, std::uint64_t trials,
                                   std::uint64_t seed) {
  if (corpus_kind == "exhaustive") {
    search::Budget base;
    base.max_n = 2;
    base.max_family_size = 2;
    base.max_a_size = 1;
    base.max_b_size = 2;
    base.max_horizon = 2;
    return search::enumerate_instances(flags.apply(base));
  }
  if (corpus_kind == "random") {
    search::Budget base;
    base.max_n = 3;
    base.max_family_size = 3;
    base.max_a_size = 2;
    base.max_b_size = 2;
    base.max_horizon = 2;
    base.b_mode = search::Budget::BMode::Mixed;
    base.seed = seed;
    search::RandomInstanceStream stream(flags.apply(base));
    std::vector<Instance> corpus;
    corpus.reserve(trials);
    for (std::uint64_t i = 0; i < trials; ++i) corpus.push_back(stream.next());
    return corpus;
  }
  throw FormatError("unknown corpus \"" + corpus_kind +
                    "\"; valid: exhaustive, random");
}

int run_check(const std::string& theorem_id, bool check_all,
              const std::string& corpus_kind, std::uint64_t trials,
              std::uint64_t seed, const BudgetFlags& flags,
              const CommonFlags& common, std::ostream& out, std::ostream& err) {
  std::vector<theorems::TheoremId> picked;
  if (check_all) {
    picked = theorems::all_theorems();
  } else if (auto t = theorems::parse_theorem(theorem_id)) {
    picked = {*t};
  } else {
    throw FormatError("unknown theorem \"" + theorem_id +
                      "\"; valid ids: " + theorems::valid_theorem_ids());
  }

  std::vector<Instance> corpus = build_corpus(corpus_kind, flags, trials, seed);
  const int workers = default_workers();

  std::uint64_t total_violations = 0;
  std::uint64_t total_rejected = 0;
  std::vector<theorems::TheoremReport> reports;
  for (theorems::TheoremId t : picked) {
    theorems::TheoremReport r = theorems::check_theorem(t, corpus, workers);
    total_violations += r.violations.size();
    total_rejected += r.mapped_witness_rejected;
    if (common.verbose)
      err << theorems::to_string(t) << ": " << r.checked << " checked, "
          << r.violations.size() << " violations, " << r.skipped_budget
          << " skipped\n";
    reports.push_back(std::move(r));
  }

  const bool ok = total_violations == 0 && total_rejected == 0;
  if (common.quiet) {
    if (ok)
      out << "ok\n";
    else
      out << "violations " << total_violations << "\n";
  } else if (reports.size() == 1) {
    out << report::theorem_report(reports[0], corpus_kind, seed);
  } else {
    json doc = json::object();
    doc["corpus"] = corpus_kind;
    doc["seed"] = seed;
    doc["instances"] = corpus.size();
    json items = json::array();
    for (const auto& r : reports)
      items.push_back(json::parse(report::theorem_report(r, corpus_kind, seed)));
    doc["theorems"] = items;
    doc["violations_total"] = total_violations;
    out << doc.dump(2) << "\n";
  }
  return ok ? 0 : 1;
}

int run_find_separation(const std::string& left_id, const std::string& right_id,
                        const BudgetFlags& flags, std::uint64_t seed,
                        std::uint64_t max_instances, const std::string& out_path,
                        const CommonFlags& common, std::ostream& out,
                        std::ostream& err) {
  PrincipleId left = parse_principle_or_fail(left_id);
  PrincipleId right = parse_principle_or_fail(right_id);
  search::Budget base;
  base.max_n = 3;
  base.max_family_size = 4;
  base.max_a_size = 2;
  base.max_b_size = 2;
  base.max_horizon = 2;
  base.seed = seed;
  base.max_instances = max_instances;
  search::Budget budget = flags.apply(base);

  auto result = search::find_separation(left, right, budget);
  if (common.verbose) {
    if (result)
      err << "separated after " << result->candidates_tried << " candidates\n";
    else
      err << "no separation within budget\n";
  }
  if (result && !out_path.empty()) {
    write_file(out_path, instance_to_json(result->instance));
    write_file(out_path + ".verdict.json", report::separation_sidecar(*result));
  }
  if (common.quiet)
    out << (result ? "found" : "not-found") << "\n";
  else
    out << report::separation_report(result, left, right);
  return result ? 0 : 1;
}

int run_paper_instance(const std::string& name, int n, const std::string& b_text,
                       int horizon, std::ostream& out) {
  if (name != "initial-segments")
    throw FormatError("unknown built-in instance \"" + name +
                      "\"; valid names: initial-segments");
  Collection b = Collection::intensional(parse_predicate(b_text, {"U"}));
  Instance inst = search::initial_segments_instance(n, std::move(b), horizon);
  out << instance_to_json(inst);
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"finite model checker for classical and star selection principles"};
  app.require_subcommand(1);
  app.fallthrough();
  CommonFlags common;
  app.add_flag("--quiet", common.quiet, "print only the verdict line");
  app.add_flag("--verbose", common.verbose, "human-readable progress on stderr");

  auto* eval_cmd = app.add_subcommand("eval", "evaluate a principle on an instance");
  std::string eval_instance, eval_principle;
  int eval_horizon = 0;
  eval_cmd->add_option("--instance", eval_instance, "instance document")->required();
  eval_cmd->add_option("--principle", eval_principle, "principle id")->required();
  eval_cmd->add_option("--horizon", eval_horizon, "override the instance horizon");

  auto* check_cmd = app.add_subcommand("check", "verify a theorem on a corpus");
  std::string check_theorem_id, check_corpus = "exhaustive";
  bool check_all = false;
  std::uint64_t check_trials = 200, check_seed = 0;
  BudgetFlags check_budget;
  check_cmd->add_option("--theorem", check_theorem_id, "theorem id");
  check_cmd->add_flag("--all", check_all, "check every theorem");
  check_cmd->add_option("--corpus", check_corpus, "exhaustive|random");
  check_cmd->add_option("--trials", check_trials, "random corpus size");
  check_cmd->add_option("--seed", check_seed, "random corpus seed");
  add_budget_flags(check_cmd, check_budget);

  auto* sep_cmd =
      app.add_subcommand("find-separation", "hunt for a separating instance");
  std::string sep_left, sep_right, sep_out;
  std::uint64_t sep_seed = 0, sep_max_instances = 0;
  BudgetFlags sep_budget;
  sep_cmd->add_option("--left", sep_left, "principle that should hold")->required();
  sep_cmd->add_option("--right", sep_right, "principle that should fail")->required();
  sep_cmd->add_option("--seed", sep_seed, "random phase seed");
  sep_cmd->add_option("--max-instances", sep_max_instances,
                      "random phase candidate cap");
  sep_cmd->add_option("--out", sep_out,
                      "persist the instance here plus a .verdict.json sidecar");
  add_budget_flags(sep_cmd, sep_budget);

  auto* validate_cmd =
      app.add_subcommand("validate", "validate and canonicalize an instance");
  std::string validate_instance;
  validate_cmd->add_option("--instance", validate_instance, "instance document")
      ->required();

  auto* paper_cmd = app.add_subcommand("paper-instance", "emit a built-in instance");
  std::string paper_name, paper_b = "cover";
  int paper_n = 4, paper_horizon = 2;
  paper_cmd->add_option("--name", paper_name, "instance name")->required();
  paper_cmd->add_option("--n", paper_n, "ground set size");
  paper_cmd->add_option("--b", paper_b, "target predicate");
  paper_cmd->add_option("--horizon", paper_horizon, "horizon");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*eval_cmd)
      return run_eval(eval_instance, eval_principle, eval_horizon, common, out, err);
    if (*check_cmd) {
      if (!check_all && check_theorem_id.empty())
        throw FormatError("check needs --theorem or --all");
      return run_check(check_theorem_id, check_all, check_corpus, check_trials,
                       check_seed, check_budget, common, out, err);
    }
    if (*sep_cmd)
      return run_find_separation(sep_left, sep_right, sep_budget, sep_seed,
                                 sep_max_instances, sep_out, common, out, err);
    if (*validate_cmd) return run_validate(validate_instance, common, out);
    if (*paper_cmd)
      return run_paper_instance(paper_name, paper_n, paper_b, paper_horizon, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "error: no command\n";
  return 2;
}

}  // namespace starsel::cli
