#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "starsel/instance.hpp"
#include "starsel/search.hpp"

namespace fs = std::filesystem;
using namespace starsel;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path temp_file(const std::string& name, const std::string& contents) {
  fs::path dir = fs::temp_directory_path() / "starsel_cli_tests";
  fs::create_directories(dir);
  fs::path p = dir / name;
  std::ofstream f(p, std::ios::binary);
  f << contents;
  return p;
}

const char* example_doc = R"({
  "ground_set": 3,
  "families": { "U0": [[0,1],[1,2]] },
  "collection_A": ["U0"],
  "collection_B": { "predicate": "cover" },
  "kappa": "singletons",
  "horizon": 2
})";

}  // namespace

TEST_CASE("eval reports a verdict and exits zero either way") {
  fs::path doc = temp_file("ex.json", example_doc);
  RunResult holds = run_cli({"eval", "--instance", doc.string(), "--principle", "cs1"});
  CHECK(holds.code == 0);
  CHECK(holds.out.find("\"verdict\": \"holds\"") != std::string::npos);
  CHECK(holds.out.find("\"witness\"") != std::string::npos);

  RunResult fails =
      run_cli({"eval", "--instance", doc.string(), "--principle", "s1",
               "--horizon", "1", "--quiet"});
  // a fails verdict is still a successful evaluation
  CHECK(fails.code == 0);
  CHECK(fails.out == "fails\n");
  RunResult recovered =
      run_cli({"eval", "--instance", doc.string(), "--principle", "s1",
               "--horizon", "2", "--quiet"});
  CHECK(recovered.out == "holds\n");
}

TEST_CASE("unknown ids exit 2 and list the valid ones") {
  fs::path doc = temp_file("ex.json", example_doc);
  RunResult r = run_cli({"eval", "--instance", doc.string(), "--principle", "bogus"});
  CHECK(r.code == 2);
  CHECK(r.err.find("cs1") != std::string::npos);
  CHECK(r.err.find("sdsfin") != std::string::npos);

  RunResult t = run_cli({"check", "--theorem", "nope"});
  CHECK(t.code == 2);
  CHECK(t.err.find("t3_7") != std::string::npos);
}

TEST_CASE("usage and format errors exit 2") {
  CHECK(run_cli({"eval", "--principle", "cs1"}).code == 2);
  CHECK(run_cli({"eval", "--instance", "/nonexistent.json", "--principle", "cs1"})
            .code == 2);
  fs::path bad = temp_file("bad.json", "{\"ground_set\": 0}");
  CHECK(run_cli({"validate", "--instance", bad.string()}).code == 2);
  CHECK(run_cli({"frobnicate"}).code == 2);
  CHECK(run_cli({"--help"}).code == 0);
}

TEST_CASE("validate canonicalizes and the result always evaluates") {
  fs::path doc = temp_file("ex.json", example_doc);
  RunResult v = run_cli({"validate", "--instance", doc.string()});
  REQUIRE(v.code == 0);
  CHECK(v.out.find("\"valid\": true") != std::string::npos);

  search::Budget budget;
  budget.max_n = 3;
  budget.max_family_size = 3;
  budget.max_a_size = 2;
  budget.seed = 71;
  budget.b_mode = search::Budget::BMode::Mixed;
  search::RandomInstanceStream stream(budget);
  for (int i = 0; i < 20; ++i) {
    fs::path p = temp_file("gen.json", instance_to_json(stream.next()));
    CHECK(run_cli({"validate", "--instance", p.string()}).code == 0);
    CHECK(run_cli({"--quiet", "eval", "--instance", p.string(), "--principle",
                   "sfin"}).code == 0);
  }
}

TEST_CASE("check exits by violation count and is byte stable") {
  RunResult a = run_cli({"check", "--theorem", "t3_7", "--corpus", "random",
                         "--trials", "60", "--seed", "7"});
  RunResult b = run_cli({"check", "--theorem", "t3_7", "--corpus", "random",
                         "--trials", "60", "--seed", "7"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("\"violations\": []") != std::string::npos);
  CHECK(a.out.find("\"checked\": 60") != std::string::npos);
}

TEST_CASE("check --all aggregates every theorem") {
  RunResult r = run_cli({"check", "--all", "--corpus", "random", "--trials", "15",
                         "--seed", "3", "--max-n", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"violations_total\": 0") != std::string::npos);
  CHECK(r.out.find("\"theorem\": \"diag\"") != std::string::npos);
}

TEST_CASE("find-separation persists re-verifiable artifacts") {
  fs::path out = fs::temp_directory_path() / "starsel_cli_tests" / "sep.json";
  RunResult r = run_cli({"find-separation", "--left", "cs1", "--right", "ss1star",
                         "--max-a", "1", "--max-horizon", "1", "--seed", "5",
                         "--out", out.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("\"found\": true") != std::string::npos);
  CHECK(fs::exists(out));
  CHECK(fs::exists(out.string() + ".verdict.json"));

  RunResult left = run_cli({"--quiet", "eval", "--instance", out.string(),
                            "--principle", "cs1"});
  CHECK(left.out == "holds\n");
  RunResult right = run_cli({"--quiet", "eval", "--instance", out.string(),
                             "--principle", "ss1star"});
  CHECK(right.out == "fails\n");

  // the sidecar reloads and agrees with the re-evaluation
  {
    std::ifstream sidecar(out.string() + ".verdict.json");
    std::stringstream buf;
    buf << sidecar.rdbuf();
    const std::string body = buf.str();
    CHECK(body.find("\"left\": \"cs1\"") != std::string::npos);
    CHECK(body.find("\"verdict\": \"holds\"") != std::string::npos);
    CHECK(body.find("\"verdict\": \"fails\"") != std::string::npos);
  }

  // a self-pair can never separate
  RunResult self = run_cli({"--quiet", "find-separation", "--left", "s1",
                            "--right", "s1", "--max-instances", "20"});
  CHECK(self.code == 1);
  CHECK(self.out == "not-found\n");
}

TEST_CASE("paper-instance emits a loadable document") {
  RunResult r = run_cli({"paper-instance", "--name", "initial-segments", "--n", "4",
                         "--b", "nonempty_members"});
  REQUIRE(r.code == 0);
  Instance inst = load_instance(r.out);
  CHECK(inst.ground.size == 4);
  CHECK(inst.named_families.count("U") == 1);
  RunResult bad = run_cli({"paper-instance", "--name", "what"});
  CHECK(bad.code == 2);
}

TEST_CASE("worker cap from the environment still yields stable reports") {
  std::vector<std::string> args = {"check", "--theorem", "diag",   "--corpus",
                                   "random", "--trials", "30",     "--seed",
                                   "23",     "--b-mode", "cover"};
  RunResult wide = run_cli(args);
  setenv("STARSEL_MAX_WORKERS", "1", 1);
  RunResult narrow = run_cli(args);
  unsetenv("STARSEL_MAX_WORKERS");
  CHECK(wide.code == narrow.code);
  CHECK(wide.out == narrow.out);
}

TEST_CASE("reports are byte stable across runs") {
  fs::path doc = temp_file("ex.json", example_doc);
  for (std::vector<std::string> args :
       {std::vector<std::string>{"eval", "--instance", doc.string(), "--principle",
                                 "sdsfin"},
        std::vector<std::string>{"check", "--theorem", "diag", "--corpus", "random",
                                 "--trials", "40", "--seed", "11", "--b-mode",
                                 "cover"},
        std::vector<std::string>{"find-separation", "--left", "cs1", "--right",
                                 "s1star", "--max-a", "1", "--max-horizon", "1",
                                 "--seed", "13"}}) {
    RunResult first = run_cli(args);
    RunResult second = run_cli(args);
    CHECK(first.code == second.code);
    CHECK(first.out == second.out);
  }
}
