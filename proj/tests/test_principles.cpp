#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "starsel/principles.hpp"
#include "starsel/report.hpp"
#include "starsel/search.hpp"
#include "starsel/staralg.hpp"
#include "test_util.hpp"

using namespace starsel;
using namespace starsel::principles;

namespace {

Instance make_instance(int n, std::vector<SetFamily> a, Collection b, int horizon) {
  Instance inst;
  inst.ground = GroundSet{n};
  inst.a = Collection::extensional(std::move(a));
  inst.b = std::move(b);
  inst.horizon = horizon;
  return inst;
}

// Naive reference evaluation: full odometer over every sequence in 𝒜^H and
// every selection tuple, recomputing the produced family from scratch.
// No multiset collapsing, no caching, no early accept beyond the tuple loop.
// Returns the lexicographically first failing sequence, if any.
std::optional<std::vector<int>> oracle_first_failure(PrincipleId p,
                                                     const Instance& inst) {
  EvalOptions opts = EvalOptions::from(inst);
  Target target = Target::instance_b();
  const auto& a = inst.a_families();
  const int h = inst.horizon;
  std::vector<int> seq(h, 0);
  for (;;) {
    std::vector<std::vector<Selection>> spaces;
    for (int r = 0; r < h; ++r)
      spaces.push_back(selector_space(p, a[seq[r]], inst, opts));
    bool found = false;
    if (std::all_of(spaces.begin(), spaces.end(),
                    [](const auto& s) { return !s.empty(); })) {
      std::vector<std::size_t> pick(h, 0);
      for (;;) {
        std::vector<std::pair<SetFamily, Selection>> rounds;
        for (int r = 0; r < h; ++r) rounds.emplace_back(a[seq[r]], spaces[r][pick[r]]);
        if (target.test(produced_family(p, inst.ground, rounds), inst)) {
          found = true;
          break;
        }
        int i = h - 1;
        while (i >= 0 && pick[i] + 1 == spaces[i].size()) {
          pick[i] = 0;
          --i;
        }
        if (i < 0) break;
        ++pick[i];
      }
    }
    if (!found) return seq;
    int i = h - 1;
    while (i >= 0 && seq[i] + 1 == static_cast<int>(a.size())) {
      seq[i] = 0;
      --i;
    }
    if (i < 0) return std::nullopt;
    ++seq[i];
  }
}

}  // namespace

// -- selector spaces -------------------------------------------------------------------

TEST_CASE("selector spaces enumerate canonically") {
  Instance inst = make_instance(3, {SetFamily::of({{0}, {1}})},
                                Collection::intensional(pred::true_()), 1);
  SetFamily u = SetFamily::of({{0}, {1}});

  auto elements = selector_space(PrincipleId::S1, u, inst);
  REQUIRE(elements.size() == 2);
  CHECK(elements[0] == Selection::element(0));
  CHECK(elements[1] == Selection::element(1));

  auto subfams = selector_space(PrincipleId::Sfin, u, inst);
  CHECK(subfams.size() == 4);  // every subfamily of a 2-member family
  CHECK(subfams[0] == Selection::subfamily(0));

  auto points = selector_space(PrincipleId::SCS1, u, inst);
  REQUIRE(points.size() == 3);
  CHECK(points[0] == Selection::point(0));

  auto singles = selector_space(PrincipleId::SS1Star, u, inst);
  REQUIRE(singles.size() == 3);
  CHECK(singles[0] == Selection::kappa_member(Subset::of({0})));
  CHECK(singles[2] == Selection::kappa_member(Subset::of({2})));
}

TEST_CASE("indexed fin selections are nonempty unless flagged") {
  Instance inst = make_instance(2, {SetFamily::of({{0}, {1}})},
                                Collection::intensional(pred::true_()), 1);
  SetFamily u = SetFamily::of({{0}, {1}});
  CHECK(selector_space(PrincipleId::CSfin, u, inst).size() == 3);
  CHECK(selector_space(PrincipleId::SCSfin, u, inst).size() == 3);
  inst.indexed_empty_selection = true;
  CHECK(selector_space(PrincipleId::CSfin, u, inst).size() == 4);
  CHECK(selector_space(PrincipleId::SCSfin, u, inst).size() == 4);
  inst.sfin_empty_selection = false;
  CHECK(selector_space(PrincipleId::Sfin, u, inst).size() == 3);
}

TEST_CASE("kappa modes drive the strong star selector") {
  Instance inst = make_instance(2, {SetFamily::of({{0}})},
                                Collection::intensional(pred::true_()), 1);
  SetFamily u = SetFamily::of({{0}});
  inst.kappa = Kappa::finite_with_empty();
  CHECK(selector_space(PrincipleId::SSStarK, u, inst).size() == 4);
  // the aliases ignore the instance's kappa
  CHECK(selector_space(PrincipleId::SS1Star, u, inst).size() == 2);
  CHECK(selector_space(PrincipleId::SSfinStar, u, inst).size() == 3);
  inst.kappa = Kappa::extensional({Subset::of({0}), Subset::of({0, 1})});
  auto space = selector_space(PrincipleId::SSStarK, u, inst);
  REQUIRE(space.size() == 2);
  CHECK(space[0] == Selection::kappa_member(Subset::of({0})));
}

// -- produced families ------------------------------------------------------------------

TEST_CASE("produced_family per principle") {
  GroundSet g3{3};
  SetFamily two = SetFamily::of({{0}, {1}});
  std::vector<std::pair<SetFamily, Selection>> s1_rounds = {
      {two, Selection::element(0)}, {two, Selection::element(1)}};
  CHECK(produced_family(PrincipleId::S1, GroundSet{2}, s1_rounds) ==
        SetFamily::of({{0}, {1}}));

  SetFamily overlap = SetFamily::of({{0, 1}, {1, 2}});
  std::vector<std::pair<SetFamily, Selection>> kappa_rounds = {
      {overlap, Selection::kappa_member(Subset::of({1}))}};
  CHECK(produced_family(PrincipleId::SSStarK, g3, kappa_rounds) ==
        SetFamily::of({{0, 1, 2}}));

  std::vector<std::pair<SetFamily, Selection>> cs1_rounds = {
      {overlap, Selection::element(0)}};
  CHECK(produced_family(PrincipleId::CS1, g3, cs1_rounds) ==
        SetFamily::of({{0, 1}, {1, 2}, {0, 1, 2}}));

  // repeated selections collapse: the produced object is a set
  std::vector<std::pair<SetFamily, Selection>> dup_rounds = {
      {two, Selection::element(0)}, {two, Selection::element(0)}};
  CHECK(produced_family(PrincipleId::S1, GroundSet{2}, dup_rounds) ==
        SetFamily::of({{0}}));

  std::vector<std::pair<SetFamily, Selection>> bad = {
      {two, Selection::point(0)}};
  CHECK_THROWS_AS(produced_family(PrincipleId::S1, GroundSet{2}, bad),
                  TypeMismatch);

  // indexed forms accumulate one builder result per selected anchor
  std::vector<std::pair<SetFamily, Selection>> csfin_rounds = {
      {overlap, Selection::subfamily(0b11)}};
  SetFamily both = staralg::star_unions(overlap, Subset::of({0, 1}));
  both.insert_all(staralg::star_unions(overlap, Subset::of({1, 2})));
  CHECK(produced_family(PrincipleId::CSfin, g3, csfin_rounds) == both);

  std::vector<std::pair<SetFamily, Selection>> scsfin_rounds = {
      {overlap, Selection::point_set(Subset::of({0, 2}))}};
  SetFamily pts = staralg::star_unions_at(overlap, 0);
  pts.insert_all(staralg::star_unions_at(overlap, 2));
  CHECK(produced_family(PrincipleId::SCSfin, g3, scsfin_rounds) == pts);
}

// -- evaluation --------------------------------------------------------------------------

TEST_CASE("two rounds cover what one round cannot") {
  Instance inst = make_instance(2, {SetFamily::of({{0}, {1}})},
                                Collection::intensional(pred::cover()), 2);
  EvalResult two = evaluate(PrincipleId::S1, inst);
  CHECK(two.verdict == Verdict::Holds);
  REQUIRE(two.witness);
  CHECK(two.witness->produced == SetFamily::of({{0}, {1}}));
  CHECK(replay_witness(*two.witness, inst, Target::instance_b()));

  inst.horizon = 1;
  EvalResult one = evaluate(PrincipleId::S1, inst);
  CHECK(one.verdict == Verdict::Fails);
  REQUIRE(one.counterexample);
  CHECK(one.counterexample->family_indices == std::vector<int>{0});
}

TEST_CASE("star-union selection separates from the star principles") {
  SetFamily u = SetFamily::of({{0, 1}, {1, 2}});
  Collection b = Collection::extensional({SetFamily::of({{0, 1}, {1, 2}, {0, 1, 2}})});
  Instance inst = make_instance(3, {u}, b, 1);
  CHECK(evaluate(PrincipleId::CS1, inst).verdict == Verdict::Holds);
  CHECK(evaluate(PrincipleId::SS1Star, inst).verdict == Verdict::Fails);
  CHECK(evaluate(PrincipleId::S1Star, inst).verdict == Verdict::Fails);
}

TEST_CASE("a trivially accepting target holds for every principle") {
  Instance inst = make_instance(2, {SetFamily::of({{0}, {0, 1}})},
                                Collection::intensional(pred::true_()), 2);
  for (PrincipleId p : all_principles) {
    CAPTURE(to_string(p));
    CHECK(evaluate(p, inst).verdict == Verdict::Holds);
  }
}

TEST_CASE("empty round families fail element selection and are signalled") {
  Instance inst = make_instance(2, {SetFamily{}},
                                Collection::intensional(pred::true_()), 1);
  EvalResult r = evaluate(PrincipleId::S1, inst);
  CHECK(r.verdict == Verdict::Fails);
  CHECK(r.empty_selector_seen);
  // subfamily selection still has the empty choice and succeeds
  CHECK(evaluate(PrincipleId::Sfin, inst).verdict == Verdict::Holds);
}

TEST_CASE("an empty extensional kappa starves the strong star principle") {
  Instance inst = make_instance(2, {SetFamily::of({{0, 1}})},
                                Collection::intensional(pred::true_()), 1);
  inst.kappa = Kappa::extensional({});
  EvalResult r = evaluate(PrincipleId::SSStarK, inst);
  CHECK(r.verdict == Verdict::Fails);
  CHECK(r.empty_selector_seen);
}

TEST_CASE("step budget is enforced") {
  Instance inst = make_instance(4, {SetFamily::of({{0}, {1}, {2}, {3}})},
                                Collection::intensional(pred::false_()), 4);
  inst.limits.max_steps = 50;
  CHECK_THROWS_AS(evaluate(PrincipleId::Sfin, inst), BudgetExceeded);
}

TEST_CASE("evaluation agrees with the naive reference on random instances") {
  std::mt19937_64 rng(53);
  search::Budget budget;
  budget.max_n = 3;
  budget.max_family_size = 3;
  budget.max_a_size = 2;
  budget.max_b_size = 2;
  budget.max_horizon = 2;
  budget.seed = 97;
  budget.b_mode = search::Budget::BMode::Mixed;
  search::RandomInstanceStream stream(budget);
  for (int trial = 0; trial < 150; ++trial) {
    Instance inst = stream.next();
    PrincipleId p =
        all_principles[test_util::bounded(rng, std::size(all_principles))];
    CAPTURE(trial);
    CAPTURE(to_string(p));
    EvalResult r = evaluate(p, inst);
    auto failure = oracle_first_failure(p, inst);
    CHECK((r.verdict == Verdict::Holds) == !failure.has_value());
    if (failure) {
      REQUIRE(r.counterexample);
      CHECK(r.counterexample->family_indices == *failure);
    }
  }
}

TEST_CASE("witnesses replay and counterexamples admit no selection") {
  search::Budget budget;
  budget.max_n = 3;
  budget.max_family_size = 3;
  budget.max_a_size = 2;
  budget.max_b_size = 2;
  budget.max_horizon = 2;
  budget.seed = 101;
  budget.b_mode = search::Budget::BMode::Mixed;
  search::RandomInstanceStream stream(budget);
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 80; ++trial) {
    Instance inst = stream.next();
    PrincipleId p =
        all_principles[test_util::bounded(rng, std::size(all_principles))];
    EvalResult r = evaluate(p, inst);
    if (r.verdict == Verdict::Holds) {
      REQUIRE(r.witness);
      CHECK(replay_witness(*r.witness, inst, Target::instance_b()));
    } else {
      REQUIRE(r.counterexample);
      CHECK(!witness_for_sequence(p, inst, r.counterexample->family_indices,
                                  Target::instance_b(), EvalOptions::from(inst)));
    }
  }
}

TEST_CASE("cover targets are horizon monotone") {
  search::Budget budget;
  budget.max_n = 3;
  budget.max_family_size = 3;
  budget.max_a_size = 2;
  budget.max_horizon = 2;
  budget.seed = 103;
  budget.b_mode = search::Budget::BMode::CoverOnly;
  search::RandomInstanceStream stream(budget);
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 60; ++trial) {
    Instance inst = stream.next();
    inst.horizon = 1;
    PrincipleId p =
        all_principles[test_util::bounded(rng, std::size(all_principles))];
    if (evaluate(p, inst).verdict == Verdict::Holds) {
      Instance longer = inst;
      longer.horizon = 2;
      CAPTURE(to_string(p));
      CHECK(evaluate(p, longer).verdict == Verdict::Holds);
    }
  }
}

TEST_CASE("reports are byte stable across repeated evaluation") {
  SetFamily u = SetFamily::of({{0, 1}, {1, 2}});
  Instance inst = make_instance(3, {u, SetFamily::of({{2}})},
                                Collection::intensional(pred::cover()), 2);
  for (PrincipleId p : {PrincipleId::CS1, PrincipleId::Sfin, PrincipleId::SDSfin}) {
    EvalResult r1 = evaluate(p, inst);
    EvalResult r2 = evaluate(p, inst);
    CHECK(report::eval_report(p, r1, inst) == report::eval_report(p, r2, inst));
  }
}
