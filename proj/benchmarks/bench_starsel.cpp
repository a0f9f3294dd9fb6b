#include <benchmark/benchmark.h>

#include <random>

#include "starsel/principles.hpp"
#include "starsel/search.hpp"
#include "starsel/staralg.hpp"
#include "starsel/theorems.hpp"

using namespace starsel;

namespace {

SetFamily wide_family(int n, int members) {
  std::mt19937_64 rng(17);
  std::vector<Subset> out;
  for (int i = 0; i < members; ++i)
    out.push_back(Subset(static_cast<std::uint32_t>(rng() % (1u << n))));
  return SetFamily(std::move(out));
}

void BM_star(benchmark::State& state) {
  SetFamily u = wide_family(12, 16);
  Subset a = Subset::of({3, 7});
  for (auto _ : state) benchmark::DoNotOptimize(staralg::star(a, u));
}
BENCHMARK(BM_star);

void BM_star_unions_sweep(benchmark::State& state) {
  const int members = static_cast<int>(state.range(0));
  SetFamily u = wide_family(12, members);
  Subset sel = Subset::of({0, 5, 9});
  for (auto _ : state) benchmark::DoNotOptimize(staralg::star_unions(u, sel));
  state.SetComplexityN(members);
}
BENCHMARK(BM_star_unions_sweep)->Arg(8)->Arg(12)->Arg(16);

void BM_evaluate_subfamily_search(benchmark::State& state) {
  Instance inst;
  inst.ground = GroundSet{4};
  inst.a = Collection::extensional({wide_family(4, 6), wide_family(4, 5)});
  inst.b = Collection::intensional(pred::cover());
  inst.horizon = 2;
  for (auto _ : state)
    benchmark::DoNotOptimize(
        principles::evaluate(principles::PrincipleId::SfinStar, inst));
}
BENCHMARK(BM_evaluate_subfamily_search);

void BM_duality_check(benchmark::State& state) {
  search::Budget budget;
  budget.max_n = 3;
  budget.max_family_size = 3;
  budget.max_a_size = 2;
  budget.max_b_size = 2;
  budget.max_horizon = 2;
  budget.seed = 23;
  budget.b_mode = search::Budget::BMode::Mixed;
  search::RandomInstanceStream stream(budget);
  std::vector<Instance> corpus;
  for (int i = 0; i < 20; ++i) corpus.push_back(stream.next());
  for (auto _ : state)
    benchmark::DoNotOptimize(
        theorems::check_theorem(theorems::TheoremId::T3_7, corpus));
}
BENCHMARK(BM_duality_check);

}  // namespace

BENCHMARK_MAIN();
