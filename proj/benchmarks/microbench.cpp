#include <benchmark/benchmark.h>

#include "awake/augmentation.hpp"
#include "awake/fractional.hpp"
#include "awake/mis.hpp"
#include "awake/oracles.hpp"

namespace {

using namespace awake;

Graph sparse(std::size_t n) { return gen_gnp(n, 10.0 / static_cast<double>(n), 1); }

void BM_AwakeMis(benchmark::State& state) {
  const Graph g = sparse(static_cast<std::size_t>(state.range(0)));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(awake_mis(g, ++seed).set.size());
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_AwakeMis)->RangeMultiplier(4)->Range(1 << 10, 1 << 14)->Unit(benchmark::kMillisecond)->Complexity();

void BM_Luby(benchmark::State& state) {
  const Graph g = sparse(static_cast<std::size_t>(state.range(0)));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(luby_mis(g, ++seed).set.size());
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Luby)->RangeMultiplier(4)->Range(1 << 10, 1 << 14)->Unit(benchmark::kMillisecond)->Complexity();

void BM_VanillaFractional(benchmark::State& state) {
  const Graph g = sparse(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(vanilla_fractional(g, Epsilon(1, 20)).total());
}
BENCHMARK(BM_VanillaFractional)->RangeMultiplier(4)->Range(1 << 8, 1 << 12)->Unit(benchmark::kMillisecond);

void BM_SampledFractional(benchmark::State& state) {
  const Graph g = sparse(static_cast<std::size_t>(state.range(0)));
  SampleParams params;
  params.stop_phase = 1000;
  params.forced_probabilities = {0.25, 0.5};
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sampled_fractional(g, Epsilon(1, 20), params, ++seed).rounds);
}
BENCHMARK(BM_SampledFractional)->RangeMultiplier(4)->Range(1 << 8, 1 << 12)->Unit(benchmark::kMillisecond);

void BM_Rounding(benchmark::State& state) {
  const Graph g = sparse(static_cast<std::size_t>(state.range(0)));
  const FractionalAssignment a = vanilla_fractional(g, Epsilon(1, 20));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(round_matching(a, ++seed).size());
}
BENCHMARK(BM_Rounding)->RangeMultiplier(4)->Range(1 << 8, 1 << 14);

void BM_GeneralAmplifyGreedy(benchmark::State& state) {
  const Graph g = sparse(static_cast<std::size_t>(state.range(0)));
  const MatchBox box = MatchBox::greedy_maximal();
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(general_one_plus_eps(g, box, 0.25, ++seed).matching.size());
}
BENCHMARK(BM_GeneralAmplifyGreedy)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_ExactMaxMatchingBipartite(benchmark::State& state) {
  const BipartiteGraph b = gen_bipartite(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(0)),
                                         8.0 / static_cast<double>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(max_matching_bipartite(b.graph, b.right).size());
}
BENCHMARK(BM_ExactMaxMatchingBipartite)->RangeMultiplier(4)->Range(1 << 8, 1 << 12);

}  // namespace

BENCHMARK_MAIN();
