#include <benchmark/benchmark.h>

#include <random>

#include "agv/bounds.hpp"
#include "agv/codesearch.hpp"

using namespace agv;

static void BM_BallSum(benchmark::State& state) {
  const auto n = unsigned(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ball_sum(n, 2, int(n / 4)));
}
BENCHMARK(BM_BallSum)->Arg(64)->Arg(256)->Arg(1024);

static void BM_CssBound(benchmark::State& state) {
  const auto n = unsigned(state.range(0));
  const CssBoundQuery q{2, n, n / 2 + 1, n / 4, n / 10 + 1, n / 10 + 1};
  for (auto _ : state) benchmark::DoNotOptimize(css_gv_lhs(q));
}
BENCHMARK(BM_CssBound)->Arg(64)->Arg(256);

static void BM_MaxKStab(benchmark::State& state) {
  const auto n = unsigned(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(max_k_stab(n, 2, n / 10 + 1, n / 10 + 1));
}
BENCHMARK(BM_MaxKStab)->Arg(64)->Arg(128);

static void BM_RowSpace(benchmark::State& state) {
  const auto n = std::size_t(state.range(0));
  std::mt19937_64 rng(1);
  std::vector<Residue> m(n * n);
  for (auto& e : m) e = Residue(rng() % 3);
  for (auto _ : state) benchmark::DoNotOptimize(row_space(Field(3), n, m));
}
BENCHMARK(BM_RowSpace)->Arg(16)->Arg(64)->Arg(128);

static void BM_CssDistances(benchmark::State& state) {
  const auto n = unsigned(state.range(0));
  const auto pair = random_nested_pair(n, 2, n / 2 + 1, n / 4, 7);
  for (auto _ : state) benchmark::DoNotOptimize(css_distances(pair));
}
BENCHMARK(BM_CssDistances)->Arg(12)->Arg(20);

static void BM_EnumerateNestedPairs(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_nested_pairs(5, 2, 3, 1));
}
BENCHMARK(BM_EnumerateNestedPairs);

static void BM_WitnessSearch(benchmark::State& state) {
  const CssBoundQuery q{2, 12, 7, 5, 2, 2};
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(gv_witness_search(q, {100, ++seed, 1}));
}
BENCHMARK(BM_WitnessSearch);

BENCHMARK_MAIN();
