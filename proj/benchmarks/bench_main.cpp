#include <benchmark/benchmark.h>

#include "generators.hpp"
#include "imc/imc.hpp"
#include "models.hpp"

namespace {

using imc::testing::Rng;

imc::UpperTransitionOperator interval_operator(std::size_t n, Rng& rng) {
  auto space = imc::StateSpace::numbered(n);
  std::vector<imc::UncertaintyModel> rows;
  for (std::size_t x = 0; x < n; ++x) rows.push_back(imc::testing::random_interval(space, rng));
  return imc::UpperTransitionOperator(space, std::move(rows));
}

void BM_ApplyIntervalRows(benchmark::State& state) {
  Rng rng(7);
  const auto n = static_cast<std::size_t>(state.range(0));
  auto op = interval_operator(n, rng);
  auto h = imc::testing::random_gamble(op.space(), rng);
  for (auto _ : state) benchmark::DoNotOptimize(imc::apply(op, h));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ApplyIntervalRows)->RangeMultiplier(2)->Range(4, 128)->Complexity();

void BM_PerronFrobeniusIntervalCycle(benchmark::State& state) {
  auto op = imc::testing::interval_cycle();
  auto h = imc::Gamble::indicator(imc::testing::three_states(), 0);
  for (auto _ : state) benchmark::DoNotOptimize(imc::invariant_upper_expectation(op, h, 1e-12));
}
BENCHMARK(BM_PerronFrobeniusIntervalCycle);

void BM_VertexEnumeration(benchmark::State& state) {
  Rng rng(11);
  auto space = imc::StateSpace::numbered(static_cast<std::size_t>(state.range(0)));
  std::vector<imc::Halfspace> halfspaces;
  for (int i = 0; i < state.range(1); ++i) {
    auto centre = imc::testing::random_mass(space, rng, 0.0);
    auto g = imc::testing::random_gamble(space, rng);
    halfspaces.push_back({g, imc::expectation(centre, g) + 0.1});
  }
  for (auto _ : state) benchmark::DoNotOptimize(imc::enumerate_vertices(space, halfspaces));
}
BENCHMARK(BM_VertexEnumeration)->Args({3, 4})->Args({4, 6})->Args({5, 8})->Args({6, 10});

void BM_SetChainFold(benchmark::State& state) {
  Rng rng(13);
  auto op = interval_operator(static_cast<std::size_t>(state.range(0)), rng);
  auto set = imc::extreme_matrices(op);
  auto h = imc::testing::random_gamble(op.space(), rng);
  for (auto _ : state) benchmark::DoNotOptimize(imc::max_product_expectation(set, h, 10, 0));
  state.counters["matrices"] = static_cast<double>(set.size());
}
BENCHMARK(BM_SetChainFold)->DenseRange(2, 4);

void BM_ReliabilityFailureBounds(benchmark::State& state) {
  imc::ReliabilitySpec spec{5, static_cast<std::size_t>(state.range(0)), 0.9, 0.95};
  for (auto _ : state) benchmark::DoNotOptimize(imc::failure_bounds(spec));
}
BENCHMARK(BM_ReliabilityFailureBounds)->Arg(30)->Arg(300);

}  // namespace

BENCHMARK_MAIN();
