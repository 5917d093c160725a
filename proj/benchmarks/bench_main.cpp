#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "lockperiod/dp_optimizer.hpp"
#include "lockperiod/matching.hpp"
#include "lockperiod/rolling.hpp"

using namespace lockperiod;

namespace {

MatchingInstance noisy_instance(std::int64_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> jitter(-5, 5);
  MatchingInstance inst;
  for (std::int64_t i = 0; i < n; ++i) inst.arrivals.push_back(std::max<std::int64_t>(1, 30 * i + 15 + jitter(rng)));
  std::sort(inst.arrivals.begin(), inst.arrivals.end());
  inst.horizon = inst.arrivals.back();
  return inst;
}

void BM_SolveMatching(benchmark::State& state) {
  const auto inst = noisy_instance(state.range(0), 42);
  const auto k = state.range(1);
  for (auto _ : state) benchmark::DoNotOptimize(solve_matching(inst, k).cost);
}
BENCHMARK(BM_SolveMatching)->Args({20, 1})->Args({20, 2})->Args({30, 2})->Args({20, 3})->Unit(benchmark::kMillisecond);

// Hyper-period grows with the product of the periodicities.
void BM_DpSolve(benchmark::State& state) {
  const auto l = state.range(0);
  const PeriodicInstance inst{{{Direction::Down, l, 1}, {Direction::Up, l + 1, 2}, {Direction::Down, 3, 2}}};
  for (auto _ : state) benchmark::DoNotOptimize(solve(inst).avg_cost);
  state.SetComplexityN(8 * lcm_period(inst));
}
BENCHMARK(BM_DpSolve)->DenseRange(4, 16, 4)->Complexity(benchmark::oN)->Unit(benchmark::kMillisecond);

void BM_RollingGenerate(benchmark::State& state) {
  const PeriodicInstance inst{{{Direction::Down, 7, 3}, {Direction::Up, 11, 5}, {Direction::Up, 13, 1}}};
  const double eps = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(generate(inst, 1, 10, eps).total_cost);
}
BENCHMARK(BM_RollingGenerate)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
