#include <numbers>
#include <vector>

#include <benchmark/benchmark.h>

#include "chronopath/amplitude.hpp"
#include "chronopath/kernels.hpp"
#include "chronopath/peaks.hpp"

using namespace chronopath;

namespace {

constexpr double kTheta = 2.23 * std::numbers::pi;

void BM_PrefixSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(kernels::product_prefix_serial(kTheta, state.range(0)));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_PrefixParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(kernels::product_prefix_parallel(kTheta, state.range(0)));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

std::vector<ModelParams> sweep_grid() {
  std::vector<ModelParams> grid;
  for (double t : {2.1, 2.23, 2.5, 2.9, 3.3, 3.7})
    for (std::int64_t n : {1000, 4600, 20000}) grid.push_back(ModelParams::from_theta(t * std::numbers::pi + 1e-7, n));
  return grid;
}

void BM_SweepSerial(benchmark::State& state) {
  const auto grid = sweep_grid();
  for (auto _ : state) benchmark::DoNotOptimize(sweep_peaks(grid, Execution::Serial));
}

void BM_SweepParallel(benchmark::State& state) {
  const auto grid = sweep_grid();
  for (auto _ : state) benchmark::DoNotOptimize(sweep_peaks(grid, Execution::Parallel));
}

}  // namespace

BENCHMARK(BM_PrefixSerial)->Arg(10000)->Arg(100000)->Arg(1000000);
BENCHMARK(BM_PrefixParallel)->Arg(10000)->Arg(100000)->Arg(1000000);
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
