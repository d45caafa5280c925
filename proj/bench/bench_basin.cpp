#include <benchmark/benchmark.h>

#include "flv/basin.hpp"

namespace {

using namespace flv;

const basin::BasinProblem& problem() {
  static const auto p = basin::lotka_problem({{-1, -1, 1}, {9, 10}, {9, 10}}, 10.0, 0.05);
  return p;
}

basin::GridSpec grid(std::int64_t n) {
  const auto k = static_cast<std::size_t>(n);
  return {-4, 4, -4, 4, k, k};
}

void BM_ScanReference(benchmark::State& state) {
  const auto g = grid(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(basin::scan_basin_reference(problem(), g, {}));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

void BM_ScanParallel(benchmark::State& state) {
  const auto g = grid(state.range(0));
  basin::ScanConfig cfg;
  cfg.workers = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(basin::scan_basin(problem(), g, cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

}  // namespace

BENCHMARK(BM_ScanReference)->Arg(11)->Arg(21)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanParallel)->Args({11, 1})->Args({21, 1})->Args({21, 2})->Args({21, 4})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
