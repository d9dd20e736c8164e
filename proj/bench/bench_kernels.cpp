#include <benchmark/benchmark.h>

#include "hypdisk/fixedpoints.hpp"
#include "hypdisk/selfmap.hpp"
#include "hypdisk/verifiers.hpp"

using namespace hypdisk;

namespace {

Execution mode(const benchmark::State& state) { return state.range(0) ? Execution::parallel : Execution::serial; }

void BM_SchwarzPickSweep(benchmark::State& state) {
  const SelfMap f = catalog::cubed_blaschke();
  const GridOptions grid{static_cast<int>(state.range(1)), 42, mode(state)};
  for (auto _ : state) benchmark::DoNotOptimize(check_schwarz_pick(f, grid).worst_margin);
  state.SetItemsProcessed(state.iterations() * state.range(1));
}

void BM_BoundaryScan(benchmark::State& state) {
  const SelfMap f = catalog::cubed_blaschke();
  for (auto _ : state) benchmark::DoNotOptimize(boundary_fixed_points(f, static_cast<int>(state.range(1)), mode(state)));
}

void BM_Validation(benchmark::State& state) {
  const SelfMap f = catalog::cubic_tangent();
  for (auto _ : state) benchmark::DoNotOptimize(validate_selfmap(f, static_cast<int>(state.range(1)), mode(state)));
}

}  // namespace

BENCHMARK(BM_SchwarzPickSweep)->ArgsProduct({{0, 1}, {1 << 10, 1 << 14}})->ArgNames({"parallel", "n"});
BENCHMARK(BM_BoundaryScan)->ArgsProduct({{0, 1}, {4096, 1 << 15}})->ArgNames({"parallel", "n"});
BENCHMARK(BM_Validation)->ArgsProduct({{0, 1}, {4096, 1 << 16}})->ArgNames({"parallel", "n"});

BENCHMARK_MAIN();
