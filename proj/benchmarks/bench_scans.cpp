#include <benchmark/benchmark.h>

#include "collatz/generalized.hpp"
#include "collatz/strings.hpp"
#include "collatz/tree.hpp"

using namespace collatz;

static void BM_ScanStrings(benchmark::State& state) {
  const auto bound = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(scan_strings(bound));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * bound));
}
BENCHMARK(BM_ScanStrings)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);

static void BM_BuildTree(benchmark::State& state) {
  const auto k = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_tree(k, 2));
}
BENCHMARK(BM_BuildTree)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

static void BM_ForwardConvergence(benchmark::State& state) {
  const auto bound = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(forward_convergence_check(bound, 1));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * bound));
}
BENCHMARK(BM_ForwardConvergence)->Arg(100'000)->Unit(benchmark::kMillisecond);

static void BM_CycleSearch(benchmark::State& state) {
  const ShiftParam p{static_cast<std::uint64_t>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(cycle_search(p, 10'000));
}
BENCHMARK(BM_CycleSearch)->Arg(1)->Arg(5)->Unit(benchmark::kMillisecond);
