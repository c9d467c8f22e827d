#include <benchmark/benchmark.h>

#include "collatz/maps.hpp"

using namespace collatz;

static void BM_ConjugateStep(benchmark::State& state) {
  std::uint64_t x = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(conjugate_step(Position{x}));
    x = x % 1'000'000 + 1;
  }
}
BENCHMARK(BM_ConjugateStep);

static void BM_ClassicalRoute(benchmark::State& state) {
  std::uint64_t x = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(to_position(accelerated_step(to_odd(Position{x})).next));
    x = x % 1'000'000 + 1;
  }
}
BENCHMARK(BM_ClassicalRoute);

static void BM_StringPreimage(benchmark::State& state) {
  std::uint64_t x = 3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(string_preimage(Position{x}));
    x += 3;
  }
}
BENCHMARK(BM_StringPreimage);

static void BM_RaiseAndStrip(benchmark::State& state) {
  const auto depth = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(strip_equivalents(raise_equivalent(Position{6}, depth)));
}
BENCHMARK(BM_RaiseAndStrip)->Arg(8)->Arg(60)->Arg(200);

static void BM_NatMultiply(benchmark::State& state) {
  const Nat a = Nat::pow(3, static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(a * a);
}
BENCHMARK(BM_NatMultiply)->Arg(30)->Arg(70)->Arg(300);
