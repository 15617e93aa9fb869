#include <benchmark/benchmark.h>

#include "lacelab/measure.hpp"
#include "lacelab/walks.hpp"

using namespace lacelab;

static void BM_ConvolvePowerD(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const int n = static_cast<int>(state.range(1));
  const auto step = step_distribution<double>(dim);
  for (auto _ : state) {
    auto power = convolve_power(step, n);
    benchmark::DoNotOptimize(power.mass());
  }
}
BENCHMARK(BM_ConvolvePowerD)->Args({2, 24})->Args({5, 10})->Unit(benchmark::kMillisecond);

static void BM_ConvolveExact(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto step = step_distribution<Rational>(2);
  for (auto _ : state) {
    auto power = convolve_power(step, n);
    benchmark::DoNotOptimize(power.size());
  }
}
BENCHMARK(BM_ConvolveExact)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);
