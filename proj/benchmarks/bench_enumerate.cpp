#include <benchmark/benchmark.h>

#include "lacelab/lace_functions.hpp"
#include "lacelab/walks.hpp"

using namespace lacelab;

static void BM_ConnectivityHist(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const int n = static_cast<int>(state.range(1));
  for (auto _ : state) {
    auto hist = enumerate_connectivity_hist(dim, n);
    benchmark::DoNotOptimize(hist.size());
  }
}
BENCHMARK(BM_ConnectivityHist)
    ->Args({2, 10})
    ->Args({3, 8})
    ->Args({5, 6})
    ->Unit(benchmark::kMillisecond);

static void BM_PiHist(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const int m = static_cast<int>(state.range(1));
  for (auto _ : state) {
    auto hist = enumerate_pi_hist(dim, m);
    benchmark::DoNotOptimize(hist.per_edge_count.size());
  }
}
BENCHMARK(BM_PiHist)->Args({2, 8})->Args({5, 6})->Unit(benchmark::kMillisecond);

static void BM_HistogramEvaluate(benchmark::State& state) {
  const auto hist = enumerate_connectivity_hist(2, 10);
  const Rational lambda(1, 10);
  for (auto _ : state) {
    auto c = evaluate_histogram(hist, 2, lambda, Parity::kEven);
    benchmark::DoNotOptimize(c.size());
  }
}
BENCHMARK(BM_HistogramEvaluate)->Unit(benchmark::kMillisecond);
