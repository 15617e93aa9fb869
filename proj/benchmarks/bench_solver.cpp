#include <benchmark/benchmark.h>

#include <cmath>

#include "lacelab/local_fp.hpp"
#include "lacelab/scalar_fp.hpp"

using namespace lacelab;

static void BM_SolveMassSequence(benchmark::State& state) {
  const int n_max = static_cast<int>(state.range(0));
  auto kernel = KernelSequence::zeros(n_max);
  for (int m = 2; m <= n_max; ++m)
    kernel.b[static_cast<std::size_t>(m)] = (m % 2 ? 0.2 : -0.2) * std::pow(m, -2.5);
  const double lambda = 0.5 / (9.0 * kernel.beta());
  for (auto _ : state) {
    auto result = solve_mass_sequence(kernel, lambda, n_max);
    benchmark::DoNotOptimize(result.a.values.data());
  }
}
BENCHMARK(BM_SolveMassSequence)->Arg(64)->Arg(256)->Arg(1024);

static void BM_ControlTable(benchmark::State& state) {
  const int n_top = static_cast<int>(state.range(0));
  std::vector<int> ns;
  for (int n = 2; n <= n_top; ++n) ns.push_back(n);
  for (auto _ : state) {
    auto table = control_group_table(5, ns, 0.8, 0);
    benchmark::DoNotOptimize(table.sup_ratio.size());
  }
}
BENCHMARK(BM_ControlTable)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  return 0;
}
