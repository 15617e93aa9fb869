#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "lacelab/scalar_fp.hpp"

using namespace lacelab;

namespace {

KernelSequence single_entry_kernel(int m_max, int m, double value) {
  auto k = KernelSequence::zeros(m_max);
  k.b[static_cast<std::size_t>(m)] = value;
  return k;
}

}  // namespace

TEST_CASE("delta seminorm dominates the sup norm") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 200; ++trial) {
    RealSequence g;
    for (int n = 0; n < 20; ++n) g.values.push_back(u(rng));
    CHECK(g.sup_norm() <= g.delta_norm() + 1e-12);
  }
}

TEST_CASE("tilde map degenerates for b = 0 or lambda = 0") {
  RealSequence g;
  g.values = {1.0, 0.7, 1.3, 0.9};
  auto zero = KernelSequence::zeros(8);
  auto gz = tilde_map(g, zero, 0.5);
  for (double v : gz.values) CHECK(v == 1.0);  // constant at g_0
  auto kernel = single_entry_kernel(8, 2, -0.1);
  auto gl = tilde_map(g, kernel, 0.0);
  for (double v : gl.values) CHECK(v == 1.0);
}

TEST_CASE("tilde map hand value at n = 1") {
  // g = (1,1,...), b_2 = -0.1, lambda = 0.5: only the tail sum contributes,
  // g~_1 = 1 - 0.5 * (1 * (-0.1)) = 1.05.
  auto g = RealSequence::ones(6);
  auto kernel = single_entry_kernel(6, 2, -0.1);
  auto gt = tilde_map(g, kernel, 0.5);
  CHECK(gt.values[0] == 1.0);
  CHECK(gt.values[1] == doctest::Approx(1.05).epsilon(1e-15));
}

TEST_CASE("fixed point of the zero kernel is the constant sequence") {
  auto result = solve_mass_sequence(KernelSequence::zeros(16), 0.3, 16);
  CHECK(result.converged);
  for (double v : result.a.values) CHECK(v == 1.0);
  CHECK(result.max_residual == 0.0);
}

TEST_CASE("solver rejects lambda outside the contraction regime") {
  auto kernel = single_entry_kernel(8, 2, -0.5);  // beta = 1
  CHECK(lambda_admissible_max(kernel) == doctest::Approx(1.0 / 9.0));
  CHECK_THROWS_AS(solve_mass_sequence(kernel, 0.2, 8), std::invalid_argument);
  SolveOptions forced;
  forced.force = true;
  auto result = solve_mass_sequence(kernel, 0.2, 8, forced);  // still converges here
  CHECK(result.converged);
}

TEST_CASE("contraction, residual and a-priori bounds on a synthetic kernel") {
  auto kernel = KernelSequence::zeros(24);
  for (int m = 2; m <= 24; ++m)
    kernel.b[static_cast<std::size_t>(m)] = (m % 2 ? 0.3 : -0.3) * std::pow(m, -2.5);
  const double lambda = 0.9 / (9.0 * kernel.beta());
  auto result = solve_mass_sequence(kernel, lambda, 24);
  CHECK(result.converged);
  CHECK(result.admissible);
  CHECK(result.max_contraction <= 2.0 / 3.0);
  CHECK(result.max_residual < 1e-10);
  for (double v : result.a.values) {
    CHECK(v >= 0.5);
    CHECK(v <= 1.5);
  }
  CHECK(result.a.delta_norm() <= 1.5);
}

TEST_CASE("uniqueness: distinct admissible starts reach the same fixed point") {
  auto kernel = KernelSequence::zeros(20);
  for (int m = 2; m <= 20; ++m) kernel.b[static_cast<std::size_t>(m)] = -0.2 * std::pow(m, -3.0);
  const double lambda = 0.5 / (9.0 * kernel.beta());
  auto from_ones = solve_mass_sequence(kernel, lambda, 20);
  RealSequence start = RealSequence::ones(20);
  for (int n = 1; n <= 20; ++n) start.values[static_cast<std::size_t>(n)] = 1.0 + 0.3 / (n + 1.0);
  REQUIRE(start.delta_norm() <= 1.5);
  auto from_other = solve_mass_sequence_from(start, kernel, lambda);
  CHECK(from_ones.a.delta_distance(from_other.a) < 1e-9);
}

TEST_CASE("connective constant and limit for degenerate kernels") {
  auto a = RealSequence::ones(12);
  auto consts = connective_alpha(a, KernelSequence::zeros(12), 0.4, 10.0);
  CHECK(consts.mu == 10.0);
  CHECK(consts.alpha == 1.0);
  CHECK(consts.rho == 0.0);
  CHECK(consts.tail_rho == 0.0);
}

TEST_CASE("rate check: zero kernel, synthetic decay, and the hypothesis gate") {
  auto zero = KernelSequence::zeros(12);
  auto solved = solve_mass_sequence(zero, 0.3, 12);
  auto report = rate_check(solved.a, zero, 0.5, 1.0, 1.0);
  CHECK(report.sup_delta_scaled == 0.0);
  CHECK(report.sup_limit_gap_scaled == 0.0);

  auto kernel = KernelSequence::zeros(32);
  for (int m = 2; m <= 32; ++m) kernel.b[static_cast<std::size_t>(m)] = 0.4 * std::pow(m, -3.0);
  const double lambda = 0.5 / (9.0 * kernel.beta());
  auto result = solve_mass_sequence(kernel, lambda, 32);
  auto consts = connective_alpha(result.a, kernel, lambda, 2.0);
  auto rate = rate_check(result.a, kernel, 1.0, 0.5, consts.alpha);
  CHECK(rate.kernel_decay_ok);
  CHECK(std::isfinite(rate.sup_delta_scaled));
  CHECK(rate.sup_delta_scaled > 0.0);

  // kernel violating its own decay hypothesis is rejected
  CHECK_THROWS_AS(rate_check(result.a, kernel, 1.0, 0.001, consts.alpha), std::runtime_error);
}

TEST_CASE("tail estimate recovers a power law") {
  auto kernel = KernelSequence::zeros(40);
  for (int m = 2; m <= 40; ++m) kernel.b[static_cast<std::size_t>(m)] = 2.0 * std::pow(m, -3.0);
  auto tail = kernel_tail_estimate(kernel);
  REQUIRE(tail.fitted);
  CHECK(tail.exponent == doctest::Approx(3.0).epsilon(0.01));
  // true tail: sum_{m>40} 2 m^{-2} ~ 2/40
  CHECK(tail.tail_m_abs_b == doctest::Approx(0.05).epsilon(0.1));
}
