#pragma once

#include <string>
#include <vector>

namespace lacelab {

// Scalar sequence g_0..g_{n_max} with the Delta-difference seminorm
// ||g|| = sum_n |(Delta g)_n|, (Delta g)_0 = g_0, (Delta g)_n = g_n - g_{n-1}.
struct RealSequence {
  std::vector<double> values;

  static RealSequence ones(int n_max);
  int n_max() const { return static_cast<int>(values.size()) - 1; }
  double delta_norm() const;
  double sup_norm() const;
  double delta_distance(const RealSequence& other) const;
};

// Kernel masses b_m, m = 1..m_max (b_1 is conventionally 0), with
// beta = sum_m m |b_m| over the stored range.
struct KernelSequence {
  std::vector<double> b;  // index by m; b[0] unused

  static KernelSequence zeros(int m_max);
  int m_max() const { return static_cast<int>(b.size()) - 1; }
  double at(int m) const {
    return (m >= 1 && m <= m_max()) ? b[static_cast<std::size_t>(m)] : 0.0;
  }
  double beta() const;
};

// Power-law tail estimate |b_m| ~ C m^{-p} fitted on the stored range,
// used to report what the finite truncation of the infinite kernel sums
// leaves out.
struct KernelTail {
  bool fitted = false;
  double exponent = 0.0;     // p
  double coefficient = 0.0;  // C
  double tail_abs_b = 0.0;   // est. sum_{m > m_max} |b_m|
  double tail_m_abs_b = 0.0; // est. sum_{m > m_max} m |b_m|
};
KernelTail kernel_tail_estimate(const KernelSequence& kernel);

// The sequence operator of the Banach iteration:
//   g~_0 = g_0,
//   g~_n = g~_{n-1} - lambda [ sum_{m=2}^n g_m b_m (g_{n-1} - g_{n-m})
//                              + g_{n-1} sum_{j=n+1} g_j b_j ].
// The tail sum starts at j = n+1; a fixed point then satisfies the mass
// recursion a_n = (1 - lambda rho) a_{n-1} + lambda sum a_m b_m a_{n-m}
// exactly. All sums are truncated at m_max.
RealSequence tilde_map(const RealSequence& g, const KernelSequence& kernel, double lambda);

// Largest lambda with the explicit contraction guarantee,
// lambda <= 1/(6 beta L) at L = 3/2.
double lambda_admissible_max(const KernelSequence& kernel);

struct SolveOptions {
  double tol = 1e-12;
  int max_sweeps = 10000;
  bool force = false;  // permit lambda outside the guaranteed regime
};

struct SolveResult {
  RealSequence a;
  int sweeps = 0;
  double final_distance = 0.0;   // Delta-norm distance of the last sweep
  double max_contraction = 0.0;  // max ratio of consecutive sweep distances
  double max_residual = 0.0;     // worst per-n residual of the mass recursion
  bool converged = false;
  bool admissible = false;
  double lambda_max = 0.0;
};

// Banach iteration of tilde_map from (1,1,...).
// Rejects lambda outside the contraction regime unless options.force;
// throws std::runtime_error if the iteration expands
// (non-contraction diagnostic).
SolveResult solve_mass_sequence(const KernelSequence& kernel, double lambda, int n_max,
                                const SolveOptions& options = {});
SolveResult solve_mass_sequence_from(const RealSequence& start, const KernelSequence& kernel,
                                     double lambda, const SolveOptions& options = {});

// mu = step_mass / (1 - lambda rho), alpha = 1 / (1 + lambda sigma) with
// rho = sum a_m b_m and sigma = sum (m-1) a_m b_m.
struct MassConstants {
  double mu = 0.0;
  double alpha = 0.0;
  double rho = 0.0;
  double sigma = 0.0;
  double tail_rho = 0.0;    // estimated truncation tail of rho
  double tail_sigma = 0.0;  // estimated truncation tail of sigma
};
MassConstants connective_alpha(const RealSequence& a, const KernelSequence& kernel, double lambda,
                               double step_mass);

// Empirical decay-rate constants: sup_n |(Delta a)_n| n^{1+eps} and
// sup_n |alpha - a_n| n^eps, after verifying |b_m| <= beta' m^{-2-eps}.
struct RateReport {
  double eps = 0.0;
  double beta_prime = 0.0;
  bool kernel_decay_ok = false;
  double sup_delta_scaled = 0.0;
  double sup_limit_gap_scaled = 0.0;
};
RateReport rate_check(const RealSequence& a, const KernelSequence& kernel, double eps,
                      double beta_prime, double alpha);

}  // namespace lacelab
