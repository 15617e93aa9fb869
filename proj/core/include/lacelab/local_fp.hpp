#pragma once

#include <map>
#include <string>
#include <vector>

#include "lacelab/gaussian.hpp"
#include "lacelab/lace_functions.hpp"
#include "lacelab/measure.hpp"
#include "lacelab/scalar_fp.hpp"
#include "lacelab/walks.hpp"

namespace lacelab {

using MeasureSequence = std::vector<SignedMeasure<double>>;

// Error envelope of the local estimates:
//   chi_n(x) = n^{-1/2} phi_{n nu}(x) + n^{-d/2} sum_{j=1}^{floor(n/2)} j phi_{j nu}(x).
double chi_weight(int n, const Point& x, double nu);

// Gaussian diagram envelope of the lace-function bounds:
//   psi_m(x) = m^{-d/2} sum_{k=1}^{floor(m/2)} k^{1-d/2} phi_{k nu}(x).
double psi_weight(int m, const Point& x, double nu);

// mu, alpha, delta, rho, sigma, tau bundle with truncation-tail estimates.
struct DerivedConstants {
  int dim = 0;
  double lambda = 0.0;
  double step_mass = 0.0;  // mass of one unnormalized step (2d for the SAW)
  double s_bar = 0.0;      // second moment of the reference step law S
  double rho = 0.0, sigma = 0.0, tau = 0.0;
  double mu = 0.0, alpha = 0.0, delta = 0.0;
  double nu = 0.0;
  double beta_nu = 0.0;
  bool delta_window_ok = false;  // s_bar/2 <= d delta <= 2 s_bar
  bool s_bar_warning = false;    // s_bar < 1: outside the calibrated regime
  double tail_rho = 0.0, tail_sigma = 0.0, tail_tau = 0.0;
  double tail_delta = 0.0;  // first-order propagation of the three tails
};

// Diffusion constant delta = (s_bar (1 - lambda rho) + lambda tau) / (d (1 + lambda sigma)),
// with rho/sigma from the kernel masses and tau from the kernel second moments.
// B is indexed by m; entries below m = 2 are ignored.
DerivedConstants diffusion_constant(const SignedMeasure<double>& S, const RealSequence& a,
                                    const MeasureSequence& B, double lambda, double step_mass);

// The direct pi-series forms of the same constants:
//   2d/mu = 1 - sum pi_m mu^-m,  1/alpha = 1 + sum (m-1) pi_m mu^-m,
//   delta = (1 - sum (pi_m - pi_bar_m) mu^-m) / (d (1 + sum (m-1) pi_m mu^-m)).
// pi_mass/pi_moment are indexed by m (entries below 2 ignored).
struct PiSeriesConstants {
  double mu = 0.0;
  double alpha = 0.0;
  double delta = 0.0;
  int iterations = 0;  // fixed-point sweeps of the implicit mu equation
};
PiSeriesConstants constants_from_pi(const std::vector<double>& pi_mass,
                                    const std::vector<double>& pi_moment, int dim);

// Probability measure E in M with second moment exactly d*delta and range
// at most l+1, built by shifting mass from S. The aperiodic variant places
// deficit mass at 0; the two-periodic variant redistributes between the
// unit shell and an odd-parity shell (permutations of (2,1,0,...) for
// d >= 2, {+-3 e1} for d = 1).
struct StepLawE {
  SignedMeasure<double> E;
  double weight_shifted = 0.0;
  std::string construction;  // which shell carried the shift
};
StepLawE build_E(const SignedMeasure<double>& S, double delta, bool periodic);

// A_0 = delta_0; A_n = step_factor * S*A_{n-1} + sum_m coef_m * K_m * A_{n-m}.
// Kernels are indexed by m (entries 0 and 1 unused).
template <class T>
std::vector<SignedMeasure<T>> evolve_measure_recursion(
    const SignedMeasure<T>& S, const T& step_factor,
    const std::vector<std::pair<T, SignedMeasure<T>>>& kernels, int n_max) {
  std::vector<SignedMeasure<T>> a_seq;
  a_seq.reserve(static_cast<std::size_t>(n_max) + 1);
  a_seq.push_back(SignedMeasure<T>::delta(S.dim()));
  for (int n = 1; n <= n_max; ++n) {
    SignedMeasure<T> next = convolve(S, a_seq.back()).scaled(step_factor);
    const int top = std::min<int>(n, static_cast<int>(kernels.size()) - 1);
    for (int m = 2; m <= top; ++m) {
      const auto& [coef, km] = kernels[static_cast<std::size_t>(m)];
      if (scalar_traits<T>::is_zero(coef) || km.empty()) continue;
      next.add_scaled(convolve(km, a_seq[static_cast<std::size_t>(n - m)]), coef);
    }
    a_seq.push_back(std::move(next));
  }
  return a_seq;
}

// The measure recursion with step_factor = step_mass/mu = 1 - lambda rho
// and coefficients lambda a_m. Summing over x shows mass(A_n) = a_n, so a
// deviation beyond mass_tol is a hard failure.
struct EvolveResult {
  MeasureSequence A;
  double max_mass_error = 0.0;
  double step_factor = 0.0;  // s~/mu = 1 - lambda rho
  double mu = 0.0;
};
EvolveResult evolve_A(const SignedMeasure<double>& S, const MeasureSequence& B,
                      const RealSequence& a, double lambda, double step_mass, int n_max,
                      double mass_tol = 1e-10);

struct ErrorRow {
  int n = 0;
  Point x;
  double lhs = 0.0;    // |A_n(x) - a_n phi_{n delta}(x)| (doubled in the periodic case)
  double bound = 0.0;  // chi_n(x)
  double ratio = 0.0;
};

struct CltTable {
  bool periodic = false;
  double nu = 0.0;
  double delta = 0.0;
  std::map<int, double> sup_ratio;      // per-n empirical envelope constant
  std::map<int, ErrorRow> sup_row;      // the argmax row per n
  std::vector<ErrorRow> rows;           // top rows per n (by ratio), capped
  int rows_per_n = 0;                   // cap used when collecting rows
};

// Local-estimate table: for each n and each x in the support window
// (support of A_n above 1e-15 plus the box |x|_inf <= ceil(4 sqrt(n delta))),
// lhs vs the K-free chi_n envelope. In the two-periodic case only
// parity-matched x enter and the density is doubled. n = 0 is excluded by
// convention.
CltTable clt_error_table(const MeasureSequence& A, const RealSequence& a,
                         const DerivedConstants& consts, bool periodic,
                         const std::vector<int>& n_list, int rows_per_n = 100);

// Pure-Gaussian control group: B = 0, S = E = D, so A_n = D^{*n} and the
// table measures the plain two-periodic LCLT for the simple random walk.
CltTable control_group_table(int dim, const std::vector<int>& n_list, double nu,
                             int rows_per_n = 16);

struct SawPipelineOptions {
  double nu = 0.0;  // <= 0 selects the default 4 delta
  std::vector<double> nu_grid;
  int clt_rows_per_n = 16;
  double solve_tol = 1e-12;
  bool force = false;
};

// End-to-end weakly self-avoiding walk run: exact
// connectivities and lace functions, kernel B_m = Pi_m / (lambda c_m),
// scalar solve, constants by both routes, CLT structure tables.
struct SawPipelineReport {
  int dim = 0;
  double lambda = 0.0;
  std::string lambda_exact;
  int n_enum = 0;
  bool low_dim_warning = false;  // d < 5: bounds outside their hypothesis

  std::vector<double> c;                          // c_0..c_N
  std::vector<double> pi_mass, pi_moment;         // m = 0..N
  KernelSequence b, b_bar;
  double beta = 0.0;
  KernelTail kernel_tail;
  std::vector<double> beta_nu_per_m;
  double beta_nu = 0.0;

  SolveResult solve;
  MassConstants mass_constants;
  DerivedConstants constants;       // kernel-moment route
  PiSeriesConstants pi_constants;   // pi-series route
  double delta_cross_diff = 0.0;
  bool delta_cross_ok = false;

  std::string e_prime_construction;
  double evolve_max_mass_error = 0.0;

  CltTable clt;                     // C_n/c_n vs 2 phi_{n delta}
  std::vector<std::pair<double, double>> clt_nu_grid_sup;  // (nu, max_n sup ratio)
  std::vector<double> main1_scaled;       // |c_n/(alpha mu^n) - 1| sqrt(n), n = 1..N
  std::vector<double> mass_ratios;        // c_n / c_{n-1}, trend toward mu
};

SawPipelineReport saw_pipeline(const ModelParams& params, int n_max, SawCache& cache,
                               const SawPipelineOptions& options = {});

}  // namespace lacelab
