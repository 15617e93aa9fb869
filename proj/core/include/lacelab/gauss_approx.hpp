#pragma once

#include <vector>

#include "lacelab/gaussian.hpp"
#include "lacelab/measure.hpp"

namespace lacelab {

// Bounded-range symmetric step law with isotropic covariance eta * Id.
struct StepLaw {
  SignedMeasure<double> G;
  int ell = 0;       // range bound, |x|_inf <= ell on the support
  double eta = 0.0;  // per-coordinate variance

  // Validates mass 1, symmetry, bounded range and isotropy.
  static StepLaw make(const SignedMeasure<double>& g, double mass_tol = 1e-12);
};

// Lazy unit walk: stays put with probability 1 - p, otherwise makes a
// nearest-neighbour step. Aperiodic for p < 1; eta = p/d.
SignedMeasure<double> lazy_walk(int dim, double move_prob);

// Least-squares slope of log y against log x. Throws when fewer than two
// points are positive; the report builders fall back to fit_valid = false.
double loglog_slope(const std::vector<std::pair<double, double>>& points);

// e_n = sup_x |G^{*n}(x) - phi_{n eta}(x)| / phi_{n nu'}(x) and its fitted
// decay exponent. In the two-periodic variant only parity-matched x enter
// and the density is doubled.
struct LcltScanRow {
  int n = 0;
  double sup_ratio = 0.0;
};
struct LcltScanReport {
  bool periodic = false;
  double nu_prime = 0.0;
  std::vector<LcltScanRow> rows;
  double fitted_exponent = 0.0;
  bool fit_valid = false;
};
LcltScanReport lclt_error_scan(const StepLaw& law, const std::vector<int>& n_list, double nu_prime,
                               bool periodic = false);

// Taylor expansion of the folding G * phi_{n eta}:
//   R_4 = G*phi_{n eta} - g phi_{n eta} - (g_bar / (2 d n eta)) [x^2/(n eta) - d] phi_{n eta},
// with |R_4| expected to scale like n^{-2} against the phi_{2 n eta} envelope.
// The R_2 variant folds P(x/sqrt(n)) phi_{n eta} for a radial even
// polynomial P (coefficients in powers of x^2/n).
struct TaylorFoldRow {
  int n = 0;
  double sup_r4 = 0.0;       // sup_x |R_4| / phi_{2 n eta}
  double k4_emp = 0.0;       // sup_x |R_4| / (n^-2 M4 phi_{2 n eta})
  double sup_r2 = 0.0;       // sup_x |R_2| / phi_{2 n eta}
  double k2_emp = 0.0;       // sup_x |R_2| / (n^-1 M2 phi_{2 n eta})
};
struct TaylorFoldReport {
  std::vector<TaylorFoldRow> rows;
  double fitted_exponent_r4 = 0.0;  // expected near -2
  double fitted_exponent_r2 = 0.0;  // expected near -1
  bool fit_valid = false;           // false when a remainder vanishes identically
  double fourth_moment = 0.0;       // M4 = sum z^4 |G(z)|
  double second_moment_abs = 0.0;   // M2 = sum z^2 |G(z)|
};
TaylorFoldReport taylor_fold_check(const SignedMeasure<double>& g, const std::vector<int>& n_list,
                                   double eta, const std::vector<double>& poly = {-1.0, 1.0});

// Variance-shift expansion of the density in its variance parameter:
//   S_2^k = phi_{(n-k) eta} - phi_{n eta} + (k/2n)[x^2/(n eta) - d] phi_{n eta},
// bounded by K (k/(n-k))^2 (n/(n-k))^{d/2} phi_{sqrt(2) n eta}; the ratio
// against the k-free part of the envelope scales like k^2 at fixed n.
struct VarianceShiftRow {
  int k = 0;
  double sup_s2 = 0.0;  // sup_x |S_2| / ((n/(n-k))^{d/2} phi_{sqrt2 n eta})
  double k2_emp = 0.0;  // sup_x |S_2| / full envelope
  double sup_s1 = 0.0;
  double k1_emp = 0.0;
};
struct VarianceShiftReport {
  int n = 0;
  std::vector<VarianceShiftRow> rows;
  double fitted_exponent_s2 = 0.0;  // expected near +2 in k
  double fitted_exponent_s1 = 0.0;  // expected near +1 in k
  bool fit_valid = false;           // false for degenerate grids (fewer than two points)
};
VarianceShiftReport variance_shift_check(int n, const std::vector<int>& k_list, double eta, int dim,
                                         const std::vector<double>& poly = {-1.0, 1.0});

}  // namespace lacelab
