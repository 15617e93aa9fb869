#pragma once

#include <vector>

#include "lacelab/measure.hpp"
#include "lacelab/point.hpp"

namespace lacelab {

// phi_eta: the d-dimensional centered normal density with covariance
// eta * Id, evaluated on lattice points.
double gaussian_density(int dim, double eta, double euclid_sq);
double gaussian_density(int dim, double eta, const Point& x);

struct GaussianSpec {
  double eta = 1.0;  // variance per coordinate, lattice units^2
  int dim = 1;
  int radius = 1;  // truncation radius in ||.||_inf
};

// Default truncation: tails beyond ceil(6 sqrt(eta d)) are below 1e-12
// relative in double mode.
int default_gaussian_radius(double eta, int dim);

// phi_eta sampled at all |x|_inf <= radius, exact density values,
// no renormalization.
SignedMeasure<double> gaussian_measure(const GaussianSpec& spec);

// One-dimensional discretization sums with adaptive radius (tail < tol).
struct Gauss1dSums {
  double sum0 = 0;  // sum_k phi(k)
  double sum2 = 0;  // sum_k k^2 phi(k)
  long radius = 0;
  bool converged = false;
};
Gauss1dSums gaussian_1d_sums(double eta, double tail_tol = 1e-12, long radius_cap = 1000000);

// Numerical check of the discretization bounds sum phi_eta <= K and
// sum x^2 phi_eta <= K eta for eta >= 1/(2d). The d-dimensional sums
// factor over coordinates.
struct GaussianSumRow {
  double eta = 0;
  double sum_phi = 0;          // sum_x phi_eta(x)
  double sum_x2_phi = 0;       // sum_x x^2 phi_eta(x)
  double moment_ratio = 0;     // sum_x x^2 phi_eta(x) / eta
  bool converged = false;
};
struct GaussianSumReport {
  int dim = 0;
  std::vector<GaussianSumRow> rows;
  double empirical_constant = 0;  // max over rows and both ratios
  bool all_converged = false;
};
GaussianSumReport check_gaussian_sums(int dim, const std::vector<double>& eta_grid);

// Numerical check of the folding bound (phi_eta (*) phi_theta)(x)
// <= K phi_{eta+theta}(x) for eta, theta >= 1/(2d). Both sides factor per
// coordinate, so the d-dimensional sup over the box |x|_inf <= radius is
// the d-th power of the one-dimensional sup.
struct FoldingReport {
  int dim = 0;
  double eta = 0, theta = 0;
  int radius = 0;
  double max_ratio_1d = 0;
  long argmax_1d = 0;
  double max_ratio = 0;  // = max_ratio_1d^dim
};
FoldingReport check_folding(int dim, double eta, double theta, int radius);

}  // namespace lacelab
