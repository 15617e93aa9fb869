#include "lacelab/gaussian.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lacelab {

double gaussian_density(int dim, double eta, double euclid_sq) {
  if (eta <= 0) throw std::invalid_argument("gaussian_density: eta must be positive");
  const double norm = std::pow(2.0 * std::numbers::pi * eta, -0.5 * dim);
  return norm * std::exp(-euclid_sq / (2.0 * eta));
}

double gaussian_density(int dim, double eta, const Point& x) {
  return gaussian_density(dim, eta, static_cast<double>(x.euclid_sq()));
}

int default_gaussian_radius(double eta, int dim) {
  return static_cast<int>(std::ceil(6.0 * std::sqrt(eta * dim)));
}

SignedMeasure<double> gaussian_measure(const GaussianSpec& spec) {
  if (spec.eta <= 0 || spec.radius < 1)
    throw std::invalid_argument("gaussian_measure: need eta > 0 and radius >= 1");
  SignedMeasure<double> m(spec.dim);
  Point x(spec.dim);
  // Odometer over the box |x|_inf <= radius.
  for (int i = 0; i < spec.dim; ++i) x[i] = -spec.radius;
  while (true) {
    m.add(x, gaussian_density(spec.dim, spec.eta, x));
    int i = 0;
    for (; i < spec.dim; ++i) {
      if (x[i] < spec.radius) {
        ++x[i];
        break;
      }
      x[i] = -spec.radius;
    }
    if (i == spec.dim) break;
  }
  return m;
}

Gauss1dSums gaussian_1d_sums(double eta, double tail_tol, long radius_cap) {
  Gauss1dSums out;
  double s0 = gaussian_density(1, eta, 0.0);
  double s2 = 0.0;
  long k = 1;
  for (; k <= radius_cap; ++k) {
    const double kk = static_cast<double>(k) * static_cast<double>(k);
    const double phi = gaussian_density(1, eta, kk);
    const double term0 = 2.0 * phi;
    s0 += term0;
    s2 += kk * term0;
    // Remaining tail is dominated by a geometric decay once k^2 >> eta.
    if (term0 * (1.0 + kk) < tail_tol && kk > 4.0 * eta) {
      out.converged = true;
      break;
    }
  }
  out.sum0 = s0;
  out.sum2 = s2;
  out.radius = k;
  return out;
}

GaussianSumReport check_gaussian_sums(int dim, const std::vector<double>& eta_grid) {
  GaussianSumReport report;
  report.dim = dim;
  report.all_converged = true;
  for (double eta : eta_grid) {
    if (eta < 1.0 / (2.0 * dim))
      throw std::invalid_argument("check_gaussian_sums: eta below 1/(2d)");
    Gauss1dSums s = gaussian_1d_sums(eta);
    GaussianSumRow row;
    row.eta = eta;
    row.converged = s.converged;
    // sum_{Z^d} phi = (sum_Z phi_1d)^d; sum x^2 phi = d * S2 * S0^(d-1).
    row.sum_phi = std::pow(s.sum0, dim);
    row.sum_x2_phi = dim * s.sum2 * std::pow(s.sum0, dim - 1);
    row.moment_ratio = row.sum_x2_phi / eta;
    report.rows.push_back(row);
    report.all_converged = report.all_converged && s.converged;
    report.empirical_constant =
        std::max({report.empirical_constant, row.sum_phi, row.moment_ratio});
  }
  return report;
}

FoldingReport check_folding(int dim, double eta, double theta, int radius) {
  if (eta < 1.0 / (2.0 * dim) || theta < 1.0 / (2.0 * dim))
    throw std::invalid_argument("check_folding: eta, theta below 1/(2d)");
  FoldingReport report;
  report.dim = dim;
  report.eta = eta;
  report.theta = theta;
  report.radius = radius;

  // Inner summation radius: both factors are negligible beyond ~9 sigma.
  const long inner = static_cast<long>(std::ceil(9.0 * std::sqrt(std::max(eta, theta)))) + radius;
  double best = 0.0;
  long best_k = 0;
  for (long k = -radius; k <= radius; ++k) {
    double fold = 0.0;
    for (long j = -inner; j <= inner; ++j) {
      fold += gaussian_density(1, eta, static_cast<double>(j) * j) *
              gaussian_density(1, theta, static_cast<double>(k - j) * (k - j));
    }
    const double ratio = fold / gaussian_density(1, eta + theta, static_cast<double>(k) * k);
    if (ratio > best) {
      best = ratio;
      best_k = k;
    }
  }
  report.max_ratio_1d = best;
  report.argmax_1d = best_k;
  report.max_ratio = std::pow(best, dim);
  return report;
}

}  // namespace lacelab
