#include "lacelab/scalar_fp.hpp"

#include <cmath>
#include <stdexcept>

namespace lacelab {

RealSequence RealSequence::ones(int n_max) {
  RealSequence g;
  g.values.assign(static_cast<std::size_t>(n_max) + 1, 1.0);
  return g;
}

double RealSequence::delta_norm() const {
  if (values.empty()) return 0.0;
  double s = std::abs(values[0]);
  for (std::size_t n = 1; n < values.size(); ++n) s += std::abs(values[n] - values[n - 1]);
  return s;
}

double RealSequence::sup_norm() const {
  double s = 0.0;
  for (double v : values) s = std::max(s, std::abs(v));
  return s;
}

double RealSequence::delta_distance(const RealSequence& other) const {
  if (values.size() != other.values.size())
    throw std::invalid_argument("delta_distance: length mismatch");
  double prev = 0.0, s = 0.0;
  for (std::size_t n = 0; n < values.size(); ++n) {
    const double diff = values[n] - other.values[n];
    s += std::abs(diff - (n == 0 ? 0.0 : prev));
    prev = diff;
  }
  return s;
}

KernelSequence KernelSequence::zeros(int m_max) {
  KernelSequence k;
  k.b.assign(static_cast<std::size_t>(m_max) + 1, 0.0);
  return k;
}

double KernelSequence::beta() const {
  double s = 0.0;
  for (int m = 1; m <= m_max(); ++m) s += m * std::abs(b[static_cast<std::size_t>(m)]);
  return s;
}

KernelTail kernel_tail_estimate(const KernelSequence& kernel) {
  KernelTail tail;
  const int m_max = kernel.m_max();
  // Least squares on log|b_m| vs log m over the top half of the range.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (int m = std::max(2, m_max / 2); m <= m_max; ++m) {
    const double bm = std::abs(kernel.at(m));
    if (bm <= 0.0) continue;
    const double x = std::log(static_cast<double>(m)), y = std::log(bm);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) return tail;  // nothing to extrapolate; tail reported as 0
  const double denom = n * sxx - sx * sx;
  if (denom <= 0.0) return tail;
  double p = -(n * sxy - sx * sy) / denom;
  const double logc = (sy + p * sx) / n;
  // A fitted decay slower than m^-2.1 gives a divergent-looking tail
  // estimate; clamp so the report stays conservative but finite.
  p = std::max(p, 2.1);
  tail.fitted = true;
  tail.exponent = p;
  tail.coefficient = std::exp(logc);
  const double m1 = static_cast<double>(m_max);
  tail.tail_abs_b = tail.coefficient * std::pow(m1, 1.0 - p) / (p - 1.0);
  tail.tail_m_abs_b = tail.coefficient * std::pow(m1, 2.0 - p) / (p - 2.0);
  return tail;
}

RealSequence tilde_map(const RealSequence& g, const KernelSequence& kernel, double lambda) {
  const int n_max = g.n_max();
  const int m_max = kernel.m_max();
  RealSequence out;
  out.values.resize(g.values.size());
  if (n_max < 0) return out;
  out.values[0] = g.values[0];

  // Suffix sums sum_{j=n+1}^{m_max} g_j b_j, truncated at the kernel range.
  std::vector<double> tail(static_cast<std::size_t>(n_max) + 2, 0.0);
  for (int j = std::min(n_max, m_max); j >= 1; --j)
    tail[static_cast<std::size_t>(j)] =
        tail[static_cast<std::size_t>(j) + 1] + g.values[static_cast<std::size_t>(j)] * kernel.at(j);

  for (int n = 1; n <= n_max; ++n) {
    double bracket = g.values[static_cast<std::size_t>(n - 1)] * tail[static_cast<std::size_t>(n) + 1];
    for (int m = 2; m <= std::min(n, m_max); ++m) {
      bracket += g.values[static_cast<std::size_t>(m)] * kernel.at(m) *
                 (g.values[static_cast<std::size_t>(n - 1)] - g.values[static_cast<std::size_t>(n - m)]);
    }
    out.values[static_cast<std::size_t>(n)] =
        out.values[static_cast<std::size_t>(n - 1)] - lambda * bracket;
  }
  return out;
}

double lambda_admissible_max(const KernelSequence& kernel) {
  const double beta = kernel.beta();
  if (beta <= 0.0) return 1.0;  // degenerate kernel: any lambda in [0,1]
  return 1.0 / (9.0 * beta);    // 1/(6 beta L) at L = 3/2
}

namespace {

double mass_recursion_residual(const RealSequence& a, const KernelSequence& kernel, double lambda) {
  const int n_max = a.n_max();
  const int m_max = kernel.m_max();
  double rho = 0.0;
  for (int m = 2; m <= std::min(n_max, m_max); ++m)
    rho += a.values[static_cast<std::size_t>(m)] * kernel.at(m);
  double worst = std::abs(a.values[0] - 1.0);
  for (int n = 1; n <= n_max; ++n) {
    double conv = 0.0;
    for (int m = 2; m <= std::min(n, m_max); ++m)
      conv += a.values[static_cast<std::size_t>(m)] * kernel.at(m) *
              a.values[static_cast<std::size_t>(n - m)];
    const double rhs =
        (1.0 - lambda * rho) * a.values[static_cast<std::size_t>(n - 1)] + lambda * conv;
    worst = std::max(worst, std::abs(a.values[static_cast<std::size_t>(n)] - rhs));
  }
  return worst;
}

}  // namespace

SolveResult solve_mass_sequence_from(const RealSequence& start, const KernelSequence& kernel,
                                     double lambda, const SolveOptions& options) {
  if (lambda < 0.0) throw std::invalid_argument("solve_mass_sequence: negative lambda");
  SolveResult result;
  result.lambda_max = lambda_admissible_max(kernel);
  result.admissible = lambda <= result.lambda_max;
  if (!result.admissible && !options.force) {
    // Precondition, not a broken invariant: the caller asked for a lambda
    // without a contraction guarantee.
    throw std::invalid_argument(
        "solve_mass_sequence: lambda = " + std::to_string(lambda) +
        " outside the contraction regime lambda <= 1/(9 beta) = " +
        std::to_string(result.lambda_max) + " (use force to override)");
  }
  if (start.values.empty() || start.values[0] != 1.0)
    throw std::invalid_argument("solve_mass_sequence: start must have g_0 = 1");

  RealSequence g = start;
  double prev_dist = -1.0;
  for (int sweep = 1; sweep <= options.max_sweeps; ++sweep) {
    RealSequence next = tilde_map(g, kernel, lambda);
    const double dist = next.delta_distance(g);
    result.sweeps = sweep;
    result.final_distance = dist;
    // Contraction factor is only meaningful while distances are well above
    // floating-point noise.
    if (prev_dist > 1e3 * options.tol) {
      const double factor = dist / prev_dist;
      result.max_contraction = std::max(result.max_contraction, factor);
      if (factor > 1.0 + 1e-9 && !options.force)
        throw std::runtime_error("solve_mass_sequence: iteration is expanding (factor " +
                                 std::to_string(factor) + "); lambda too large for this kernel");
    }
    g = std::move(next);
    if (dist < options.tol) {
      result.converged = true;
      break;
    }
    prev_dist = dist;
  }
  result.a = std::move(g);
  result.max_residual = mass_recursion_residual(result.a, kernel, lambda);
  return result;
}

SolveResult solve_mass_sequence(const KernelSequence& kernel, double lambda, int n_max,
                                const SolveOptions& options) {
  return solve_mass_sequence_from(RealSequence::ones(n_max), kernel, lambda, options);
}

MassConstants connective_alpha(const RealSequence& a, const KernelSequence& kernel, double lambda,
                               double step_mass) {
  MassConstants out;
  const int top = std::min(a.n_max(), kernel.m_max());
  for (int m = 2; m <= top; ++m) {
    const double t = a.values[static_cast<std::size_t>(m)] * kernel.at(m);
    out.rho += t;
    out.sigma += (m - 1) * t;
  }
  const KernelTail tail = kernel_tail_estimate(kernel);
  // |a_m| <= 3/2 on the fixed point; propagate that bound through the tail.
  out.tail_rho = 1.5 * tail.tail_abs_b;
  out.tail_sigma = 1.5 * tail.tail_m_abs_b;
  const double denom_mu = 1.0 - lambda * out.rho;
  if (denom_mu <= 0.0)
    throw std::runtime_error("connective_alpha: 1 - lambda rho <= 0 (outside perturbative regime)");
  out.mu = step_mass / denom_mu;
  const double denom_alpha = 1.0 + lambda * out.sigma;
  if (denom_alpha <= 0.0)
    throw std::runtime_error("connective_alpha: 1 + lambda sigma <= 0 (outside perturbative regime)");
  out.alpha = 1.0 / denom_alpha;
  return out;
}

RateReport rate_check(const RealSequence& a, const KernelSequence& kernel, double eps,
                      double beta_prime, double alpha) {
  RateReport report;
  report.eps = eps;
  report.beta_prime = beta_prime;
  report.kernel_decay_ok = true;
  for (int m = 1; m <= kernel.m_max(); ++m) {
    if (std::abs(kernel.at(m)) > beta_prime * std::pow(m, -2.0 - eps) + 1e-15) {
      report.kernel_decay_ok = false;
      break;
    }
  }
  if (!report.kernel_decay_ok)
    throw std::runtime_error("rate_check: kernel violates |b_m| <= beta' m^{-2-eps}");
  for (int n = 1; n <= a.n_max(); ++n) {
    const double delta_n = a.values[static_cast<std::size_t>(n)] - a.values[static_cast<std::size_t>(n - 1)];
    report.sup_delta_scaled =
        std::max(report.sup_delta_scaled, std::abs(delta_n) * std::pow(n, 1.0 + eps));
    report.sup_limit_gap_scaled =
        std::max(report.sup_limit_gap_scaled,
                 std::abs(alpha - a.values[static_cast<std::size_t>(n)]) * std::pow(n, eps));
  }
  return report;
}

}  // namespace lacelab
