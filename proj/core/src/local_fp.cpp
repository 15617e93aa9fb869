#include "lacelab/local_fp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace lacelab {

double chi_weight(int n, const Point& x, double nu) {
  if (n < 1) throw std::invalid_argument("chi_weight: n >= 1 required");
  if (nu <= 0) throw std::invalid_argument("chi_weight: nu must be positive");
  const int d = x.dim;
  const double x2 = static_cast<double>(x.euclid_sq());
  double value = std::pow(n, -0.5) * gaussian_density(d, n * nu, x2);
  double tail = 0.0;
  for (int j = 1; j <= n / 2; ++j) tail += j * gaussian_density(d, j * nu, x2);
  return value + std::pow(n, -0.5 * d) * tail;
}

double psi_weight(int m, const Point& x, double nu) {
  if (m < 1) throw std::invalid_argument("psi_weight: m >= 1 required");
  const int d = x.dim;
  const double x2 = static_cast<double>(x.euclid_sq());
  double sum = 0.0;
  for (int k = 1; k <= m / 2; ++k)
    sum += std::pow(k, 1.0 - 0.5 * d) * gaussian_density(d, k * nu, x2);
  return std::pow(m, -0.5 * d) * sum;
}

DerivedConstants diffusion_constant(const SignedMeasure<double>& S, const RealSequence& a,
                                    const MeasureSequence& B, double lambda, double step_mass) {
  DerivedConstants out;
  out.dim = S.dim();
  out.lambda = lambda;
  out.step_mass = step_mass;
  const auto [s_mass, s_bar] = S.mass_and_moment();
  if (std::abs(s_mass - 1.0) > 1e-9)
    throw std::invalid_argument("diffusion_constant: S must be a probability measure");
  out.s_bar = s_bar;
  out.s_bar_warning = s_bar < 1.0 - 1e-12;

  KernelSequence b = KernelSequence::zeros(std::max<int>(1, static_cast<int>(B.size()) - 1));
  KernelSequence b_bar = KernelSequence::zeros(b.m_max());
  for (int m = 2; m < static_cast<int>(B.size()); ++m) {
    const auto [bm, bbm] = B[static_cast<std::size_t>(m)].mass_and_moment();
    b.b[static_cast<std::size_t>(m)] = bm;
    b_bar.b[static_cast<std::size_t>(m)] = bbm;
  }
  const int top = std::min(a.n_max(), b.m_max());
  for (int m = 2; m <= top; ++m) {
    const double am = a.values[static_cast<std::size_t>(m)];
    out.rho += am * b.at(m);
    out.sigma += (m - 1) * am * b.at(m);
    out.tau += am * b_bar.at(m);
  }

  const double denom = out.dim * (1.0 + lambda * out.sigma);
  if (denom <= 0.0)
    throw std::runtime_error("diffusion_constant: 1 + lambda sigma <= 0 (outside regime)");
  out.delta = (s_bar * (1.0 - lambda * out.rho) + lambda * out.tau) / denom;
  out.mu = step_mass / (1.0 - lambda * out.rho);
  out.alpha = 1.0 / (1.0 + lambda * out.sigma);
  out.delta_window_ok =
      (s_bar / 2.0 <= out.dim * out.delta) && (out.dim * out.delta <= 2.0 * s_bar);

  const KernelTail tb = kernel_tail_estimate(b);
  const KernelTail tbb = kernel_tail_estimate(b_bar);
  out.tail_rho = 1.5 * tb.tail_abs_b;
  out.tail_sigma = 1.5 * tb.tail_m_abs_b;
  out.tail_tau = 1.5 * tbb.tail_abs_b;
  // First-order propagation through the diffusion-constant formula,
  // tripled to cover the difference between the fixed-point a_m and
  // mu^-m c_m on the tail.
  out.tail_delta = 3.0 *
                   (lambda * s_bar * out.tail_rho + lambda * out.tail_tau +
                    lambda * out.dim * std::abs(out.delta) * out.tail_sigma) /
                   denom;
  return out;
}

PiSeriesConstants constants_from_pi(const std::vector<double>& pi_mass,
                                    const std::vector<double>& pi_moment, int dim) {
  PiSeriesConstants out;
  const int m_top = static_cast<int>(pi_mass.size()) - 1;
  double mu = 2.0 * dim;
  for (int it = 1; it <= 1000; ++it) {
    double s = 0.0;
    for (int m = 2; m <= m_top; ++m) s += pi_mass[static_cast<std::size_t>(m)] * std::pow(mu, -m);
    const double next = 2.0 * dim / (1.0 - s);
    out.iterations = it;
    if (std::abs(next - mu) < 1e-14 * std::abs(next)) {
      mu = next;
      break;
    }
    mu = next;
  }
  out.mu = mu;
  double sigma = 0.0, num = 0.0;
  for (int m = 2; m <= m_top; ++m) {
    const double w = std::pow(mu, -m);
    sigma += (m - 1) * pi_mass[static_cast<std::size_t>(m)] * w;
    num += (pi_mass[static_cast<std::size_t>(m)] - pi_moment[static_cast<std::size_t>(m)]) * w;
  }
  out.alpha = 1.0 / (1.0 + sigma);
  out.delta = (1.0 - num) / (dim * (1.0 + sigma));
  return out;
}

namespace {

SignedMeasure<double> uniform_shell(int dim, const std::vector<Point>& pts) {
  SignedMeasure<double> m(dim);
  const double w = 1.0 / static_cast<double>(pts.size());
  for (const Point& p : pts) m.add(p, w);
  return m;
}

std::vector<Point> unit_shell_points(int dim) {
  std::vector<Point> pts;
  for (int i = 0; i < dim; ++i)
    for (int s : {+1, -1}) pts.push_back(unit_vector(dim, i, s));
  return pts;
}

std::vector<Point> axis_shell_points(int dim, int radius) {
  std::vector<Point> pts;
  for (int i = 0; i < dim; ++i)
    for (int s : {+1, -1}) {
      Point p(dim);
      p[i] = s * radius;
      pts.push_back(p);
    }
  return pts;
}

// Permutations and sign flips of (2,1,0,...,0): odd parity, x^2 = 5.
std::vector<Point> two_one_shell_points(int dim) {
  std::vector<Point> pts;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      if (i == j) continue;
      for (int si : {+1, -1})
        for (int sj : {+1, -1}) {
          Point p(dim);
          p[i] = 2 * si;
          p[j] = sj;
          pts.push_back(p);
        }
    }
  return pts;
}

}  // namespace

StepLawE build_E(const SignedMeasure<double>& S, double delta, bool periodic) {
  const int d = S.dim();
  const auto [mass, s_bar] = S.mass_and_moment();
  if (std::abs(mass - 1.0) > 1e-9)
    throw std::invalid_argument("build_E: S must be a probability measure");
  const double target = d * delta;

  StepLawE out{SignedMeasure<double>(d), 0.0, ""};
  if (std::abs(target - s_bar) <= 1e-14 * std::max(1.0, s_bar)) {
    out.E = S;
    out.construction = "no shift (d delta equals the second moment of S)";
    return out;
  }

  if (!periodic) {
    if (target < s_bar) {
      if (target <= 0.0)
        throw std::runtime_error("build_E: target variance not positive; feasible window (0, " +
                                 std::to_string(s_bar) + "] from below");
      const double w = 1.0 - target / s_bar;
      out.E = S.scaled(1.0 - w);
      out.E.add(origin(d), w);
      out.weight_shifted = w;
      out.construction = "aperiodic: mass " + std::to_string(w) + " moved to the origin";
      return out;
    }
    const int range = static_cast<int>(S.max_linf_norm()) + 1;
    const double shell_moment = static_cast<double>(range) * range;
    if (target > shell_moment)
      throw std::runtime_error("build_E: target d*delta = " + std::to_string(target) +
                               " above the feasible window [" + std::to_string(s_bar) + ", " +
                               std::to_string(shell_moment) + "] for range " +
                               std::to_string(range));
    const double w = (target - s_bar) / (shell_moment - s_bar);
    out.E = S.scaled(1.0 - w);
    out.E.add_scaled(uniform_shell(d, axis_shell_points(d, range)), w);
    out.weight_shifted = w;
    out.construction = "aperiodic: mass " + std::to_string(w) + " moved to the axis shell at " +
                       std::to_string(range);
    return out;
  }

  // Two-periodic: all support on odd parity. Variance below 1/d per
  // coordinate does not exist on the odd sublattice.
  if (S.parity() != Parity::kOdd || !S.parity_consistent())
    throw std::invalid_argument("build_E: periodic variant needs a two-periodic (odd) S");
  if (target < 1.0 - 1e-12)
    throw std::runtime_error(
        "build_E: a two-periodic symmetric measure with d*delta < 1 does not exist "
        "(feasible window starts at 1)");
  if (target < s_bar) {
    if (s_bar <= 1.0 + 1e-15)
      throw std::runtime_error("build_E: cannot reduce variance below the unit shell");
    const double w = (s_bar - target) / (s_bar - 1.0);
    out.E = S.scaled(1.0 - w);
    out.E.add_scaled(uniform_shell(d, unit_shell_points(d)), w);
    out.weight_shifted = w;
    out.construction = "two-periodic: mass " + std::to_string(w) + " moved to the unit shell";
  } else {
    const bool use_21 = d >= 2;
    const double shell_moment = use_21 ? 5.0 : 9.0;
    if (target > shell_moment)
      throw std::runtime_error("build_E: target d*delta = " + std::to_string(target) +
                               " above the feasible window [" + std::to_string(s_bar) + ", " +
                               std::to_string(shell_moment) + "]");
    const double w = (target - s_bar) / (shell_moment - s_bar);
    out.E = S.scaled(1.0 - w);
    out.E.add_scaled(uniform_shell(d, use_21 ? two_one_shell_points(d) : axis_shell_points(d, 3)),
                     w);
    out.weight_shifted = w;
    out.construction = use_21
                           ? "two-periodic: mass " + std::to_string(w) +
                                 " moved to the (2,1,0,...) shell (x^2 = 5)"
                           : "two-periodic: mass " + std::to_string(w) + " moved to {+-3} (x^2 = 9)";
  }
  out.E.set_parity(Parity::kOdd);
  return out;
}

EvolveResult evolve_A(const SignedMeasure<double>& S, const MeasureSequence& B,
                      const RealSequence& a, double lambda, double step_mass, int n_max,
                      double mass_tol) {
  if (a.n_max() < n_max) throw std::invalid_argument("evolve_A: a shorter than n_max");
  double rho = 0.0;
  for (int m = 2; m < static_cast<int>(B.size()); ++m)
    rho += a.values[static_cast<std::size_t>(m)] * B[static_cast<std::size_t>(m)].mass();
  const double step_factor = 1.0 - lambda * rho;  // = step_mass / mu
  if (step_factor <= 0.0) throw std::runtime_error("evolve_A: 1 - lambda rho <= 0");

  std::vector<std::pair<double, SignedMeasure<double>>> kernels;
  kernels.reserve(B.size());
  for (int m = 0; m < static_cast<int>(B.size()); ++m) {
    const double coef = (m >= 2) ? lambda * a.values[static_cast<std::size_t>(m)] : 0.0;
    kernels.emplace_back(coef, B[static_cast<std::size_t>(m)]);
  }
  while (static_cast<int>(kernels.size()) < 2) kernels.emplace_back(0.0, SignedMeasure<double>(S.dim()));

  EvolveResult out{evolve_measure_recursion(S, step_factor, kernels, n_max), 0.0, step_factor,
                   step_mass / step_factor};
  for (int n = 0; n <= n_max; ++n) {
    const double err =
        std::abs(out.A[static_cast<std::size_t>(n)].mass() - a.values[static_cast<std::size_t>(n)]);
    out.max_mass_error = std::max(out.max_mass_error, err);
  }
  if (out.max_mass_error > mass_tol)
    throw std::runtime_error("evolve_A: mass(A_n) deviates from a_n by " +
                             std::to_string(out.max_mass_error) + " (tolerance " +
                             std::to_string(mass_tol) + ")");
  return out;
}

namespace {

// chi_n and phi_{n delta} depend on x only through x^2; cache by x^2.
class RadialCache {
 public:
  RadialCache(int dim, int n, double nu, double n_delta)
      : dim_(dim), n_(n), nu_(nu), n_delta_(n_delta) {}

  double chi(long x2) {
    auto it = chi_.find(x2);
    if (it != chi_.end()) return it->second;
    double value = std::pow(n_, -0.5) * gaussian_density(dim_, n_ * nu_, static_cast<double>(x2));
    double tail = 0.0;
    for (int j = 1; j <= n_ / 2; ++j)
      tail += j * gaussian_density(dim_, j * nu_, static_cast<double>(x2));
    value += std::pow(n_, -0.5 * dim_) * tail;
    chi_.emplace(x2, value);
    return value;
  }

  double phi(long x2) {
    auto it = phi_.find(x2);
    if (it != phi_.end()) return it->second;
    const double value = gaussian_density(dim_, n_delta_, static_cast<double>(x2));
    phi_.emplace(x2, value);
    return value;
  }

 private:
  int dim_;
  int n_;
  double nu_, n_delta_;
  std::unordered_map<long, double> chi_, phi_;
};

struct RowCollector {
  int cap;
  std::vector<ErrorRow> rows;  // kept loosely sorted, trimmed on overflow

  void offer(const ErrorRow& row) {
    if (cap <= 0) return;
    rows.push_back(row);
    if (rows.size() >= static_cast<std::size_t>(2 * cap)) trim();
  }
  void trim() {
    std::stable_sort(rows.begin(), rows.end(),
                     [](const ErrorRow& a, const ErrorRow& b) { return a.ratio > b.ratio; });
    if (rows.size() > static_cast<std::size_t>(cap)) rows.resize(static_cast<std::size_t>(cap));
  }
};

}  // namespace

CltTable clt_error_table(const MeasureSequence& A, const RealSequence& a,
                         const DerivedConstants& consts, bool periodic,
                         const std::vector<int>& n_list, int rows_per_n) {
  CltTable table;
  table.periodic = periodic;
  table.nu = consts.nu;
  table.delta = consts.delta;
  table.rows_per_n = rows_per_n;
  if (consts.nu <= 0.0) throw std::invalid_argument("clt_error_table: nu not set");

  for (int n : n_list) {
    if (n < 1 || n >= static_cast<int>(A.size())) continue;
    const auto& an_measure = A[static_cast<std::size_t>(n)];
    const int d = an_measure.dim();
    const double an = a.values[static_cast<std::size_t>(n)];
    const double density_factor = periodic ? 2.0 : 1.0;
    const Parity want = parity_of_integer(n);
    RadialCache cache(d, n, consts.nu, n * consts.delta);
    RowCollector collector{rows_per_n, {}};
    double sup = -1.0;
    ErrorRow sup_row;

    auto consider = [&](const Point& x, double ax) {
      if (periodic && parity_of_integer(x.l1_norm()) != want) return;
      const long x2 = x.euclid_sq();
      const double lhs = std::abs(ax - an * density_factor * cache.phi(x2));
      const double bound = cache.chi(x2);
      const ErrorRow row{n, x, lhs, bound, lhs / bound};
      collector.offer(row);
      if (row.ratio > sup) {
        sup = row.ratio;
        sup_row = row;
      }
    };

    const int box_radius = static_cast<int>(std::ceil(4.0 * std::sqrt(n * consts.delta)));
    auto inside_box = [&](const Point& x) { return x.linf_norm() <= box_radius; };

    for (const auto& [key, v] : an_measure.entries()) {
      const Point x = an_measure.point_of(key);
      if (std::abs(v) <= 1e-15 && !inside_box(x)) continue;
      consider(x, v);
    }
    // Box points without a stored entry (A_n(x) = 0 there).
    Point x(d);
    for (int i = 0; i < d; ++i) x[i] = -box_radius;
    while (true) {
      if (!an_measure.contains(x)) consider(x, 0.0);
      int i = 0;
      for (; i < d; ++i) {
        if (x[i] < box_radius) {
          ++x[i];
          break;
        }
        x[i] = -box_radius;
      }
      if (i == d) break;
    }

    collector.trim();
    table.sup_ratio[n] = sup;
    table.sup_row[n] = sup_row;
    for (const auto& row : collector.rows) table.rows.push_back(row);
  }
  return table;
}

CltTable control_group_table(int dim, const std::vector<int>& n_list, double nu, int rows_per_n) {
  const auto D = step_distribution<double>(dim);
  int n_top = 0;
  for (int n : n_list) n_top = std::max(n_top, n);
  MeasureSequence A;
  A.reserve(static_cast<std::size_t>(n_top) + 1);
  A.push_back(SignedMeasure<double>::delta(dim));
  for (int n = 1; n <= n_top; ++n) A.push_back(convolve(D, A.back()));

  DerivedConstants consts;
  consts.dim = dim;
  consts.lambda = 0.0;
  consts.step_mass = 2.0 * dim;
  consts.s_bar = 1.0;
  consts.mu = 2.0 * dim;
  consts.alpha = 1.0;
  consts.delta = 1.0 / dim;
  consts.nu = nu > 0 ? nu : 4.0 / dim;
  consts.delta_window_ok = true;
  return clt_error_table(A, RealSequence::ones(n_top), consts, /*periodic=*/true, n_list,
                         rows_per_n);
}

SawPipelineReport saw_pipeline(const ModelParams& params, int n_max, SawCache& cache,
                               const SawPipelineOptions& options) {
  params.validate();
  if (n_max < 2) throw std::invalid_argument("saw_pipeline: n_max >= 2 required");
  SawPipelineReport report;
  report.dim = params.dim;
  report.lambda = params.lambda.to_double();
  report.lambda_exact = params.lambda.to_fraction_string();
  report.n_enum = n_max;
  report.low_dim_warning = params.dim < 5;

  const int d = params.dim;
  const double lambda = report.lambda;

  // (1) Exact connectivities and lace functions, then cast to float.
  std::vector<SignedMeasure<double>> c_measures;
  report.c.resize(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) {
    auto cn = cache.connectivity<Rational>(d, n, params.lambda);
    report.c[static_cast<std::size_t>(n)] = scalar_traits<Rational>::to_double(cn.mass());
    c_measures.push_back(to_double_measure(cn));
  }
  report.pi_mass.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
  report.pi_moment.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
  MeasureSequence B(static_cast<std::size_t>(n_max) + 1, SignedMeasure<double>(d));
  for (int m = 2; m <= n_max; ++m) {
    auto pim = cache.pi<Rational>(d, m, params.lambda);
    const auto [pm, pbm] = pim.pi.mass_and_moment();
    report.pi_mass[static_cast<std::size_t>(m)] = scalar_traits<Rational>::to_double(pm);
    report.pi_moment[static_cast<std::size_t>(m)] = scalar_traits<Rational>::to_double(pbm);
    if (lambda > 0.0) {
      // (2) B_m = Pi_m / (lambda c_m).
      B[static_cast<std::size_t>(m)] = to_double_measure(pim.pi).scaled(
          1.0 / (lambda * report.c[static_cast<std::size_t>(m)]));
      B[static_cast<std::size_t>(m)].set_parity(parity_of_integer(m));
    }
  }

  report.b = KernelSequence::zeros(n_max);
  report.b_bar = KernelSequence::zeros(n_max);
  for (int m = 2; m <= n_max; ++m) {
    const auto [bm, bbm] = B[static_cast<std::size_t>(m)].mass_and_moment();
    report.b.b[static_cast<std::size_t>(m)] = bm;
    report.b_bar.b[static_cast<std::size_t>(m)] = bbm;
  }
  report.beta = report.b.beta();
  report.kernel_tail = kernel_tail_estimate(report.b);

  // (4) Scalar fixed point and mass constants.
  SolveOptions solve_options;
  solve_options.tol = options.solve_tol;
  solve_options.force = options.force;
  const int n_solve = std::max(n_max, 32);
  report.solve = solve_mass_sequence(report.b, lambda, n_solve, solve_options);
  report.mass_constants = connective_alpha(report.solve.a, report.b, lambda, 2.0 * d);

  // (5) delta by both routes.
  const auto S = step_distribution<double>(d);
  report.constants = diffusion_constant(S, report.solve.a, B, lambda, 2.0 * d);
  report.pi_constants = constants_from_pi(report.pi_mass, report.pi_moment, d);
  report.delta_cross_diff = std::abs(report.constants.delta - report.pi_constants.delta);
  report.delta_cross_ok = report.delta_cross_diff <= report.constants.tail_delta + 1e-9;

  report.constants.nu = options.nu > 0 ? options.nu : 4.0 * report.constants.delta;

  // (3) beta_nu = sup_{m,x} |B_m(x)| / psi_m(x), per m.
  report.beta_nu_per_m.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
  for (int m = 2; m <= n_max; ++m) {
    double sup = 0.0;
    const auto& bm = B[static_cast<std::size_t>(m)];
    for (const auto& [key, v] : bm.entries()) {
      const Point x = bm.point_of(key);
      const double psi = psi_weight(m, x, report.constants.nu);
      if (psi > 0.0) sup = std::max(sup, std::abs(v) / psi);
    }
    report.beta_nu_per_m[static_cast<std::size_t>(m)] = sup;
    report.beta_nu = std::max(report.beta_nu, sup);
  }
  report.constants.beta_nu = report.beta_nu;

  // E' existence for the two-periodic pipeline (reported, not consumed).
  try {
    report.e_prime_construction = build_E(S, report.constants.delta, /*periodic=*/true).construction;
  } catch (const std::exception& e) {
    report.e_prime_construction = std::string("unavailable: ") + e.what();
  }

  // Mass consistency of the measure recursion.
  const auto evolve = evolve_A(S, B, report.solve.a, lambda, 2.0 * d, n_max);
  report.evolve_max_mass_error = evolve.max_mass_error;

  // (6) CLT table for C_n/c_n vs 2 phi_{n delta}.
  MeasureSequence normalized;
  normalized.reserve(c_measures.size());
  for (int n = 0; n <= n_max; ++n)
    normalized.push_back(
        c_measures[static_cast<std::size_t>(n)].scaled(1.0 / report.c[static_cast<std::size_t>(n)]));
  std::vector<int> n_list;
  for (int n = 1; n <= n_max; ++n) n_list.push_back(n);
  report.clt = clt_error_table(normalized, RealSequence::ones(n_max), report.constants,
                               /*periodic=*/true, n_list, options.clt_rows_per_n);

  for (double nu : options.nu_grid) {
    DerivedConstants c2 = report.constants;
    c2.nu = nu;
    const auto t = clt_error_table(normalized, RealSequence::ones(n_max), c2, true, n_list, 0);
    double worst = 0.0;
    for (const auto& [n, r] : t.sup_ratio) worst = std::max(worst, r);
    report.clt_nu_grid_sup.emplace_back(nu, worst);
  }

  // (7) c_n vs alpha mu^n.
  report.main1_scaled.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
  report.mass_ratios.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
  for (int n = 1; n <= n_max; ++n) {
    const double predicted =
        report.mass_constants.alpha * std::pow(report.mass_constants.mu, n);
    report.main1_scaled[static_cast<std::size_t>(n)] =
        std::abs(report.c[static_cast<std::size_t>(n)] / predicted - 1.0) * std::sqrt(n);
    report.mass_ratios[static_cast<std::size_t>(n)] =
        report.c[static_cast<std::size_t>(n)] / report.c[static_cast<std::size_t>(n - 1)];
  }
  return report;
}

}  // namespace lacelab
