// lacelab command-line front end: exact lace-expansion objects, the
// fixed-point constant solvers, and the CLT error tables, with
// deterministic CSV/JSON artifacts.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "lacelab/gauss_approx.hpp"
#include "lacelab/io.hpp"
#include "lacelab/lace_functions.hpp"
#include "lacelab/local_fp.hpp"

namespace {

using lacelab::Json;
using lacelab::Rational;

struct CommonOpts {
  int dim = 1;
  std::string lambda_text = "0";
  Rational lambda = Rational(0);
  bool exact = false;
  long long budget = lacelab::kDefaultBudget;
  int threads = 1;
  bool force = false;
  std::string out_path;
  std::string format = "json";
};

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_lambda) {
  cmd->add_option("--d", o.dim, "lattice dimension (1..5)")->required();
  if (needs_lambda)
    cmd->add_option("--lambda", o.lambda_text,
                    "interaction strength in [0,1]; rationals like 1/2 are exact");
  cmd->add_flag("--exact", o.exact, "emit exact rational weights (decimal strings)");
  if (const char* env = std::getenv("LACELAB_BUDGET")) o.budget = std::atoll(env);
  cmd->add_option("--budget", o.budget, "enumeration budget in path-steps");
  cmd->add_option("--threads", o.threads, "worker cap for the path enumeration");
  cmd->add_flag("--force", o.force, "run outside guaranteed parameter regimes");
  cmd->add_option("--out", o.out_path, "output file (default: stdout)");
  cmd->add_option("--format", o.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
}

void finish_common(CommonOpts& o) {
  auto lam = Rational::parse(o.lambda_text);
  if (!lam) throw CLI::ValidationError("--lambda", "cannot parse '" + o.lambda_text + "'");
  o.lambda = *lam;
  if (o.lambda < Rational(0) || o.lambda > Rational(1))
    throw CLI::ValidationError("--lambda", "must lie in [0,1]");
}

Json base_config(const std::string& command, const CommonOpts& o) {
  Json c;
  c["command"] = command;
  c["d"] = o.dim;
  c["lambda"] = o.lambda.to_fraction_string();
  c["exact"] = o.exact;
  c["budget"] = o.budget;
  c["threads"] = o.threads;
  c["force"] = o.force;
  c["format"] = o.format;
  return c;
}

void emit(const CommonOpts& o, const std::string& content) {
  if (o.out_path.empty())
    std::cout << content;
  else
    lacelab::write_text_file(o.out_path, content);
}

void emit_json(const CommonOpts& o, const Json& config, Json payload) {
  emit(o, lacelab::output_envelope(config, std::move(payload)).dump(2) + "\n");
}

void csv_config_header(lacelab::CsvWriter& csv, const Json& config) {
  for (const auto& [key, value] : config.items())
    csv.set_header(key, value.is_string() ? value.get<std::string>() : value.dump());
}

std::string fmt(double v) { return lacelab::format_double(v); }

// ---------------------------------------------------------------- enumerate

int run_enumerate(const CommonOpts& o, int n) {
  lacelab::SawCache cache(o.budget, o.threads);
  Json config = base_config("enumerate", o);
  config["n"] = n;
  const auto measure = cache.connectivity<Rational>(o.dim, n, o.lambda);

  if (o.format == "csv") {
    std::vector<std::string> cols;
    for (int i = 1; i <= o.dim; ++i) cols.push_back("x" + std::to_string(i));
    cols.push_back("weight");
    lacelab::CsvWriter csv(cols);
    csv_config_header(csv, config);
    csv.set_header("c_n", measure.mass().to_decimal_string());
    for (const auto& p : measure.sorted_points()) {
      std::vector<std::string> row;
      for (int i = 0; i < o.dim; ++i) row.push_back(std::to_string(p[i]));
      row.push_back(o.exact ? measure.at(p).to_decimal_string() : fmt(measure.at(p).to_double()));
      csv.add_row(row);
    }
    emit(o, csv.str());
  } else {
    Json payload;
    payload["n"] = n;
    payload["c_n"] = o.exact ? Json(measure.mass().to_decimal_string())
                             : Json(measure.mass().to_double());
    payload["measure"] = o.exact ? lacelab::measure_to_json(measure)
                                 : lacelab::measure_to_json(lacelab::to_double_measure(measure));
    emit_json(o, config, payload);
  }
  return 0;
}

// -------------------------------------------------------------------- laces

int run_laces(const CommonOpts& o, int a, int b, int n_edges, bool with_compatible) {
  Json config = base_config("laces", o);
  config["a"] = a;
  config["b"] = b;
  config["N"] = n_edges;
  config["compatible"] = with_compatible;

  std::vector<int> ns;
  if (n_edges > 0)
    ns.push_back(n_edges);
  else
    for (int k = 1; k <= std::max(1, b - a - 1); ++k) ns.push_back(k);

  auto edge_list_string = [](const std::vector<lacelab::Edge>& edges) {
    std::string s;
    for (const auto& e : edges) {
      if (!s.empty()) s += ";";
      s += std::to_string(e.s) + "-" + std::to_string(e.t);
    }
    return s;
  };

  if (o.format == "csv") {
    lacelab::CsvWriter csv({"N", "edges", "compatible_edges"});
    csv_config_header(csv, config);
    for (int k : ns)
      for (const auto& lace : lacelab::enumerate_laces(a, b, k))
        csv.add_row({std::to_string(k), edge_list_string(lace.edges),
                     with_compatible ? edge_list_string(lacelab::compatible_edges(lace)) : ""});
    emit(o, csv.str());
  } else {
    Json payload = Json::array();
    for (int k : ns) {
      for (const auto& lace : lacelab::enumerate_laces(a, b, k)) {
        Json item;
        item["N"] = k;
        Json edges = Json::array();
        for (const auto& e : lace.edges) edges.push_back({e.s, e.t});
        item["edges"] = std::move(edges);
        if (with_compatible) {
          Json compat = Json::array();
          for (const auto& e : lacelab::compatible_edges(lace)) compat.push_back({e.s, e.t});
          item["compatible"] = std::move(compat);
        }
        payload.push_back(std::move(item));
      }
    }
    emit_json(o, config, payload);
  }
  return 0;
}

// ----------------------------------------------------------------------- pi

int run_pi(const CommonOpts& o, int m, bool breakdown) {
  lacelab::SawCache cache(o.budget, o.threads);
  Json config = base_config("pi", o);
  config["m"] = m;
  config["breakdown"] = breakdown;
  const auto result = cache.pi<Rational>(o.dim, m, o.lambda);

  auto to_json = [&](const lacelab::SignedMeasure<Rational>& g) {
    return o.exact ? lacelab::measure_to_json(g)
                   : lacelab::measure_to_json(lacelab::to_double_measure(g));
  };

  if (o.format == "csv") {
    std::vector<std::string> cols;
    for (int i = 1; i <= o.dim; ++i) cols.push_back("x" + std::to_string(i));
    cols.push_back("weight");
    lacelab::CsvWriter csv(cols);
    csv_config_header(csv, config);
    csv.set_header("pi_m", result.pi.mass().to_decimal_string());
    for (const auto& p : result.pi.sorted_points()) {
      std::vector<std::string> row;
      for (int i = 0; i < o.dim; ++i) row.push_back(std::to_string(p[i]));
      row.push_back(o.exact ? result.pi.at(p).to_decimal_string()
                            : fmt(result.pi.at(p).to_double()));
      csv.add_row(row);
    }
    emit(o, csv.str());
  } else {
    Json payload;
    payload["m"] = m;
    payload["pi_m_mass"] = o.exact ? Json(result.pi.mass().to_decimal_string())
                                   : Json(result.pi.mass().to_double());
    payload["pi_m"] = to_json(result.pi);
    if (breakdown) {
      Json parts = Json::array();
      for (std::size_t i = 0; i < result.by_edge_count.size(); ++i) {
        Json part;
        part["N"] = static_cast<int>(i + 1);
        part["measure"] = to_json(result.by_edge_count[i]);
        parts.push_back(std::move(part));
      }
      payload["by_edge_count"] = std::move(parts);
    }
    emit_json(o, config, payload);
  }
  return 0;
}

// -------------------------------------------------------- verify-recursion

int run_verify_recursion(const CommonOpts& o, int n) {
  lacelab::SawCache cache(o.budget, o.threads);
  Json config = base_config("verify-recursion", o);
  config["n"] = n;
  const auto report = lacelab::verify_lace_recursion(o.dim, o.lambda, n, cache);

  Json payload;
  payload["n"] = n;
  payload["path_identity_ok"] = report.path_identity_ok;
  payload["measure_identity_ok"] = report.measure_identity_ok;
  payload["paths_checked"] = report.paths_checked;
  payload["paths_sampled"] = report.paths_sampled;
  payload["ok"] = report.ok();
  if (!report.detail.empty()) payload["detail"] = report.detail;

  if (o.format == "csv") {
    lacelab::CsvWriter csv({"check", "ok"});
    csv_config_header(csv, config);
    csv.add_row({"path_identity", report.path_identity_ok ? "1" : "0"});
    csv.add_row({"measure_identity", report.measure_identity_ok ? "1" : "0"});
    emit(o, csv.str());
  } else {
    emit_json(o, config, payload);
  }
  std::cerr << (report.ok() ? "recursion identity holds" : "recursion identity FAILED") << " (d="
            << o.dim << ", lambda=" << o.lambda.to_fraction_string() << ", n=" << n << ")\n";
  return report.ok() ? 0 : 1;
}

// ---------------------------------------------------------------- constants

Json constants_payload(const lacelab::SawPipelineReport& r) {
  Json j;
  j["mu"] = r.mass_constants.mu;
  j["alpha"] = r.mass_constants.alpha;
  j["beta"] = r.beta;
  j["beta_nu"] = r.beta_nu;
  j["rho"] = r.constants.rho;
  j["sigma"] = r.constants.sigma;
  j["tau"] = r.constants.tau;
  j["delta"] = r.constants.delta;
  j["nu"] = r.constants.nu;
  j["delta_window_ok"] = r.constants.delta_window_ok;
  j["pi_route"] = {{"mu", r.pi_constants.mu},
                   {"alpha", r.pi_constants.alpha},
                   {"delta", r.pi_constants.delta},
                   {"iterations", r.pi_constants.iterations}};
  j["delta_cross_diff"] = r.delta_cross_diff;
  j["delta_cross_ok"] = r.delta_cross_ok;
  j["tail"] = {{"rho", r.constants.tail_rho},
               {"sigma", r.constants.tail_sigma},
               {"tau", r.constants.tail_tau},
               {"delta", r.constants.tail_delta},
               {"kernel_exponent", r.kernel_tail.exponent},
               {"kernel_m_abs_b", r.kernel_tail.tail_m_abs_b}};
  j["iterations"] = r.solve.sweeps;
  j["contraction_factor"] = r.solve.max_contraction;
  j["residual"] = r.solve.max_residual;
  j["lambda_admissible_max"] = r.solve.lambda_max;
  j["evolve_max_mass_error"] = r.evolve_max_mass_error;
  j["e_prime"] = r.e_prime_construction;
  j["low_dim_warning"] = r.low_dim_warning;
  return j;
}

int run_constants(const CommonOpts& o, int n_max, double nu) {
  lacelab::SawCache cache(o.budget, o.threads);
  Json config = base_config("constants", o);
  config["nmax"] = n_max;
  if (nu > 0) config["nu"] = nu;

  lacelab::ModelParams params{o.dim, o.lambda, n_max};
  lacelab::SawPipelineOptions opts;
  opts.nu = nu;
  opts.force = o.force;
  const auto report = lacelab::saw_pipeline(params, n_max, cache, opts);

  if (o.format == "csv") {
    lacelab::CsvWriter csv({"n", "a_n", "delta_a_n"});
    csv_config_header(csv, config);
    csv.set_header("mu", fmt(report.mass_constants.mu));
    csv.set_header("alpha", fmt(report.mass_constants.alpha));
    csv.set_header("delta", fmt(report.constants.delta));
    csv.set_header("beta", fmt(report.beta));
    const auto& a = report.solve.a.values;
    for (std::size_t n = 0; n < a.size(); ++n)
      csv.add_row({std::to_string(n), fmt(a[n]), fmt(n == 0 ? a[0] : a[n] - a[n - 1])});
    emit(o, csv.str());
  } else {
    Json payload = constants_payload(report);
    payload["a"] = report.solve.a.values;
    payload["b"] = report.b.b;
    payload["c"] = report.c;
    payload["pi_mass"] = report.pi_mass;
    emit_json(o, config, payload);
  }
  return 0;
}

// ---------------------------------------------------------------- clt-table

void clt_csv(const CommonOpts& o, const Json& config, const lacelab::CltTable& table) {
  std::vector<std::string> cols{"n"};
  for (int i = 1; i <= o.dim; ++i) cols.push_back("x" + std::to_string(i));
  cols.insert(cols.end(), {"lhs", "bound", "ratio"});
  lacelab::CsvWriter csv(cols);
  csv_config_header(csv, config);
  for (const auto& [n, sup] : table.sup_ratio)
    csv.set_header("sup_ratio_n" + std::to_string(n), fmt(sup));
  for (const auto& row : table.rows) {
    std::vector<std::string> cells{std::to_string(row.n)};
    for (int i = 0; i < o.dim; ++i) cells.push_back(std::to_string(row.x[i]));
    cells.insert(cells.end(), {fmt(row.lhs), fmt(row.bound), fmt(row.ratio)});
    csv.add_row(cells);
  }
  emit(o, csv.str());
}

Json clt_json(const lacelab::CltTable& table) {
  Json j;
  j["periodic"] = table.periodic;
  j["nu"] = table.nu;
  j["delta"] = table.delta;
  Json sups = Json::array();
  for (const auto& [n, sup] : table.sup_ratio) {
    const auto& row = table.sup_row.at(n);
    Json xs = Json::array();
    for (int i = 0; i < row.x.dim; ++i) xs.push_back(row.x[i]);
    sups.push_back({{"n", n}, {"sup_ratio", sup}, {"argmax_x", xs}});
  }
  j["sup"] = std::move(sups);
  return j;
}

int run_clt_table(const CommonOpts& o, int n_max, double nu, const std::vector<double>& nu_grid,
                  bool control, int rows_per_n) {
  Json config = base_config("clt-table", o);
  config["nmax"] = n_max;
  config["nu"] = nu;
  config["control"] = control;
  config["top"] = rows_per_n;

  std::vector<int> n_list;
  for (int n = 1; n <= n_max; ++n) n_list.push_back(n);

  if (control) {
    const double used_nu = nu > 0 ? nu : 4.0 / o.dim;
    const auto table = lacelab::control_group_table(o.dim, n_list, used_nu, rows_per_n);
    if (o.format == "csv")
      clt_csv(o, config, table);
    else
      emit_json(o, config, clt_json(table));
    return 0;
  }

  lacelab::SawCache cache(o.budget, o.threads);
  lacelab::ModelParams params{o.dim, o.lambda, n_max};
  lacelab::SawPipelineOptions opts;
  opts.nu = nu;
  opts.nu_grid = nu_grid;
  opts.clt_rows_per_n = rows_per_n;
  opts.force = o.force;
  const auto report = lacelab::saw_pipeline(params, n_max, cache, opts);
  if (o.format == "csv") {
    clt_csv(o, config, report.clt);
  } else {
    Json payload;
    payload["constants"] = constants_payload(report);
    payload["table"] = clt_json(report.clt);
    if (!report.clt_nu_grid_sup.empty()) {
      Json grid = Json::array();
      for (const auto& [g_nu, sup] : report.clt_nu_grid_sup)
        grid.push_back({{"nu", g_nu}, {"max_sup_ratio", sup}});
      payload["nu_grid"] = std::move(grid);
    }
    emit_json(o, config, payload);
  }
  return 0;
}

// ---------------------------------------------------------------- lclt-scan

int run_lclt_scan(const CommonOpts& o, const std::string& check, std::vector<int> ns,
                  double move_prob, double nu_prime, bool periodic, double eta, int n_fixed,
                  std::vector<int> ks) {
  Json config = base_config("lclt-scan", o);
  config["check"] = check;

  if (check == "lclt") {
    config["ns"] = ns;
    config["move_prob"] = move_prob;
    config["periodic"] = periodic;
    const auto g = periodic ? lacelab::step_distribution<double>(o.dim)
                            : lacelab::lazy_walk(o.dim, move_prob);
    const auto law = lacelab::StepLaw::make(g);
    const double used_nu = nu_prime > 0 ? nu_prime : 2.0 * law.eta;
    config["nu_prime"] = used_nu;
    const auto report = lacelab::lclt_error_scan(law, ns, used_nu, periodic);
    if (o.format == "csv") {
      lacelab::CsvWriter csv({"n", "sup_ratio", "fitted_exponent"});
      csv_config_header(csv, config);
      for (const auto& row : report.rows)
        csv.add_row({std::to_string(row.n), fmt(row.sup_ratio), fmt(report.fitted_exponent)});
      emit(o, csv.str());
    } else {
      Json payload;
      payload["fitted_exponent"] = report.fitted_exponent;
      Json rows = Json::array();
      for (const auto& row : report.rows)
        rows.push_back({{"n", row.n}, {"sup_ratio", row.sup_ratio}});
      payload["rows"] = std::move(rows);
      emit_json(o, config, payload);
    }
    return 0;
  }

  if (check == "taylor") {
    config["ns"] = ns;
    config["eta"] = eta;
    const auto report =
        lacelab::taylor_fold_check(lacelab::step_distribution<double>(o.dim), ns, eta);
    if (o.format == "csv") {
      lacelab::CsvWriter csv({"n", "sup_ratio", "fitted_exponent"});
      csv_config_header(csv, config);
      csv.set_header("fitted_exponent_r2", fmt(report.fitted_exponent_r2));
      for (const auto& row : report.rows)
        csv.add_row({std::to_string(row.n), fmt(row.sup_r4), fmt(report.fitted_exponent_r4)});
      emit(o, csv.str());
    } else {
      Json payload;
      payload["fitted_exponent_r4"] = report.fitted_exponent_r4;
      payload["fitted_exponent_r2"] = report.fitted_exponent_r2;
      Json rows = Json::array();
      for (const auto& row : report.rows)
        rows.push_back({{"n", row.n},
                        {"sup_r4", row.sup_r4},
                        {"k4_emp", row.k4_emp},
                        {"sup_r2", row.sup_r2},
                        {"k2_emp", row.k2_emp}});
      payload["rows"] = std::move(rows);
      emit_json(o, config, payload);
    }
    return 0;
  }

  if (check == "variance") {
    config["n"] = n_fixed;
    config["ks"] = ks;
    config["eta"] = eta;
    const auto report = lacelab::variance_shift_check(n_fixed, ks, eta, o.dim);
    if (o.format == "csv") {
      lacelab::CsvWriter csv({"k", "sup_ratio", "fitted_exponent"});
      csv_config_header(csv, config);
      csv.set_header("fitted_exponent_s1", fmt(report.fitted_exponent_s1));
      for (const auto& row : report.rows)
        csv.add_row({std::to_string(row.k), fmt(row.sup_s2), fmt(report.fitted_exponent_s2)});
      emit(o, csv.str());
    } else {
      Json payload;
      payload["fitted_exponent_s2"] = report.fitted_exponent_s2;
      payload["fitted_exponent_s1"] = report.fitted_exponent_s1;
      Json rows = Json::array();
      for (const auto& row : report.rows)
        rows.push_back({{"k", row.k},
                        {"sup_s2", row.sup_s2},
                        {"k2_emp", row.k2_emp},
                        {"sup_s1", row.sup_s1},
                        {"k1_emp", row.k1_emp}});
      payload["rows"] = std::move(rows);
      emit_json(o, config, payload);
    }
    return 0;
  }
  throw CLI::ValidationError("--check", "unknown check '" + check + "'");
}

// ------------------------------------------------------------------- report

int run_report(const CommonOpts& o, int n_max, double nu, const std::vector<double>& nu_grid,
               int rows_per_n) {
  lacelab::SawCache cache(o.budget, o.threads);
  Json config = base_config("report", o);
  config["nmax"] = n_max;
  if (nu > 0) config["nu"] = nu;
  config["top"] = rows_per_n;

  lacelab::ModelParams params{o.dim, o.lambda, n_max};
  lacelab::SawPipelineOptions opts;
  opts.nu = nu;
  opts.nu_grid = nu_grid;
  opts.clt_rows_per_n = rows_per_n;
  opts.force = o.force;
  const auto report = lacelab::saw_pipeline(params, n_max, cache, opts);

  if (o.format == "csv") {
    clt_csv(o, config, report.clt);
    return 0;
  }
  Json payload;
  payload["constants"] = constants_payload(report);
  payload["c"] = report.c;
  payload["mass_ratios"] = report.mass_ratios;
  payload["pi_mass"] = report.pi_mass;
  payload["pi_moment"] = report.pi_moment;
  payload["b"] = report.b.b;
  payload["b_bar"] = report.b_bar.b;
  payload["beta_nu_per_m"] = report.beta_nu_per_m;
  payload["a"] = report.solve.a.values;
  payload["main1_scaled"] = report.main1_scaled;
  payload["clt"] = clt_json(report.clt);
  if (!report.clt_nu_grid_sup.empty()) {
    Json grid = Json::array();
    for (const auto& [g_nu, sup] : report.clt_nu_grid_sup)
      grid.push_back({{"nu", g_nu}, {"max_sup_ratio", sup}});
    payload["nu_grid"] = std::move(grid);
  }
  emit_json(o, config, payload);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lacelab: lace expansion and CLT error structure for weakly self-avoiding walks"};
  app.set_version_flag("--version", lacelab::version_string());
  app.require_subcommand(1);

  CommonOpts o;
  int n = 0, m = 0, n_max = 8, a = 0, b = 0, n_edges = 0, rows_per_n = 100, n_fixed = 32;
  double nu = 0.0, move_prob = 0.5, nu_prime = 0.0, eta = 1.0;
  bool breakdown = false, with_compatible = false, control = false, periodic = false;
  std::vector<double> nu_grid;
  std::vector<int> ns{4, 8, 16, 32, 64}, ks{1, 2, 4, 8};
  std::string check = "lclt";

  auto* cmd_enum = app.add_subcommand("enumerate", "exact connectivity C_n");
  add_common(cmd_enum, o, true);
  cmd_enum->add_option("--n", n, "number of steps")->required();

  auto* cmd_laces = app.add_subcommand("laces", "enumerate laces on [a,b]");
  add_common(cmd_laces, o, false);
  cmd_laces->add_option("--a", a, "interval start");
  cmd_laces->add_option("--b", b, "interval end")->required();
  cmd_laces->add_option("--N", n_edges, "edge count (0 = all)");
  cmd_laces->add_flag("--compatible", with_compatible, "include compatible edge sets");

  auto* cmd_pi = app.add_subcommand("pi", "lace function Pi_m");
  add_common(cmd_pi, o, true);
  cmd_pi->add_option("--m", m, "time span")->required();
  cmd_pi->add_flag("--breakdown", breakdown, "include Pi_m^{(N)} by edge count");

  auto* cmd_verify = app.add_subcommand("verify-recursion", "exact lace-expansion recursion check");
  add_common(cmd_verify, o, true);
  cmd_verify->add_option("--n", n, "recursion depth")->required();

  auto* cmd_const = app.add_subcommand("constants", "mass constants mu, alpha, delta");
  add_common(cmd_const, o, true);
  cmd_const->add_option("--nmax", n_max, "enumeration depth for the kernel");
  cmd_const->add_option("--nu", nu, "envelope parameter (default 4 delta)");

  auto* cmd_clt = app.add_subcommand("clt-table", "local-estimate error table");
  add_common(cmd_clt, o, true);
  cmd_clt->add_option("--nmax", n_max, "largest n in the table");
  cmd_clt->add_option("--nu", nu, "envelope parameter (default 4 delta)");
  cmd_clt->add_option("--nu-grid", nu_grid, "additional nu values to scan");
  cmd_clt->add_flag("--control", control, "pure-Gaussian control group (B = 0, S = E)");
  cmd_clt->add_option("--top", rows_per_n, "rows kept per n in the CSV");

  auto* cmd_scan = app.add_subcommand("lclt-scan", "LCLT and Taylor-remainder scans");
  add_common(cmd_scan, o, false);
  cmd_scan->add_option("--check", check, "lclt | taylor | variance");
  cmd_scan->add_option("--ns", ns, "n grid");
  cmd_scan->add_option("--ks", ks, "k grid (variance check)");
  cmd_scan->add_option("--n", n_fixed, "fixed n (variance check)");
  cmd_scan->add_option("--move-prob", move_prob, "lazy-walk move probability");
  cmd_scan->add_option("--nu-prime", nu_prime, "comparison envelope variance");
  cmd_scan->add_option("--eta", eta, "variance parameter (taylor/variance checks)");
  cmd_scan->add_flag("--periodic", periodic, "two-periodic scan with doubled density");

  auto* cmd_report = app.add_subcommand("report", "full SAW pipeline report");
  add_common(cmd_report, o, true);
  cmd_report->add_option("--nmax", n_max, "enumeration depth");
  cmd_report->add_option("--nu", nu, "envelope parameter (default 4 delta)");
  cmd_report->add_option("--nu-grid", nu_grid, "additional nu values to scan");
  cmd_report->add_option("--top", rows_per_n, "rows kept per n in the CSV table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    finish_common(o);
    if (cmd_enum->parsed()) return run_enumerate(o, n);
    if (cmd_laces->parsed()) return run_laces(o, a, b, n_edges, with_compatible);
    if (cmd_pi->parsed()) return run_pi(o, m, breakdown);
    if (cmd_verify->parsed()) return run_verify_recursion(o, n);
    if (cmd_const->parsed()) return run_constants(o, n_max, nu);
    if (cmd_clt->parsed()) return run_clt_table(o, n_max, nu, nu_grid, control, rows_per_n);
    if (cmd_scan->parsed())
      return run_lclt_scan(o, check, ns, move_prob, nu_prime, periodic, eta, n_fixed, ks);
    if (cmd_report->parsed()) return run_report(o, n_max, nu, nu_grid, rows_per_n);
    std::cerr << "no subcommand\n";
    return 2;
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const lacelab::BudgetExceeded& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid arguments: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "validation failure: " << e.what() << "\n";
    return 1;
  }
}
