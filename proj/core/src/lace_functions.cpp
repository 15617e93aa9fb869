#include "lacelab/lace_functions.hpp"

#include <future>
#include <mutex>
#include <random>

#include "lacelab/local_fp.hpp"
#include "path_dfs.hpp"

namespace lacelab {

namespace {

std::vector<std::uint64_t> edges_to_mask(const std::vector<Edge>& edges, int n_pairs) {
  std::vector<std::uint64_t> mask(static_cast<std::size_t>(n_pairs + 63) / 64, 0);
  for (const Edge& e : edges) {
    const int idx = detail::pair_index(e.s, e.t);
    mask[static_cast<std::size_t>(idx) >> 6] |= std::uint64_t(1) << (idx & 63);
  }
  return mask;
}

bool mask_subset(const std::vector<std::uint64_t>& sub, const std::vector<std::uint64_t>& super) {
  for (std::size_t i = 0; i < sub.size(); ++i)
    if ((sub[i] & ~super[i]) != 0) return false;
  return true;
}

int mask_intersection_count(const std::vector<std::uint64_t>& a,
                            const std::vector<std::uint64_t>& b) {
  int n = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    n += __builtin_popcountll(a[i] & b[i]);
  return n;
}

}  // namespace

const LaceTable& lace_table(int m) {
  static std::mutex mu;
  static std::map<int, LaceTable> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;

  LaceTable table;
  table.m = m;
  const int n_pairs = detail::pair_count(m);
  for (int n_edges = 1; n_edges <= std::max(1, m - 1); ++n_edges) {
    auto laces = enumerate_laces(0, m, n_edges);
    if (laces.empty()) continue;
    table.max_edges = n_edges;
    for (const Lace& lace : laces) {
      LaceTable::Entry entry;
      entry.n_edges = n_edges;
      entry.edges = lace.edges;
      entry.edge_mask = edges_to_mask(lace.edges, n_pairs);
      entry.compat_mask = edges_to_mask(compatible_edges(lace), n_pairs);
      table.entries.push_back(std::move(entry));
    }
  }
  return cache.emplace(m, std::move(table)).first->second;
}

namespace {

struct PiVisitor {
  const LaceTable* table = nullptr;
  std::vector<HistMeasure> per_n;

  explicit PiVisitor(const LaceTable& t)
      : table(&t), per_n(static_cast<std::size_t>(std::max(t.max_edges, 0))) {}

  void leaf(std::uint64_t key, int collisions, const std::vector<std::uint64_t>& mask) {
    if (collisions == 0) return;
    for (const auto& entry : table->entries) {
      if (entry.n_edges > collisions) break;  // entries sorted by edge count
      if (!mask_subset(entry.edge_mask, mask)) continue;
      per_n[static_cast<std::size_t>(entry.n_edges - 1)][key].bump(
          mask_intersection_count(entry.compat_mask, mask));
    }
  }
};

void merge_hist_into(HistMeasure& into, HistMeasure&& from) {
  for (auto& [key, h] : from) into[key].merge(h);
}

}  // namespace

PiHist enumerate_pi_hist(int dim, int m, long long budget, int threads) {
  if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("enumerate_pi_hist: dim out of range");
  if (m < 1) throw std::invalid_argument("enumerate_pi_hist: m must be >= 1");
  const long long work = enumeration_work(dim, m);
  if (work > budget) throw BudgetExceeded(work);

  const LaceTable& table = lace_table(m);
  detail::PathDfsContext ctx(dim, m);
  const auto prefixes = detail::dfs_prefixes(ctx);

  std::vector<HistMeasure> reduced(static_cast<std::size_t>(std::max(table.max_edges, 0)));
  if (threads <= 1) {
    PiVisitor vis(table);
    detail::PathDfs<true, PiVisitor> dfs(ctx, vis);
    for (const auto& prefix : prefixes) dfs.run(prefix);
    reduced = std::move(vis.per_n);
  } else {
    std::vector<std::future<std::vector<HistMeasure>>> futures;
    for (const auto& prefix : prefixes) {
      futures.push_back(std::async(std::launch::async, [&ctx, &table, prefix]() {
        PiVisitor vis(table);
        detail::PathDfs<true, PiVisitor> dfs(ctx, vis);
        dfs.run(prefix);
        return std::move(vis.per_n);
      }));
    }
    for (auto& f : futures) {
      auto part = f.get();
      for (std::size_t i = 0; i < part.size(); ++i) merge_hist_into(reduced[i], std::move(part[i]));
    }
  }

  PiHist out;
  out.dim = dim;
  out.m = m;
  out.per_edge_count.resize(reduced.size());
  for (std::size_t i = 0; i < reduced.size(); ++i) {
    for (const AxisMap& map : first_step_maps(dim)) {
      for (const auto& [key, h] : reduced[i])
        out.per_edge_count[i][pack_point(map.apply(unpack_point(key, dim)))].merge(h);
    }
  }
  return out;
}

const HistMeasure& SawCache::connectivity_hist(int dim, int n) {
  auto key = std::make_pair(dim, n);
  auto it = conn_.find(key);
  if (it == conn_.end())
    it = conn_.emplace(key, enumerate_connectivity_hist(dim, n, budget_, threads_)).first;
  return it->second;
}

const PiHist& SawCache::pi_hist(int dim, int m) {
  auto key = std::make_pair(dim, m);
  auto it = pi_.find(key);
  if (it == pi_.end()) it = pi_.emplace(key, enumerate_pi_hist(dim, m, budget_, threads_)).first;
  return it->second;
}

namespace {

// Collision-pair bitmask of a concrete path over the pairs of [0,m].
std::vector<std::uint64_t> path_pair_mask(const std::vector<std::uint64_t>& keys, int m) {
  std::vector<std::uint64_t> mask(static_cast<std::size_t>(detail::pair_count(m) + 63) / 64, 0);
  for (int t = 1; t <= m; ++t)
    for (int s = 0; s < t; ++s)
      if (keys[static_cast<std::size_t>(s)] == keys[static_cast<std::size_t>(t)]) {
        const int idx = detail::pair_index(s, t);
        mask[static_cast<std::size_t>(idx) >> 6] |= std::uint64_t(1) << (idx & 63);
      }
  return mask;
}

int collisions_in_window(const std::vector<std::uint64_t>& keys, int a, int b) {
  int n = 0;
  for (int s = a; s < b; ++s)
    for (int t = s + 1; t <= b; ++t)
      if (keys[static_cast<std::size_t>(s)] == keys[static_cast<std::size_t>(t)]) ++n;
  return n;
}

Rational j_from_lace_table(const std::vector<std::uint64_t>& keys, int m,
                           const std::vector<Rational>& pw_one_minus,
                           const std::vector<Rational>& pw_minus) {
  const LaceTable& table = lace_table(m);
  const auto mask = path_pair_mask(keys, m);
  Rational j(0);
  for (const auto& entry : table.entries) {
    if (!mask_subset(entry.edge_mask, mask)) continue;
    j += pw_minus[static_cast<std::size_t>(entry.n_edges)] *
         pw_one_minus[static_cast<std::size_t>(mask_intersection_count(entry.compat_mask, mask))];
  }
  return j;
}

bool check_path_identity(const std::vector<std::uint64_t>& keys, int n,
                         const std::vector<Rational>& pw_one_minus,
                         const std::vector<Rational>& pw_minus, std::string* detail_out) {
  auto k_weight = [&](int a, int b) {
    return pw_one_minus[static_cast<std::size_t>(collisions_in_window(keys, a, b))];
  };
  Rational lhs = k_weight(0, n);
  Rational rhs = k_weight(1, n);
  for (int m = 2; m <= n; ++m)
    rhs += j_from_lace_table(keys, m, pw_one_minus, pw_minus) * k_weight(m, n);
  if (lhs == rhs) return true;
  if (detail_out) {
    *detail_out = "per-path identity failed: K[0,n]=" + lhs.to_fraction_string() +
                  " vs rhs=" + rhs.to_fraction_string();
  }
  return false;
}

}  // namespace

RecursionReport verify_lace_recursion(int dim, const Rational& lambda, int n, SawCache& cache,
                                      long long full_path_cap, long long sample_count) {
  RecursionReport report;
  report.dim = dim;
  report.n = n;
  report.lambda = lambda.to_fraction_string();

  const int max_pairs = detail::pair_count(n);
  const auto pw_one_minus = one_minus_lambda_powers(lambda, max_pairs);
  std::vector<Rational> pw_minus(static_cast<std::size_t>(n) + 1);
  pw_minus[0] = Rational(1);
  for (int i = 1; i <= n; ++i) pw_minus[static_cast<std::size_t>(i)] = pw_minus[static_cast<std::size_t>(i - 1)] * (-lambda);

  // (i) Per-path resummation identity: exhaustively below the cap, otherwise
  // on a deterministic random sample.
  report.path_identity_ok = true;
  long double total_paths_ld = 1.0L;
  for (int i = 0; i < n; ++i) total_paths_ld *= 2.0L * dim;
  std::vector<std::uint64_t> keys(static_cast<std::size_t>(n) + 1);
  detail::PathDfsContext ctx(dim, std::max(n, 1));
  keys[0] = ctx.origin_key;
  if (total_paths_ld <= static_cast<long double>(full_path_cap)) {
    std::vector<int> moves(static_cast<std::size_t>(n), 0);
    while (true) {
      for (int t = 0; t < n; ++t)
        keys[static_cast<std::size_t>(t + 1)] =
            keys[static_cast<std::size_t>(t)] +
            static_cast<std::uint64_t>(ctx.key_deltas[static_cast<std::size_t>(moves[static_cast<std::size_t>(t)])]);
      ++report.paths_checked;
      if (!check_path_identity(keys, n, pw_one_minus, pw_minus, &report.detail)) {
        report.path_identity_ok = false;
        break;
      }
      int i = 0;
      for (; i < n; ++i) {
        if (++moves[static_cast<std::size_t>(i)] < 2 * dim) break;
        moves[static_cast<std::size_t>(i)] = 0;
      }
      if (i == n) break;
    }
  } else {
    report.paths_sampled = true;
    std::mt19937_64 rng(0x1ace5eedULL + static_cast<unsigned>(dim) * 1000003u +
                        static_cast<unsigned>(n));
    std::uniform_int_distribution<int> move(0, 2 * dim - 1);
    for (long long i = 0; i < sample_count; ++i) {
      for (int t = 0; t < n; ++t)
        keys[static_cast<std::size_t>(t + 1)] =
            keys[static_cast<std::size_t>(t)] +
            static_cast<std::uint64_t>(ctx.key_deltas[static_cast<std::size_t>(move(rng))]);
      ++report.paths_checked;
      if (!check_path_identity(keys, n, pw_one_minus, pw_minus, &report.detail)) {
        report.path_identity_ok = false;
        break;
      }
    }
  }

  // (ii) Measure identity (recursion): C_n = 2d D*C_{n-1} + sum Pi_m * C_{n-m}.
  const auto lhs = cache.connectivity<Rational>(dim, n, lambda);
  auto rhs = convolve(step_distribution<Rational>(dim), cache.connectivity<Rational>(dim, n - 1, lambda))
                 .scaled(Rational(2L * dim));
  for (int m = 2; m <= n; ++m) {
    const auto pi = cache.pi<Rational>(dim, m, lambda);
    rhs.add_scaled(convolve(pi.pi, cache.connectivity<Rational>(dim, n - m, lambda)), Rational(1));
  }
  report.measure_identity_ok = (lhs == rhs);
  if (!report.measure_identity_ok && report.detail.empty()) {
    // Locate one offending site for the report.
    for (const auto& [key, v] : lhs.entries()) {
      Point p = lhs.point_of(key);
      if (!(rhs.at(p) == v)) {
        report.detail = "measure identity failed at x=" + to_string(p) + ": C_n=" +
                        v.to_fraction_string() + " vs rhs=" + rhs.at(p).to_fraction_string();
        break;
      }
    }
    if (report.detail.empty()) report.detail = "measure identity failed: rhs has extra support";
  }
  return report;
}

JComparison j_by_graphs_vs_laces(const Path& omega, int a, int b, const Rational& lambda) {
  omega.validate();
  if (!(0 <= a && a < b && b <= omega.length()))
    throw std::invalid_argument("j_by_graphs_vs_laces: bad interval");

  // Collision pairs within [a,b]; only graphs made of such pairs contribute
  // (any edge with U_st = 0 kills the product).
  std::vector<Edge> pairs;
  for (int s = a; s < b; ++s)
    for (int t = s + 1; t <= b; ++t)
      if (omega.sites[static_cast<std::size_t>(s)] == omega.sites[static_cast<std::size_t>(t)])
        pairs.push_back(Edge{s, t});
  if (pairs.size() > 24)
    throw std::invalid_argument("j_by_graphs_vs_laces: too many collision pairs to enumerate");

  JComparison out;
  std::vector<Rational> pw_minus(pairs.size() + 1);
  pw_minus[0] = Rational(1);
  for (std::size_t i = 1; i <= pairs.size(); ++i) pw_minus[i] = pw_minus[i - 1] * (-lambda);

  for (std::uint64_t subset = 0; subset < (std::uint64_t(1) << pairs.size()); ++subset) {
    Graph g{a, b, {}};
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (subset & (std::uint64_t(1) << i)) g.edges.push_back(pairs[i]);
    g.normalize();
    if (!is_connected(g)) continue;
    ++out.connected_graphs;
    out.graph_sum += pw_minus[g.edges.size()];
  }

  // Lace resummation over laces on [a,b] whose edges all collide.
  const Rational one_minus = Rational(1) - lambda;
  auto colliding = [&](const Edge& e) {
    return omega.sites[static_cast<std::size_t>(e.s)] == omega.sites[static_cast<std::size_t>(e.t)];
  };
  for (int n_edges = 1; n_edges <= b - a; ++n_edges) {
    for (const Lace& lace : enumerate_laces(a, b, n_edges)) {
      bool all = true;
      for (const Edge& e : lace.edges) all = all && colliding(e);
      if (!all) continue;
      Rational term = pw_minus.size() > static_cast<std::size_t>(n_edges)
                          ? pw_minus[static_cast<std::size_t>(n_edges)]
                          : pow(-lambda, static_cast<unsigned>(n_edges));
      for (const Edge& e : compatible_edges(lace))
        if (colliding(e)) term *= one_minus;
      out.lace_sum += term;
    }
  }
  out.equal = (out.graph_sum == out.lace_sum);
  return out;
}

namespace {

// sum_{k+l = s, k,l >= 1} C_k(x) C_l(x), the "doubled leg" of the lace diagrams.
SignedMeasure<Rational> doubled_leg(SawCache& cache, int dim, int s, const Rational& lambda) {
  SignedMeasure<Rational> u(dim);
  for (int k = 1; k < s; ++k) {
    u.add_scaled(pointwise_multiply(cache.connectivity<Rational>(dim, k, lambda),
                                    cache.connectivity<Rational>(dim, s - k, lambda)),
                 Rational(1));
  }
  return u;
}

}  // namespace

DiagramReport diagram_bound_check(int dim, int m, int n_edges, const Rational& lambda,
                                  SawCache& cache, double mu, double big_l1, double nu) {
  if (n_edges != 2 && n_edges != 3)
    throw std::invalid_argument("diagram_bound_check: N must be 2 or 3");
  DiagramReport report;
  report.dim = dim;
  report.m = m;
  report.n_edges = n_edges;

  const auto pi = cache.pi<Rational>(dim, m, lambda);
  SignedMeasure<Rational> pi_n(dim);
  if (static_cast<int>(pi.by_edge_count.size()) >= n_edges)
    pi_n = pi.by_edge_count[static_cast<std::size_t>(n_edges - 1)];

  // Non-interacting-subwalk bound with exact connectivities.
  SignedMeasure<Rational> rhs(dim);
  if (n_edges == 2) {
    // sum_{k+l+j=m, l,j>=1} C_k(x) C_l(x) C_j(x); one zero-length leg
    // (k = 0) is admitted, matching the Gaussian-diagram counterpart.
    for (int k = 0; k <= m - 2; ++k) {
      const auto& ck = cache.connectivity<Rational>(dim, k, lambda);
      for (int l = 1; l <= m - k - 1; ++l) {
        const int j = m - k - l;
        rhs.add_scaled(pointwise_multiply(pointwise_multiply(ck, cache.connectivity<Rational>(dim, l, lambda)),
                                          cache.connectivity<Rational>(dim, j, lambda)),
                       Rational(1));
      }
    }
  } else {
    // Five-leg N=3 diagram: only the middle leg m3 may be empty.
    for (int s = 2; s <= m - 2; ++s) {
      const auto u_s = doubled_leg(cache, dim, s, lambda);
      for (int t = 2; t <= m - s; ++t) {
        const int m3 = m - s - t;
        if (m3 < 0) continue;
        const auto u_t = doubled_leg(cache, dim, t, lambda);
        rhs.add_scaled(pointwise_multiply(cache.connectivity<Rational>(dim, m3, lambda),
                                          convolve(u_s, u_t)),
                       Rational(1));
      }
    }
  }

  report.bound_holds = true;
  Rational max_ratio(0);
  Point worst = origin(dim);
  for (const auto& [key, v] : pi_n.entries()) {
    const Point x = pi_n.point_of(key);
    const Rational lhs_abs = v.abs();
    const Rational r = rhs.at(x);
    if (lhs_abs > r) {
      report.bound_holds = false;
      worst = x;
      report.max_ratio = "violation";
      break;
    }
    if (!r.is_zero()) {
      Rational ratio = lhs_abs / r;
      if (ratio > max_ratio) {
        max_ratio = ratio;
        worst = x;
      }
    }
  }
  if (report.bound_holds) report.max_ratio = max_ratio.to_fraction_string();
  report.worst_point = to_string(worst);
  report.note =
      "rhs leg constraints: N=2 admits one zero-length leg; N=3 only the middle "
      "leg may be empty (the stricter subwalk-count convention)";

  // Empirical psi_m envelope ratios (float diagnostics).
  const double lam = lambda.to_double();
  const double c_m = scalar_traits<Rational>::to_double(
      cache.connectivity<Rational>(dim, m, lambda).mass());
  if (lam > 0.0) {
    const auto pi_f = to_double_measure(pi.pi);
    double sup_behave = 0.0, sup_pimbound = 0.0;
    for (const auto& [key, v] : pi_f.entries()) {
      const Point x = pi_f.point_of(key);
      const double psi = psi_weight(m, x, nu);
      if (psi <= 0.0) continue;
      sup_behave = std::max(sup_behave, std::abs(v) / (lam * c_m * psi));
      if (mu > 0.0)
        sup_pimbound =
            std::max(sup_pimbound, std::abs(v) / (lam * big_l1 * std::pow(mu, m) * psi));
    }
    report.sup_ratio_behave = sup_behave;
    report.sup_ratio_pimbound = sup_pimbound;
  }
  return report;
}

}  // namespace lacelab
