#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lacelab/laces.hpp"
#include "lacelab/measure.hpp"
#include "lacelab/walks.hpp"

namespace lacelab {

// Laces on [0,m] with pair-index bitmasks, precomputed once per m and
// shared read-only by the path enumeration. Entries are sorted by edge
// count; a lace contributes to a path only if every lace edge is a
// self-intersection pair of the path.
struct LaceTable {
  struct Entry {
    int n_edges = 0;
    std::vector<Edge> edges;
    std::vector<std::uint64_t> edge_mask;
    std::vector<std::uint64_t> compat_mask;
  };
  int m = 0;
  int max_edges = 0;  // largest N with a nonempty lace set (= m-1 for m >= 2)
  std::vector<Entry> entries;
};

const LaceTable& lace_table(int m);  // cached per m

// Collision histograms of Pi_m^{(N)}, N = 1..max_edges; lambda-independent.
struct PiHist {
  int dim = 0;
  int m = 0;
  std::vector<HistMeasure> per_edge_count;  // index N-1
};

PiHist enumerate_pi_hist(int dim, int m, long long budget = kDefaultBudget, int threads = 1);

template <class T>
struct PiResult {
  SignedMeasure<T> pi;                              // Pi_m = sum_N (-lambda)^N Pi_m^{(N)}
  std::vector<SignedMeasure<T>> by_edge_count;      // Pi_m^{(N)}, N = 1..N_max
};

template <class T>
PiResult<T> evaluate_pi(const PiHist& hist, const T& lambda, int n_max_edges = -1) {
  const Parity parity = parity_of_integer(hist.m);
  const int cap = n_max_edges < 0 ? static_cast<int>(hist.per_edge_count.size())
                                  : std::min<int>(n_max_edges, static_cast<int>(hist.per_edge_count.size()));
  PiResult<T> out{SignedMeasure<T>(hist.dim, parity), {}};
  T sign_power = scalar_traits<T>::one();
  for (int n_edges = 1; n_edges <= cap; ++n_edges) {
    sign_power *= -lambda;  // (-lambda)^N
    auto part = evaluate_histogram(hist.per_edge_count[static_cast<std::size_t>(n_edges - 1)],
                                   hist.dim, lambda, parity);
    out.pi.add_scaled(part, sign_power);
    out.by_edge_count.push_back(std::move(part));
  }
  out.pi.set_parity(parity);
  return out;
}

// Shared enumeration cache for a pipeline run: connectivity and Pi
// histograms keyed by (dim, n). Histograms are lambda-independent, so one
// enumeration serves every lambda on a parameter grid. Not thread-safe;
// use one cache per caller thread (the enumeration itself may fan out
// over `threads` workers).
class SawCache {
 public:
  explicit SawCache(long long budget = kDefaultBudget, int threads = 1)
      : budget_(budget), threads_(threads) {}

  const HistMeasure& connectivity_hist(int dim, int n);
  const PiHist& pi_hist(int dim, int m);

  template <class T>
  SignedMeasure<T> connectivity(int dim, int n, const T& lambda) {
    return evaluate_histogram(connectivity_hist(dim, n), dim, lambda, parity_of_integer(n));
  }
  template <class T>
  PiResult<T> pi(int dim, int m, const T& lambda, int n_max_edges = -1) {
    return evaluate_pi(pi_hist(dim, m), lambda, n_max_edges);
  }

  long long budget() const { return budget_; }
  int threads() const { return threads_; }

 private:
  long long budget_;
  int threads_;
  std::map<std::pair<int, int>, HistMeasure> conn_;
  std::map<std::pair<int, int>, PiHist> pi_;
};

// Both halves of the lace-expansion recursion check, in exact arithmetic:
//  (i) the per-path identity K[0,n] = K[1,n] + sum_m J[0,m] K[m,n];
// (ii) the measure identity C_n = 2d D*C_{n-1} + sum_m Pi_m * C_{n-m}.
struct RecursionReport {
  int dim = 0;
  int n = 0;
  std::string lambda;
  bool path_identity_ok = false;
  bool measure_identity_ok = false;
  long long paths_checked = 0;
  bool paths_sampled = false;
  std::string detail;  // first mismatch, empty when ok

  bool ok() const { return path_identity_ok && measure_identity_ok; }
};

RecursionReport verify_lace_recursion(int dim, const Rational& lambda, int n, SawCache& cache,
                                      long long full_path_cap = 300000,
                                      long long sample_count = 20000);

// J[a,b](omega) two ways: brute-force over connected graphs and the lace
// resummation; exact equality is asserted by the caller.
struct JComparison {
  Rational graph_sum;
  Rational lace_sum;
  long long connected_graphs = 0;
  bool equal = false;
};

JComparison j_by_graphs_vs_laces(const Path& omega, int a, int b, const Rational& lambda);

// Non-interacting-subwalk bound on Pi_m^{(N)} for N in {2,3} with exact
// connectivities, plus the empirical psi_m envelope ratios that the
// induction over m keeps uniformly bounded.
struct DiagramReport {
  int dim = 0, m = 0, n_edges = 0;
  bool bound_holds = false;
  std::string worst_point;
  std::string max_ratio;  // max |Pi^{(N)}(x)| / rhs(x) over support, as a fraction
  // Float diagnostics (reported, not asserted):
  double sup_ratio_behave = 0.0;    // sup_x |Pi_m(x)| / (lambda c_m psi_m(x))
  double sup_ratio_pimbound = 0.0;  // sup_x |Pi_m(x)| / (lambda L1 mu^m psi_m(x))
  std::string note;
};

DiagramReport diagram_bound_check(int dim, int m, int n_edges, const Rational& lambda,
                                  SawCache& cache, double mu = 0.0, double big_l1 = 1.0,
                                  double nu = 1.0);

}  // namespace lacelab
