#pragma once

#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "lacelab/measure.hpp"
#include "lacelab/point.hpp"
#include "lacelab/rational.hpp"

namespace lacelab {

inline constexpr long long kDefaultBudget = 1'000'000'000;  // path-steps

struct ModelParams {
  int dim = 1;
  Rational lambda = Rational(0);  // 1 - e^{-beta}, in [0,1]
  int n_max = 10;

  void validate() const;
};

// Nearest-neighbour path omega(0..n) started at the origin.
struct Path {
  std::vector<Point> sites;

  int length() const { return static_cast<int>(sites.size()) - 1; }
  void validate() const;  // starts at 0, consecutive sites are neighbours
};

struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(long long required_steps);
  long long required = 0;
};

// Estimated enumeration work in path-steps for all n-step paths with the
// first step pinned to +e1 (the symmetry-reduced count actually visited).
long long enumeration_work(int dim, int n);

// One-step distribution D: weight 1/(2d) on each signed unit vector.
template <class T>
SignedMeasure<T> step_distribution(int dim) {
  SignedMeasure<T> d(dim, Parity::kOdd);
  const T w = scalar_traits<T>::from_ratio(1, 2L * dim);
  for (int axis = 0; axis < dim; ++axis)
    for (int sign : {+1, -1}) d.add(unit_vector(dim, axis, sign), w);
  return d;
}

// K[a,b](omega) = prod_{a<=s<t<=b} (1 - lambda U_st); equals 1 when a = b.
template <class T>
T interaction_weight(const Path& omega, int a, int b, const T& lambda) {
  if (!(0 <= a && a <= b && b <= omega.length()))
    throw std::invalid_argument("interaction_weight: bad subinterval");
  int collisions = 0;
  for (int s = a; s < b; ++s)
    for (int t = s + 1; t <= b; ++t)
      if (omega.sites[static_cast<std::size_t>(s)] == omega.sites[static_cast<std::size_t>(t)])
        ++collisions;
  T w = scalar_traits<T>::one();
  const T one_minus = scalar_traits<T>::one() - lambda;
  for (int i = 0; i < collisions; ++i) w *= one_minus;
  return w;
}

// Histogram over the number of self-intersection pairs: count[k] = number
// of paths (to a fixed endpoint) with exactly k pairs {s,t}, omega(s) =
// omega(t). The enumeration is lambda-independent; connectivities for any
// lambda follow by evaluating sum_k count[k] (1-lambda)^k.
struct WeightHistogram {
  std::vector<long long> count;

  void bump(int k) {
    if (static_cast<std::size_t>(k) >= count.size()) count.resize(static_cast<std::size_t>(k) + 1, 0);
    ++count[static_cast<std::size_t>(k)];
  }
  void merge(const WeightHistogram& o) {
    if (o.count.size() > count.size()) count.resize(o.count.size(), 0);
    for (std::size_t i = 0; i < o.count.size(); ++i) count[i] += o.count[i];
  }
};

using HistMeasure = std::unordered_map<std::uint64_t, WeightHistogram>;

// Powers (1-lambda)^k for k = 0..max_k, with 0^0 = 1.
template <class T>
std::vector<T> one_minus_lambda_powers(const T& lambda, int max_k) {
  std::vector<T> pw(static_cast<std::size_t>(max_k) + 1);
  pw[0] = scalar_traits<T>::one();
  const T base = scalar_traits<T>::one() - lambda;
  for (int k = 1; k <= max_k; ++k) pw[static_cast<std::size_t>(k)] = pw[static_cast<std::size_t>(k - 1)] * base;
  return pw;
}

template <class T>
SignedMeasure<T> evaluate_histogram(const HistMeasure& hist, int dim, const T& lambda,
                                    Parity parity) {
  int max_k = 0;
  for (const auto& [key, h] : hist) max_k = std::max<int>(max_k, static_cast<int>(h.count.size()) - 1);
  const auto pw = one_minus_lambda_powers(lambda, max_k);
  SignedMeasure<T> m(dim, parity);
  for (const auto& [key, h] : hist) {
    T v = scalar_traits<T>::zero();
    for (std::size_t k = 0; k < h.count.size(); ++k) {
      if (h.count[k] == 0) continue;
      v += T(h.count[k]) * pw[k];
    }
    m.add_packed(key, v);
  }
  return m;
}

// Exact enumeration of C_n as a collision histogram over endpoints.
// Paths are enumerated with first step +e1 and the measure restored by
// the 2d axis maps; `threads` partitions the DFS by path prefix with a
// deterministic merge.
HistMeasure enumerate_connectivity_hist(int dim, int n, long long budget = kDefaultBudget,
                                        int threads = 1);

// C_n(x) = sum over n-step paths 0 -> x of K[0,n](omega).
template <class T>
SignedMeasure<T> enumerate_connectivity(const ModelParams& params, int n,
                                        long long budget = kDefaultBudget, int threads = 1) {
  params.validate();
  if (n > params.n_max) throw std::invalid_argument("enumerate_connectivity: n exceeds n_max");
  HistMeasure hist = enumerate_connectivity_hist(params.dim, n, budget, threads);
  return evaluate_histogram(hist, params.dim, scalar_traits<T>::from_rational(params.lambda),
                            parity_of_integer(n));
}

}  // namespace lacelab
