#include "lacelab/walks.hpp"

#include <cmath>
#include <future>
#include <limits>

#include "path_dfs.hpp"

namespace lacelab {

void ModelParams::validate() const {
  if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("ModelParams: dim out of range");
  if (lambda < Rational(0) || lambda > Rational(1))
    throw std::invalid_argument("ModelParams: lambda must lie in [0,1]");
  if (n_max < 0) throw std::invalid_argument("ModelParams: n_max must be nonnegative");
}

void Path::validate() const {
  if (sites.empty()) throw std::invalid_argument("Path: empty");
  if (sites.front().l1_norm() != 0) throw std::invalid_argument("Path: must start at the origin");
  for (std::size_t t = 1; t < sites.size(); ++t) {
    if (sites[t].dim != sites[0].dim) throw std::invalid_argument("Path: mixed dimensions");
    long step = 0;
    for (int i = 0; i < sites[t].dim; ++i)
      step += std::abs(static_cast<long>(sites[t][i]) - sites[t - 1][i]);
    if (step != 1) throw std::invalid_argument("Path: steps must be nearest-neighbour");
  }
}

BudgetExceeded::BudgetExceeded(long long required_steps)
    : std::runtime_error("enumeration budget exceeded; required about " +
                         std::to_string(required_steps) +
                         " path-steps (raise --budget / LACELAB_BUDGET, or use the lambda=0 "
                         "convolution shortcut C_n = (2d)^n D^{*n})"),
      required(required_steps) {}

long long enumeration_work(int dim, int n) {
  if (n <= 0) return 1;
  long double paths = 1.0L;
  for (int i = 0; i < n - 1; ++i) paths *= 2.0L * dim;  // first step pinned
  long double steps = paths * n;
  if (steps > 4.0e18L) return std::numeric_limits<long long>::max();
  return static_cast<long long>(steps);
}

namespace detail {

std::vector<std::vector<std::uint64_t>> dfs_prefixes(const PathDfsContext& ctx) {
  std::vector<std::vector<std::uint64_t>> prefixes;
  const std::uint64_t step1 = ctx.origin_key + static_cast<std::uint64_t>(ctx.key_deltas[0]);
  if (ctx.n == 1) {
    prefixes.push_back({ctx.origin_key, step1});
    return prefixes;
  }
  for (int move = 0; move < 2 * ctx.dim; ++move) {
    const std::uint64_t step2 =
        step1 + static_cast<std::uint64_t>(ctx.key_deltas[static_cast<std::size_t>(move)]);
    prefixes.push_back({ctx.origin_key, step1, step2});
  }
  return prefixes;
}

namespace {

struct HistVisitor {
  HistMeasure hist;
  void leaf(std::uint64_t key, int collisions) { hist[key].bump(collisions); }
};

void merge_hist(HistMeasure& into, HistMeasure&& from) {
  for (auto& [key, h] : from) into[key].merge(h);
}

}  // namespace
}  // namespace detail

HistMeasure enumerate_connectivity_hist(int dim, int n, long long budget, int threads) {
  if (dim < 1 || dim > kMaxDim)
    throw std::invalid_argument("enumerate_connectivity_hist: dim out of range");
  if (n < 0) throw std::invalid_argument("enumerate_connectivity_hist: negative n");

  if (n == 0) {
    HistMeasure hist;
    hist[pack_point(origin(dim))].bump(0);
    return hist;
  }
  const long long work = enumeration_work(dim, n);
  if (work > budget) throw BudgetExceeded(work);

  detail::PathDfsContext ctx(dim, n);
  const auto prefixes = detail::dfs_prefixes(ctx);

  // Reduced measure over endpoints of first-step-+e1 paths.
  HistMeasure reduced;
  if (threads <= 1) {
    detail::HistVisitor vis;
    detail::PathDfs<false, detail::HistVisitor> dfs(ctx, vis);
    for (const auto& prefix : prefixes) dfs.run(prefix);
    reduced = std::move(vis.hist);
  } else {
    std::vector<std::future<HistMeasure>> futures;
    futures.reserve(prefixes.size());
    for (const auto& prefix : prefixes) {
      futures.push_back(std::async(std::launch::async, [&ctx, prefix]() {
        detail::HistVisitor vis;
        detail::PathDfs<false, detail::HistVisitor> dfs(ctx, vis);
        dfs.run(prefix);
        return std::move(vis.hist);
      }));
    }
    for (auto& f : futures) detail::merge_hist(reduced, f.get());
  }

  // Restore the full measure: C_n = sum over the 2d maps g with g(e1) = u.
  HistMeasure full;
  for (const AxisMap& map : first_step_maps(dim)) {
    for (const auto& [key, h] : reduced)
      full[pack_point(map.apply(unpack_point(key, dim)))].merge(h);
  }
  return full;
}

}  // namespace lacelab
