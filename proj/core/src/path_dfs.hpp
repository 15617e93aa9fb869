#pragma once

// Internal depth-first enumeration over nearest-neighbour paths from the
// origin with the first step pinned to +e1. Callers restore full measures
// through the 2d axis maps (every path class is the image of exactly one
// first-step-+e1 path under exactly one of those maps).

#include <array>
#include <cstdint>
#include <vector>

#include "lacelab/point.hpp"

namespace lacelab::detail {

// Index of the time pair {s,t}, 0 <= s < t, in a triangular layout.
inline int pair_index(int s, int t) { return t * (t - 1) / 2 + s; }

inline int pair_count(int n) { return n * (n + 1) / 2; }

struct PathDfsContext {
  int dim = 1;
  int n = 1;
  std::array<std::int64_t, 2 * kMaxDim> key_deltas{};  // packed-key move offsets
  std::uint64_t origin_key = 0;

  explicit PathDfsContext(int dim_, int n_) : dim(dim_), n(n_) {
    origin_key = pack_point(origin(dim));
    for (int axis = 0; axis < dim; ++axis) {
      const std::int64_t delta = std::int64_t(1) << (kCoordBits * axis);
      key_deltas[static_cast<std::size_t>(2 * axis)] = delta;
      key_deltas[static_cast<std::size_t>(2 * axis + 1)] = -delta;
    }
  }
};

// Visitor contract:
//   void leaf(std::uint64_t endpoint_key, int collisions);                (TrackPairs = false)
//   void leaf(std::uint64_t endpoint_key, int collisions,
//             const std::vector<std::uint64_t>& pair_mask);               (TrackPairs = true)
template <bool TrackPairs, class Visitor>
class PathDfs {
 public:
  PathDfs(const PathDfsContext& ctx, Visitor& vis) : ctx_(ctx), vis_(vis) {
    keys_.resize(static_cast<std::size_t>(ctx.n) + 1);
    if constexpr (TrackPairs)
      mask_.resize((static_cast<std::size_t>(pair_count(ctx.n)) + 63) / 64, 0);
  }

  // Runs over all paths with the given fixed prefix of packed site keys
  // (prefix[0] must be the origin key).
  void run(const std::vector<std::uint64_t>& prefix) {
    collisions_ = 0;
    for (std::size_t t = 0; t < prefix.size(); ++t) place(static_cast<int>(t), prefix[t]);
    descend(static_cast<int>(prefix.size()) - 1);
    for (std::size_t t = prefix.size(); t-- > 0;) unplace(static_cast<int>(t));
  }

 private:
  void place(int t, std::uint64_t key) {
    keys_[static_cast<std::size_t>(t)] = key;
    for (int s = 0; s < t; ++s) {
      if (keys_[static_cast<std::size_t>(s)] == key) {
        ++collisions_;
        if constexpr (TrackPairs) {
          const int idx = pair_index(s, t);
          mask_[static_cast<std::size_t>(idx) >> 6] |= std::uint64_t(1) << (idx & 63);
        }
      }
    }
  }

  void unplace(int t) {
    const std::uint64_t key = keys_[static_cast<std::size_t>(t)];
    for (int s = 0; s < t; ++s) {
      if (keys_[static_cast<std::size_t>(s)] == key) {
        --collisions_;
        if constexpr (TrackPairs) {
          const int idx = pair_index(s, t);
          mask_[static_cast<std::size_t>(idx) >> 6] &= ~(std::uint64_t(1) << (idx & 63));
        }
      }
    }
  }

  void descend(int t) {
    if (t == ctx_.n) {
      if constexpr (TrackPairs)
        vis_.leaf(keys_[static_cast<std::size_t>(t)], collisions_, mask_);
      else
        vis_.leaf(keys_[static_cast<std::size_t>(t)], collisions_);
      return;
    }
    const std::uint64_t key = keys_[static_cast<std::size_t>(t)];
    for (int move = 0; move < 2 * ctx_.dim; ++move) {
      const std::uint64_t next =
          key + static_cast<std::uint64_t>(ctx_.key_deltas[static_cast<std::size_t>(move)]);
      place(t + 1, next);
      descend(t + 1);
      unplace(t + 1);
    }
  }

  const PathDfsContext& ctx_;
  Visitor& vis_;
  std::vector<std::uint64_t> keys_;
  std::vector<std::uint64_t> mask_;
  int collisions_ = 0;
};

// Prefixes of depth min(2, n) starting origin -> +e1, in a fixed order;
// used to partition the DFS across threads with a deterministic merge.
std::vector<std::vector<std::uint64_t>> dfs_prefixes(const PathDfsContext& ctx);

}  // namespace lacelab::detail
