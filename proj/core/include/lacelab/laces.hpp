#pragma once

#include <string>
#include <vector>

#include "lacelab/point.hpp"

namespace lacelab {

// Time-pair edge {s,t}, s < t, on an integer interval [a,b].
struct Edge {
  int s = 0;
  int t = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend bool operator<(const Edge& x, const Edge& y) {
    return x.s != y.s ? x.s < y.s : x.t < y.t;
  }
};

struct Graph {
  int a = 0;
  int b = 0;
  std::vector<Edge> edges;  // sorted, unique

  void normalize();  // sort + dedupe, validate edges lie in [a,b] with s < t
};

// Minimally connected graph. Edges are kept in the chain order
// s1t1, s2t2, ... produced by the lace map (s1 = a, t_N = b).
struct Lace {
  int a = 0;
  int b = 0;
  std::vector<Edge> edges;

  Graph as_graph() const;
  friend bool operator==(const Lace&, const Lace&) = default;
};

std::string to_string(const Edge&);
std::string to_string(const Lace&);

// A graph on [a,b] is connected if a and b are endpoints of edges and the
// open intervals (s,t) cover every point strictly between a and b.
bool is_connected(const Graph& g);

// Connected and removal of any single edge disconnects. Used as the
// ground-truth filter in tests; enumerate_laces generates chains directly.
bool is_minimally_connected(const Graph& g);

// The lace map L_Gamma: t1 = max{t : at in Gamma}, s1 = a,
// t_{i+1} = max{t : exists s < t_i with st in Gamma},
// s_{i+1} = min{s : s t_{i+1} in Gamma}, stopping once t_i = b.
// Throws std::invalid_argument on disconnected input.
Lace lace_of_graph(const Graph& g);

// All laces on [a,b] with exactly N edges, deterministic order.
std::vector<Lace> enumerate_laces(int a, int b, int N);

// Edges st not in L with L_{L + st} = L, computed by the definitional test.
std::vector<Edge> compatible_edges(const Lace& lace);

std::vector<Edge> all_edges(int a, int b);

}  // namespace lacelab
