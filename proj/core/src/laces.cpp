#include "lacelab/laces.hpp"

#include <algorithm>
#include <stdexcept>

namespace lacelab {

void Graph::normalize() {
  for (const Edge& e : edges) {
    if (!(a <= e.s && e.s < e.t && e.t <= b))
      throw std::invalid_argument("Graph: edge outside interval or s >= t");
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

Graph Lace::as_graph() const {
  Graph g{a, b, edges};
  g.normalize();
  return g;
}

std::string to_string(const Edge& e) {
  return "{" + std::to_string(e.s) + "," + std::to_string(e.t) + "}";
}

std::string to_string(const Lace& l) {
  std::string s = "[" + std::to_string(l.a) + "," + std::to_string(l.b) + "]:";
  for (const Edge& e : l.edges) s += to_string(e);
  return s;
}

bool is_connected(const Graph& g) {
  if (g.b <= g.a) return false;
  bool a_end = false, b_end = false;
  for (const Edge& e : g.edges) {
    a_end = a_end || e.s == g.a || e.t == g.a;
    b_end = b_end || e.s == g.b || e.t == g.b;
  }
  if (!a_end || !b_end) return false;
  // Cover check at integer points strictly inside and at half-integer
  // midpoints; the covering condition is piecewise constant between them.
  for (int c = g.a + 1; c < g.b; ++c) {
    bool covered = false;
    for (const Edge& e : g.edges) covered = covered || (e.s < c && c < e.t);
    if (!covered) return false;
  }
  for (int c = g.a; c < g.b; ++c) {
    // midpoint c + 1/2
    bool covered = false;
    for (const Edge& e : g.edges) covered = covered || (e.s <= c && c + 1 <= e.t);
    if (!covered) return false;
  }
  return true;
}

bool is_minimally_connected(const Graph& g) {
  if (!is_connected(g)) return false;
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    Graph h{g.a, g.b, {}};
    for (std::size_t j = 0; j < g.edges.size(); ++j)
      if (j != i) h.edges.push_back(g.edges[j]);
    if (is_connected(h)) return false;
  }
  return true;
}

Lace lace_of_graph(const Graph& g) {
  if (!is_connected(g)) throw std::invalid_argument("lace_of_graph: graph is not connected");
  Lace lace{g.a, g.b, {}};
  int t1 = g.a;
  for (const Edge& e : g.edges)
    if (e.s == g.a) t1 = std::max(t1, e.t);
  lace.edges.push_back(Edge{g.a, t1});
  while (lace.edges.back().t < g.b) {
    const int ti = lace.edges.back().t;
    int t_next = -1;
    for (const Edge& e : g.edges)
      if (e.s < ti) t_next = std::max(t_next, e.t);
    int s_next = ti;  // min over edges ending at t_next
    bool found = false;
    for (const Edge& e : g.edges) {
      if (e.t == t_next && (!found || e.s < s_next)) {
        s_next = e.s;
        found = true;
      }
    }
    lace.edges.push_back(Edge{s_next, t_next});
  }
  return lace;
}

namespace {

// Laces with N >= 2 edges are exactly the chains
//   a = s1 < s2 < t1 <= s3 < t2 <= s4 < ... <= s_N < t_{N-1} < t_N = b:
// consecutive edges overlap (s_{i+1} < t_i) and non-consecutive ones do
// not (t_i <= s_{i+2}), which makes every edge non-removable.
void extend_chain(int b, int N, std::vector<Edge>& chain, std::vector<Lace>& out, int a) {
  const int i = static_cast<int>(chain.size());
  if (i == N) {
    if (chain.back().t == b) out.push_back(Lace{a, b, chain});
    return;
  }
  const Edge prev = chain.back();  // by value: push_back below may reallocate
  const int s_low = (i == 1) ? chain[0].s + 1 : chain[static_cast<std::size_t>(i) - 2].t;
  for (int s = std::max(s_low, prev.s + 1); s < prev.t; ++s) {
    const int t_high = (i == N - 1) ? b : b - 1;
    for (int t = prev.t + 1; t <= t_high; ++t) {
      if (i == N - 1 && t != b) continue;
      chain.push_back(Edge{s, t});
      extend_chain(b, N, chain, out, a);
      chain.pop_back();
    }
  }
}

}  // namespace

std::vector<Lace> enumerate_laces(int a, int b, int N) {
  if (b <= a || N < 1) return {};
  std::vector<Lace> out;
  if (N == 1) {
    out.push_back(Lace{a, b, {Edge{a, b}}});
    return out;
  }
  // First edge (a, t1) with t1 < b; the remaining chain must reach b.
  for (int t1 = a + 1; t1 < b; ++t1) {
    std::vector<Edge> chain{Edge{a, t1}};
    extend_chain(b, N, chain, out, a);
  }
  return out;
}

std::vector<Edge> all_edges(int a, int b) {
  std::vector<Edge> edges;
  for (int s = a; s < b; ++s)
    for (int t = s + 1; t <= b; ++t) edges.push_back(Edge{s, t});
  return edges;
}

std::vector<Edge> compatible_edges(const Lace& lace) {
  Graph base = lace.as_graph();
  std::vector<Edge> out;
  for (const Edge& e : all_edges(lace.a, lace.b)) {
    if (std::binary_search(base.edges.begin(), base.edges.end(), e)) continue;
    Graph g = base;
    g.edges.push_back(e);
    g.normalize();
    Lace mapped = lace_of_graph(g);
    if (mapped.edges == lace.edges) out.push_back(e);
  }
  return out;
}

}  // namespace lacelab
