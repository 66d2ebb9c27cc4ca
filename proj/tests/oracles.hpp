#pragma once
// Brute-force reference implementations used only by tests. They share no
// code with the library beyond the plain graph containers.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <queue>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "hubs/graph.hpp"

namespace oracle {

using hubs::kInf;
using hubs::VertexId;

using Matrix = std::vector<std::vector<double>>;

// Edge list of any view, snapshotting min weights.
inline std::vector<hubs::Edge> edges_of(const hubs::GraphView& g) {
  std::vector<hubs::Edge> out;
  for (VertexId u = 0; u < g.num_vertices(); ++u) {
    g.out_arcs(u).for_each([&](const hubs::Arc& a) {
      out.push_back({u, a.to, a.w});
    });
  }
  return out;
}

inline std::vector<double> dijkstra(std::size_t n,
                                    const std::vector<hubs::Edge>& edges,
                                    VertexId s) {
  std::vector<std::vector<std::pair<VertexId, double>>> adj(n);
  for (const auto& e : edges) adj[e.u].push_back({e.v, e.w});
  std::vector<double> dist(n, kInf);
  using Item = std::pair<double, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[s] = 0;
  pq.push({0, s});
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[u]) continue;
    for (auto [v, w] : adj[u]) {
      if (d + w < dist[v]) {
        dist[v] = d + w;
        pq.push({dist[v], v});
      }
    }
  }
  return dist;
}

inline std::vector<double> dijkstra(const hubs::GraphView& g, VertexId s) {
  return dijkstra(g.num_vertices(), edges_of(g), s);
}

inline Matrix apsp(const hubs::GraphView& g) {
  auto edges = edges_of(g);
  Matrix m;
  for (VertexId s = 0; s < g.num_vertices(); ++s) {
    m.push_back(dijkstra(g.num_vertices(), edges, s));
  }
  return m;
}

// BFS levels capped at depth d (kInf beyond).
inline std::vector<double> bfs_capped(const hubs::GraphView& g, VertexId s,
                                      int d) {
  std::vector<double> level(g.num_vertices(), kInf);
  std::deque<VertexId> q{s};
  level[s] = 0;
  while (!q.empty()) {
    VertexId u = q.front();
    q.pop_front();
    if (level[u] >= d) continue;
    g.out_arcs(u).for_each([&](const hubs::Arc& a) {
      if (level[a.to] == kInf) {
        level[a.to] = level[u] + 1;
        q.push_back(a.to);
      }
    });
  }
  return level;
}

// delta^h(s, .): shortest paths using at most h edges.
inline std::vector<double> hop_bounded(const hubs::GraphView& g, VertexId s,
                                       int h) {
  auto edges = edges_of(g);
  std::vector<double> cur(g.num_vertices(), kInf);
  cur[s] = 0;
  for (int i = 0; i < h; ++i) {
    auto next = cur;
    for (const auto& e : edges) {
      if (cur[e.u] + e.w < next[e.v]) next[e.v] = cur[e.u] + e.w;
    }
    if (next == cur) break;
    cur = std::move(next);
  }
  return cur;
}

// Naive rooted forest with explicit parent array.
struct NaiveForest {
  std::vector<int> parent;
  explicit NaiveForest(std::size_t n) : parent(n, -1) {}

  int root(int v) const {
    while (parent[v] >= 0) v = parent[v];
    return v;
  }
  int val(int v) const {
    int d = 0;
    while (parent[v] >= 0) {
      v = parent[v];
      ++d;
    }
    return d;
  }
  int depth(int v) const {
    const int r = root(v);
    int best = 0;
    for (int x = 0; x < static_cast<int>(parent.size()); ++x) {
      if (root(x) == r) best = std::max(best, val(x));
    }
    return best;
  }
};

inline hubs::DynamicDigraph random_graph(std::size_t n, std::size_t m,
                                         std::mt19937_64& rng,
                                         hubs::Mode mode, int max_w = 1) {
  hubs::DynamicDigraph g(n, mode, max_w);
  std::uniform_int_distribution<VertexId> pick(0, n - 1);
  std::uniform_int_distribution<int> wd(1, max_w);
  std::size_t tries = 0;
  while (g.num_edges() < m && tries++ < 50 * m + 100) {
    VertexId u = pick(rng), v = pick(rng);
    if (u == v || g.has_edge(u, v)) continue;
    g.add_initial_edge(u, v, wd(rng));
  }
  return g;
}

// Every edge of g in random order, as deletions.
inline std::vector<hubs::UpdateOp> teardown(const hubs::DynamicDigraph& g,
                                            std::mt19937_64& rng) {
  std::vector<hubs::UpdateOp> ops;
  for (const auto& e : g.edges()) ops.push_back(hubs::UpdateOp::remove(e.u, e.v));
  std::shuffle(ops.begin(), ops.end(), rng);
  return ops;
}

}  // namespace oracle
