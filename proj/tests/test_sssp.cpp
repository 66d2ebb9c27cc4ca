#include <array>
#include <random>

#include "doctest.h"
#include "hubs/dyntree.hpp"
#include "hubs/sssp.hpp"
#include "oracles.hpp"

using namespace hubs;

namespace {

void check_levels(const EsTree& t, const GraphView& g) {
  auto ref = oracle::bfs_capped(g, t.source(), t.depth_bound());
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    REQUIRE(t.distance(v) == ref[v]);
    if (v != t.source() && t.reached(v)) {
      const VertexId p = t.parent(v);
      REQUIRE(p != kNoVertex);
      REQUIRE(g.arc_weight(p, v) == 1.0);
      REQUIRE(t.level(p) + 1 == t.level(v));
    }
  }
}

// Sandwich, monotone tree, and tree-path length for one structure.
void check_hsssp(const Hsssp& s, const GraphView& g) {
  auto exact = oracle::dijkstra(g, s.source());
  auto hop = oracle::hop_bounded(g, s.source(), s.hops());
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    const double e = s.estimate(v);
    REQUIRE(leq_slack(exact[v], e));
    if (hop[v] != kInf) REQUIRE(leq_slack(e, (1 + s.eps()) * hop[v]));
    if (e == kInf) {
      REQUIRE_FALSE(s.tree_parent(v).has_value());
      continue;
    }
    double len = 0;
    VertexId x = v;
    int steps = 0;
    while (auto p = s.tree_parent(x)) {
      REQUIRE(s.estimate(p->first) < s.estimate(x));
      REQUIRE(p->second != kInf);
      len += p->second;
      x = p->first;
      REQUIRE(++steps < static_cast<int>(g.num_vertices()));
    }
    REQUIRE(x == s.source());
    REQUIRE(leq_slack(len, e));
  }
}

}  // namespace

TEST_CASE("ES tree examples") {
  DynamicDigraph g(3, Mode::kIncremental);
  g.apply_update(UpdateOp::insert(0, 1));
  g.apply_update(UpdateOp::insert(1, 2));
  EsTree t(g, 0, 1);
  CHECK(t.level(0) == 0);
  CHECK(t.level(1) == 1);
  CHECK_FALSE(t.reached(2));

  DynamicDigraph star(6, Mode::kDecremental);
  for (VertexId v = 1; v < 6; ++v) star.add_initial_edge(0, v, 1);
  EsTree s(star, 0, 3);
  for (VertexId v = 1; v < 6; ++v) CHECK(s.level(v) == 1);

  DynamicDigraph p(4, Mode::kIncremental);
  for (VertexId v = 0; v < 3; ++v) p.apply_update(UpdateOp::insert(v, v + 1));
  EsTree tp(p, 0, 3);
  CHECK(tp.level(3) == 3);
  p.apply_update(UpdateOp::insert(0, 3));
  tp.apply(p.last_change());
  CHECK(tp.level(3) == 1);

  DynamicDigraph w(2, Mode::kIncremental, 5);
  w.apply_update(UpdateOp::insert(0, 1, 2));
  CHECK_THROWS_AS(EsTree(w, 0, 2), Error);
}

TEST_CASE("ES tree matches BFS under random streams") {
  std::mt19937_64 rng(21);
  for (int round = 0; round < 30; ++round) {
    const std::size_t n = 10 + rng() % 40;
    const int d = 1 + static_cast<int>(rng() % 6);
    const bool dec = round % 2 == 0;
    if (dec) {
      auto g = oracle::random_graph(n, 3 * n, rng, Mode::kDecremental);
      ReverseView rg(g);
      EsTree a(g, 0, d), b(rg, 1, d);
      EtForest fa(n);
      for (VertexId v = 0; v < n; ++v) {
        if (a.parent(v) != kNoVertex) fa.link(v, a.parent(v));
      }
      auto edges = g.edges();
      std::shuffle(edges.begin(), edges.end(), rng);
      for (const auto& e : edges) {
        g.apply_update(UpdateOp::remove(e.u, e.v));
        const auto& log = a.apply(g.last_change());
        replay_tree_changes(
            log, [&](VertexId v) { fa.cut(v); },
            [&](VertexId v, VertexId p) { fa.link(v, p); });
        b.apply(g.last_change().reversed());
        check_levels(a, g);
        check_levels(b, rg);
        for (VertexId v = 0; v < n; ++v) {
          REQUIRE(fa.parent(v).value_or(kNoVertex) == a.parent(v));
        }
      }
      for (VertexId v = 1; v < n; ++v) CHECK_FALSE(a.reached(v));
    } else {
      DynamicDigraph g(n, Mode::kIncremental);
      EsTree a(g, 0, d);
      ReverseView rg(g);
      EsTree b(rg, 2, d);
      for (std::size_t i = 0; i < 3 * n; ++i) {
        VertexId u = rng() % n, v = rng() % n;
        if (u == v || g.has_edge(u, v)) continue;
        g.apply_update(UpdateOp::insert(u, v));
        a.apply(g.last_change());
        b.apply(g.last_change().reversed());
        check_levels(a, g);
        check_levels(b, rg);
      }
    }
  }
}

TEST_CASE("h-SSSP examples") {
  DynamicDigraph g(2, Mode::kIncremental, 64);
  g.apply_update(UpdateOp::insert(0, 1, 7));
  Hsssp s(g, 0, 1, 0.1, 64);
  CHECK(s.estimate(1) >= 7);
  CHECK(s.estimate(1) <= 7 * 1.1);
  CHECK(s.estimate(0) == 0);

  // Two-hop route 1 + W against a direct W + 0.5: h = 1 sees only the latter.
  const double W = 8;
  DynamicDigraph t(3, Mode::kIncremental, 16);
  t.apply_update(UpdateOp::insert(0, 1, 1));
  t.apply_update(UpdateOp::insert(1, 2, W));
  t.apply_update(UpdateOp::insert(0, 2, W + 0.5));
  Hsssp one(t, 0, 1, 0.1, 64);
  CHECK(one.estimate(2) >= W + 0.5);
  CHECK(one.estimate(2) <= (W + 0.5) * 1.1);
  Hsssp two(t, 0, 2, 0.01, 64);
  CHECK(two.estimate(2) <= (1 + W) * 1.01);

  DynamicDigraph u(2, Mode::kIncremental, 64);
  u.apply_update(UpdateOp::insert(0, 1, 40));
  Hsssp su(u, 0, 1, 0.1, 64);
  u.apply_update(UpdateOp::insert(0, 1, 3));
  su.apply(u.last_change());
  CHECK(su.estimate(1) >= 3);
  CHECK(su.estimate(1) <= 3.3);
  CHECK(su.changes().size() == 1);
}

TEST_CASE("h-SSSP sandwich under random streams") {
  std::mt19937_64 rng(33);
  for (int round = 0; round < 24; ++round) {
    const std::size_t n = 8 + rng() % 30;
    const int W = 1 + static_cast<int>(rng() % 64);
    const int h = std::array{2, 5, 9}[round % 3];
    const double eps = round % 2 ? 0.1 : 0.5;
    const double max_dist = static_cast<double>(n) * W;
    const bool dec = (round / 3) % 2 == 0;
    auto g = dec ? oracle::random_graph(n, 3 * n, rng, Mode::kDecremental, W)
                 : DynamicDigraph(n, Mode::kIncremental, W);
    Hsssp s(g, 0, h, eps, max_dist);
    ReverseView rg(g);
    Hsssp r(rg, 1, h, eps, max_dist);
    check_hsssp(s, g);
    std::vector<double> last(s.estimates().begin(), s.estimates().end());
    for (std::size_t i = 0; i < 4 * n; ++i) {
      bool changed = false;
      if (dec) {
        auto edges = g.edges();
        if (edges.empty()) break;
        const auto e = edges[rng() % edges.size()];
        if (e.w < W && rng() % 2) {
          changed = g.apply_update(
              UpdateOp::set_weight(e.u, e.v, e.w + 1 + rng() % static_cast<std::uint64_t>(W - e.w)));
        } else {
          changed = g.apply_update(UpdateOp::remove(e.u, e.v));
        }
      } else {
        VertexId u = rng() % n, v = rng() % n;
        if (u == v) continue;
        const double cur = g.weight(u, v);
        const double w = 1 + rng() % W;
        if (w >= cur) continue;
        changed = g.apply_update(UpdateOp::insert(u, v, w));
      }
      if (!changed) continue;
      s.apply(g.last_change());
      r.apply(g.last_change().reversed());
      check_hsssp(s, g);
      check_hsssp(r, rg);
      for (const auto& c : s.changes()) {
        REQUIRE(c.old_value == last[c.v]);
        if (dec) {
          REQUIRE(c.new_value > c.old_value);
        } else {
          REQUIRE(c.new_value < c.old_value);
        }
        last[c.v] = c.new_value;
      }
      for (VertexId v = 0; v < n; ++v) REQUIRE(last[v] == s.estimate(v));
    }
  }
}

TEST_CASE("h-SSSP over a star-augmented view") {
  std::mt19937_64 rng(44);
  for (int round = 0; round < 10; ++round) {
    const std::size_t n = 12 + rng() % 12;
    DynamicDigraph g(n, Mode::kIncremental, 10);
    StarGraph star(n, 0);
    StarUnionView view(g, star);
    Hsssp s(view, 0, 3, 0.2, 20.0 * n);
    for (int i = 0; i < 60; ++i) {
      if (rng() % 3 == 0) {
        const VertexId v = rng() % n;
        if (auto c = star.lower(v, 1 + rng() % (10 * n))) s.apply(*c);
      } else {
        VertexId u = rng() % n, v = rng() % n;
        if (u == v || g.has_edge(u, v)) continue;
        g.apply_update(UpdateOp::insert(u, v, 1 + rng() % 10));
        s.apply(g.last_change());
      }
      check_hsssp(s, view);
    }
  }
}
