#include <cmath>
#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

#include "doctest.h"
#include "hubs/hubs.hpp"
#include "hubs/sssp.hpp"
#include "oracles.hpp"

using namespace hubs;

namespace {

// Tries every set of split points.
bool covered_exhaustive(const std::vector<VertexId>& path, const VertexSet& b,
                        int d) {
  const std::size_t hops = path.size() - 1;
  if (hops == 0) return true;
  for (std::uint32_t mask = 0; mask < (1u << (hops - 1)); ++mask) {
    std::size_t start = 0;
    bool ok = true;
    for (std::size_t i = 1; i <= hops && ok; ++i) {
      const bool cut = i < hops && (mask >> (i - 1)) & 1u;
      if (cut || i == hops) {
        if (i - start > static_cast<std::size_t>(d)) ok = false;
        if (cut && !b.contains(path[i])) ok = false;
        start = i;
      }
    }
    if (ok) return true;
  }
  return false;
}

// Enumerates every shortest path of an unweighted graph and checks that each
// reachable pair has a covered one.
bool hub_exhaustive(const DynamicDigraph& g, const VertexSet& h, int d) {
  const std::size_t n = g.num_vertices();
  for (VertexId s = 0; s < n; ++s) {
    auto dist = oracle::bfs_capped(g, s, static_cast<int>(n));
    for (VertexId t = 0; t < n; ++t) {
      if (dist[t] == kInf || t == s) continue;
      bool found = false;
      std::vector<VertexId> path{s};
      std::function<void(VertexId)> walk = [&](VertexId u) {
        if (found) return;
        if (u == t) {
          found = covered_exhaustive(path, h, d);
          return;
        }
        for (const Arc& a : g.out_arcs(u).first) {
          if (dist[a.to] != dist[u] + 1) continue;
          auto back = oracle::bfs_capped(g, a.to, static_cast<int>(n));
          if (back[t] != dist[t] - dist[a.to]) continue;
          path.push_back(a.to);
          walk(a.to);
          path.pop_back();
        }
      };
      walk(s);
      if (!found) return false;
    }
  }
  return true;
}

std::vector<RootedTree> exact_trees(const DynamicDigraph& g,
                                    std::span<const VertexId> sources, int d) {
  ReverseView rg(g);
  std::vector<RootedTree> trees;
  for (VertexId s : sources) {
    trees.push_back(tree_of(EsTree(g, s, d)));
    trees.push_back(tree_of(EsTree(rg, s, d)));
  }
  return trees;
}

std::vector<VertexId> all_vertices(std::size_t n) {
  std::vector<VertexId> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

VertexSet random_set(std::size_t n, int one_in, std::mt19937_64& rng) {
  VertexSet b(n);
  for (VertexId v = 0; v < n; ++v) {
    if (rng() % one_in == 0) b.insert(v);
  }
  return b;
}

}  // namespace

TEST_CASE("is_covered basics and exhaustive agreement") {
  const VertexSet none(20);
  std::vector<VertexId> p4{0, 1, 2, 3, 4};
  CHECK(is_covered(p4, none, 4));
  CHECK_FALSE(is_covered(p4, none, 3));

  std::mt19937_64 rng(1);
  for (int round = 0; round < 2000; ++round) {
    const std::size_t hops = rng() % 15;
    std::vector<VertexId> path(hops + 1);
    for (auto& v : path) v = rng() % 20;
    const int d = 1 + static_cast<int>(rng() % 5);
    const VertexSet b = random_set(20, 3, rng);
    REQUIRE(is_covered(path, b, d) == covered_exhaustive(path, b, d));
  }
}

TEST_CASE("concatenation and block splitting") {
  std::mt19937_64 rng(2);
  for (int round = 0; round < 2000; ++round) {
    const VertexSet b = random_set(30, 3, rng);
    auto rand_path = [&](std::size_t hops, VertexId first) {
      std::vector<VertexId> p{first};
      for (std::size_t i = 0; i < hops; ++i) p.push_back(rng() % 30);
      return p;
    };
    const int dp = 1 + static_cast<int>(rng() % 4);
    const int dq = 1 + static_cast<int>(rng() % 4);
    if (b.empty()) continue;
    const VertexId hub = b.members()[rng() % b.size()];
    auto p = rand_path(rng() % 12, rng() % 30);
    p.back() = hub;
    auto q = rand_path(rng() % 12, hub);
    if (!is_covered(p, b, dp) || !is_covered(q, b, dq)) continue;
    std::vector<VertexId> pq = p;
    pq.insert(pq.end(), q.begin() + 1, q.end());
    CHECK(is_covered(pq, b, std::max(dp, dq)));

    const int d = std::max(dp, dq);
    if (pq.size() - 1 >= static_cast<std::size_t>(d)) {
      auto blocks = split_blocks(pq, b, d);
      REQUIRE(blocks.has_value());
      for (std::size_t i = 0; i < blocks->size(); ++i) {
        const std::size_t s = (*blocks)[i];
        const std::size_t e =
            i + 1 < blocks->size() ? (*blocks)[i + 1] : pq.size() - 1;
        CHECK(e - s >= static_cast<std::size_t>(d));
        CHECK(e - s <= static_cast<std::size_t>(3 * d));
        if (i > 0) CHECK(b.contains(pq[s]));
      }
    }
  }
}

TEST_CASE("hub_oracle_exact") {
  const int d = 3;
  DynamicDigraph path(2 * d + 1, Mode::kIncremental);
  for (VertexId v = 0; v < 2 * d; ++v) path.apply_update(UpdateOp::insert(v, v + 1));
  CHECK(hub_oracle_exact(path, VertexSet::all(2 * d + 1), 1));
  CHECK_FALSE(hub_oracle_exact(path, VertexSet(2 * d + 1), d));
  CHECK(hub_oracle_exact(path, VertexSet(2 * d + 1, std::vector<VertexId>{d}), d));

  std::mt19937_64 rng(3);
  for (int round = 0; round < 40; ++round) {
    const std::size_t n = 6 + rng() % 7;
    auto g = oracle::random_graph(n, 2 * n, rng, Mode::kIncremental);
    const int dd = 1 + static_cast<int>(rng() % 3);
    const VertexSet h = random_set(n, 3, rng);
    REQUIRE(hub_oracle_exact(g, h, dd) == hub_exhaustive(g, h, dd));
  }
}

TEST_CASE("hub_oracle_approx on a crafted instance") {
  // Unit chain 0..5, hub 2, d = 2. Pairs ending at 5 from 0..2 need the
  // shortcut 2->5 (3.2); the worst is (2,5) at 3.2/3.
  DynamicDigraph g(6, Mode::kIncremental, 10);
  for (VertexId v = 0; v < 5; ++v) g.apply_update(UpdateOp::insert(v, v + 1, 1));
  g.apply_update(UpdateOp::insert(2, 5, 3.2));
  VertexSet h(6, std::vector<VertexId>{2});
  CHECK(hub_oracle_approx(g, h, 2, 3.2 / 3.0));
  CHECK_FALSE(hub_oracle_approx(g, h, 2, 3.19 / 3.0));
  CHECK(hub_oracle_approx(g, VertexSet(6), 5, 1.0));
  // No hubs, d = 4: (0,5) falls back to 0-1-2-5, length 5.2.
  CHECK(hub_oracle_approx(g, VertexSet(6), 4, 5.2 / 5.0));
  CHECK_FALSE(hub_oracle_approx(g, VertexSet(6), 4, 5.1 / 5.0));
}

TEST_CASE("extend_on_insert keeps hub sets valid") {
  std::mt19937_64 rng(4);
  const std::size_t n = 20;
  const int d = 3;
  DynamicDigraph g(n, Mode::kIncremental);
  HubSet h{VertexSet(n), d, 1.0};
  for (int i = 0; i < 100; ++i) {
    VertexId u = rng() % n, v = rng() % n;
    if (u == v || g.has_edge(u, v)) continue;
    g.apply_update(UpdateOp::insert(u, v));
    h = extend_on_insert(h, u, v);
    REQUIRE(hub_oracle_exact(g, h.members, d));
  }
  auto again = extend_on_insert(h, h.members.members()[0], h.members.members()[1]);
  CHECK(again.members == h.members);
}

TEST_CASE("hub sets from exact trees") {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 10; ++round) {
    const std::size_t n = 40;
    const int d = 4;
    auto g = oracle::random_graph(n, 2 * n, rng, Mode::kIncremental);
    auto all = all_vertices(n);
    auto h = hubs_from_exact_trees(exact_trees(g, all, d), n, d);
    CHECK(h.d == 2 * d);
    CHECK(hub_oracle_exact(g, h.members, 2 * d));
    CHECK(hub_oracle_exact(ReverseView(g), h.members, 2 * d));
    CHECK(h.members.size() <= 4.0 * n / d * std::log(n) + 1);
  }
  auto g = oracle::random_graph(10, 20, rng, Mode::kIncremental);
  auto all = all_vertices(10);
  CHECK(hubs_from_exact_trees(exact_trees(g, all, 10), 10, 10).members.empty());
}

TEST_CASE("hub sets from hub trees, two levels") {
  std::mt19937_64 rng(6);
  for (int round = 0; round < 8; ++round) {
    const std::size_t n = 36;
    const int d = 3;
    auto g = oracle::random_graph(n, 2 * n, rng, Mode::kIncremental);
    auto all = all_vertices(n);
    auto h1 = hubs_from_exact_trees(exact_trees(g, all, d), n, d);
    REQUIRE(hub_oracle_exact(g, h1.members, 2 * d));
    auto members = std::vector<VertexId>(h1.members.members().begin(),
                                         h1.members.members().end());
    auto h2 = hubs_from_hub_trees(exact_trees(g, members, 2 * d), n, 2 * d);
    CHECK(h2.d == 12 * d);
    CHECK(hub_oracle_exact(g, h2.members, h2.d));
    CHECK(hub_oracle_exact(ReverseView(g), h2.members, h2.d));
  }
}

TEST_CASE("hub sets from approximate trees") {
  std::mt19937_64 rng(7);
  CHECK_THROWS_AS(hubs_from_approx_trees({}, 10, 3, 0.1), Error);
  for (int round = 0; round < 10; ++round) {
    const std::size_t n = 16 + rng() % 9;
    const int d = 4;
    const double eps = 0.1;
    const int W = round % 2 ? 20 : 1;
    auto g = oracle::random_graph(n, 3 * n, rng, Mode::kIncremental, W);
    ReverseView rg(g);
    std::vector<RootedTree> trees;
    const double e = W == 1 ? 1e-6 : eps;
    for (VertexId v = 0; v < n; ++v) {
      trees.push_back(tree_of(Hsssp(g, v, 3 * d, e, n * W)));
      trees.push_back(tree_of(Hsssp(rg, v, 3 * d, e, n * W)));
    }
    auto h = hubs_from_approx_trees(trees, n, d, e);
    const int p = approx_hub_exponent(n);
    CHECK(h.d == 2 * d * p);
    if (W == 1) {
      CHECK(hub_oracle_exact(g, h.members, h.d));
    } else {
      CHECK(hub_oracle_approx(g, h.members, h.d, std::pow(1 + e, p)));
    }
  }
}

TEST_CASE("tree paths are covered at 2d by a deep-tree blocker") {
  std::mt19937_64 rng(8);
  for (int round = 0; round < 20; ++round) {
    const std::size_t n = 50;
    const int d = 2 + static_cast<int>(rng() % 3);
    auto g = oracle::random_graph(n, 2 * n, rng, Mode::kIncremental);
    EsTree t(g, 0, static_cast<int>(n));
    RootedTree rt = tree_of(t);
    auto b = greedy_blocker(decompose_depth(rt, d), n, d);
    for (VertexId v = 0; v < n; ++v) {
      if (!t.reached(v)) continue;
      std::vector<VertexId> path{v};
      for (VertexId x = v; t.parent(x) != kNoVertex; x = t.parent(x)) {
        path.push_back(t.parent(x));
      }
      std::reverse(path.begin(), path.end());
      CHECK(is_covered(path, b, 2 * d));
    }
  }
}

TEST_CASE("general concatenation bound") {
  std::mt19937_64 rng(9);
  int checked = 0;
  for (int round = 0; round < 3000; ++round) {
    const std::size_t n = 25;
    const VertexSet b = random_set(n, 4, rng);
    const std::size_t pieces = 1 + rng() % 4;
    std::vector<std::vector<VertexId>> parts;
    std::vector<VertexId> whole{static_cast<VertexId>(rng() % n)};
    for (std::size_t i = 0; i < pieces; ++i) {
      std::vector<VertexId> part{whole.back()};
      const std::size_t hops = 1 + rng() % 6;
      for (std::size_t k = 0; k < hops; ++k) part.push_back(rng() % n);
      whole.insert(whole.end(), part.begin() + 1, part.end());
      parts.push_back(std::move(part));
    }
    // Smallest d each piece is covered for.
    std::vector<int> need;
    std::vector<bool> clean;
    for (const auto& part : parts) {
      int d = 1;
      while (!is_covered(part, b, d)) ++d;
      need.push_back(d);
      bool any = false;
      for (VertexId v : part) any = any || b.contains(v);
      clean.push_back(!any);
    }
    int big_d = 0;
    for (std::size_t x = 0; x < pieces; ++x) {
      int sum = 0;
      for (std::size_t z = x; z < pieces; ++z) {
        if (z > x + 1 && !clean[z - 1]) break;
        sum += need[z];
        big_d = std::max(big_d, sum);
      }
    }
    CHECK(is_covered(whole, b, big_d));
    ++checked;
  }
  CHECK(checked > 1000);
}

TEST_CASE("approximate trees much shallower than d still give hubs") {
  // Direct arcs 0->v tie the unit chain; rounding charges the chain once per
  // arc, so the tree from 0 takes the single arcs and stays one hop deep.
  const std::size_t n = 20;
  const int d = 4;
  const double eps = 0.1;
  DynamicDigraph g(n, Mode::kIncremental, 1000);
  for (VertexId v = 0; v + 1 < n; ++v) g.apply_update(UpdateOp::insert(v, v + 1, 1));
  for (VertexId v = 2; v < n; ++v) {
    g.apply_update(UpdateOp::insert(0, v, v));
  }
  ReverseView rg(g);
  std::vector<RootedTree> trees;
  for (VertexId v = 0; v < n; ++v) {
    trees.push_back(tree_of(Hsssp(g, v, 3 * d, eps, 1000.0 * n)));
    trees.push_back(tree_of(Hsssp(rg, v, 3 * d, eps, 1000.0 * n)));
  }
  CHECK(tree_depth(trees[0]) < d);
  auto h = hubs_from_approx_trees(trees, n, d, eps);
  CHECK(hub_oracle_approx(g, h.members, h.d, h.ratio));
}
