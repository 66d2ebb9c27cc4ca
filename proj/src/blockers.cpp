#include "hubs/blockers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

#include "hubs/sssp.hpp"

namespace hubs {

namespace {

// A tree re-indexed locally in BFS order (index 0 is the root).
struct LocalTree {
  std::vector<VertexId> vertex;
  std::vector<std::uint32_t> parent;  // local; root has itself
  std::vector<int> depth;
  std::vector<std::uint32_t> child_begin;
  std::vector<std::uint32_t> children;

  std::span<const std::uint32_t> kids(std::uint32_t x) const {
    return {children.data() + child_begin[x],
            children.data() + child_begin[x + 1]};
  }
};

LocalTree localize(const RootedTree& t) {
  LocalTree lt;
  if (t.root == kNoVertex) return lt;
  // Group children by parent vertex.
  std::vector<std::pair<VertexId, VertexId>> by_parent(t.edges.size());
  for (std::size_t i = 0; i < t.edges.size(); ++i) {
    by_parent[i] = {t.edges[i].second, t.edges[i].first};
  }
  std::sort(by_parent.begin(), by_parent.end());

  auto children_of = [&](VertexId p) {
    auto lo = std::lower_bound(by_parent.begin(), by_parent.end(),
                               std::make_pair(p, VertexId{0}));
    auto hi = std::lower_bound(by_parent.begin(), by_parent.end(),
                               std::make_pair(p + 1, VertexId{0}));
    return std::make_pair(lo, hi);
  };

  lt.vertex.push_back(t.root);
  lt.parent.push_back(0);
  lt.depth.push_back(0);
  for (std::uint32_t x = 0; x < lt.vertex.size(); ++x) {
    lt.child_begin.push_back(static_cast<std::uint32_t>(lt.children.size()));
    auto [lo, hi] = children_of(lt.vertex[x]);
    for (auto it = lo; it != hi; ++it) {
      const auto idx = static_cast<std::uint32_t>(lt.vertex.size());
      lt.vertex.push_back(it->second);
      lt.parent.push_back(x);
      lt.depth.push_back(lt.depth[x] + 1);
      lt.children.push_back(idx);
    }
  }
  lt.child_begin.push_back(static_cast<std::uint32_t>(lt.children.size()));
  return lt;
}

}  // namespace

RootedTree tree_from_parents(VertexId root, std::span<const VertexId> parent) {
  RootedTree t;
  t.root = root;
  for (VertexId v = 0; v < parent.size(); ++v) {
    if (v != root && parent[v] != kNoVertex) t.edges.push_back({v, parent[v]});
  }
  return t;
}

RootedTree tree_of(const EsTree& t) {
  std::vector<VertexId> parent(t.num_vertices());
  for (VertexId v = 0; v < parent.size(); ++v) parent[v] = t.parent(v);
  return tree_from_parents(t.source(), parent);
}

RootedTree tree_of(const Hsssp& s) {
  std::vector<VertexId> parent(s.num_vertices(), kNoVertex);
  for (VertexId v = 0; v < parent.size(); ++v) {
    if (auto p = s.tree_parent(v)) parent[v] = p->first;
  }
  return tree_from_parents(s.source(), parent);
}

int tree_depth(const RootedTree& t) {
  const LocalTree lt = localize(t);
  int d = 0;
  for (int x : lt.depth) d = std::max(d, x);
  return d;
}

VertexSet greedy_blocker(std::span<const RootedTree> trees, std::size_t n,
                         int d) {
  std::vector<LocalTree> local;
  local.reserve(trees.size());
  std::vector<std::vector<std::int64_t>> count(trees.size());
  std::vector<std::vector<char>> alive(trees.size());
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> occ(n);
  std::vector<std::int64_t> score(n, 0);

  for (std::uint32_t i = 0; i < trees.size(); ++i) {
    local.push_back(localize(trees[i]));
    const LocalTree& lt = local.back();
    const std::size_t sz = lt.vertex.size();
    count[i].assign(sz, 0);
    alive[i].assign(sz, 1);
    for (std::size_t x = sz; x-- > 0;) {
      if (lt.depth[x] > d) {
        throw Error(ErrorCode::kDepthExceeded,
                    "tree deeper than " + std::to_string(d));
      }
      if (lt.depth[x] == d) count[i][x] += 1;
      if (x > 0) count[i][lt.parent[x]] += count[i][x];
    }
    for (std::uint32_t x = 0; x < sz; ++x) {
      occ[lt.vertex[x]].push_back({i, x});
      score[lt.vertex[x]] += count[i][x];
    }
  }

  // Max score first, then lowest id.
  using Entry = std::pair<std::int64_t, VertexId>;
  auto worse = [](const Entry& a, const Entry& b) {
    return a.first != b.first ? a.first < b.first : a.second > b.second;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> heap(worse);
  for (VertexId v = 0; v < n; ++v) {
    if (score[v] > 0) heap.push({score[v], v});
  }

  VertexSet b(n);
  std::vector<std::uint32_t> stack;
  std::vector<VertexId> touched;
  while (!heap.empty()) {
    const auto [s, v] = heap.top();
    heap.pop();
    if (s != score[v] || s == 0) continue;
    b.insert(v);
    touched.clear();
    for (auto [i, x] : occ[v]) {
      if (!alive[i][x] || count[i][x] == 0) continue;
      const LocalTree& lt = local[i];
      const std::int64_t c = count[i][x];
      for (std::uint32_t a = x; a != 0;) {
        a = lt.parent[a];
        count[i][a] -= c;
        score[lt.vertex[a]] -= c;
        touched.push_back(lt.vertex[a]);
      }
      stack.assign(1, x);
      while (!stack.empty()) {
        const std::uint32_t y = stack.back();
        stack.pop_back();
        if (!alive[i][y]) continue;
        alive[i][y] = 0;
        if (count[i][y] != 0) {
          score[lt.vertex[y]] -= count[i][y];
          count[i][y] = 0;
          touched.push_back(lt.vertex[y]);
        }
        for (std::uint32_t ch : lt.kids(y)) stack.push_back(ch);
      }
    }
    for (VertexId u : touched) {
      if (score[u] > 0) heap.push({score[u], u});
    }
  }
  return b;
}

std::vector<RootedTree> decompose_depth(const RootedTree& tree, int d) {
  const LocalTree lt = localize(tree);
  std::vector<RootedTree> pieces;
  std::vector<std::uint32_t> frontier, next;
  for (std::uint32_t x = 0; x < lt.vertex.size(); ++x) {
    if (lt.depth[x] % d != 0 || lt.kids(x).empty()) continue;
    RootedTree piece;
    piece.root = lt.vertex[x];
    frontier.assign(1, x);
    for (int level = 0; level < d && !frontier.empty(); ++level) {
      next.clear();
      for (std::uint32_t y : frontier) {
        for (std::uint32_t c : lt.kids(y)) {
          piece.edges.push_back({lt.vertex[c], lt.vertex[y]});
          next.push_back(c);
        }
      }
      std::swap(frontier, next);
    }
    pieces.push_back(std::move(piece));
  }
  return pieces;
}

std::size_t candidate_size(std::size_t n, int d, double c) {
  if (n == 0) return 0;
  const double want =
      std::ceil(c * static_cast<double>(n) / d * std::log(static_cast<double>(n)));
  return want >= static_cast<double>(n) ? n : static_cast<std::size_t>(want);
}

VertexSet sample_candidate(std::size_t n, int d, double c, Rng& rng) {
  const std::size_t k = candidate_size(n, d, c);
  std::vector<VertexId> perm(n);
  std::iota(perm.begin(), perm.end(), VertexId{0});
  for (std::size_t i = 0; i < k; ++i) {
    std::swap(perm[i], perm[i + uniform_below(rng, n - i)]);
  }
  return VertexSet(n, std::span<const VertexId>(perm.data(), k));
}

EtForest forest_of(const RootedTree& t, std::size_t n) {
  EtForest f(n);
  for (auto [child, parent] : t.edges) f.link(child, parent);
  return f;
}

bool verify_blocker(EtForest& forest, VertexId root, const VertexSet& b,
                    int d) {
  if (b.contains(root)) return true;
  std::vector<std::pair<VertexId, VertexId>> cut;
  for (VertexId x : b.members()) {
    if (auto p = forest.parent(x)) {
      forest.cut(x);
      cut.push_back({x, *p});
    }
  }
  const bool ok = forest.depth(root) < d;
  for (auto it = cut.rbegin(); it != cut.rend(); ++it) {
    forest.link(it->first, it->second);
  }
  return ok;
}

bool verify_blocker(std::span<EtForest> forests,
                    std::span<const VertexId> roots, const VertexSet& b,
                    int d) {
  for (std::size_t i = 0; i < forests.size(); ++i) {
    if (!verify_blocker(forests[i], roots[i], b, d)) return false;
  }
  return true;
}

LasVegasBlocker las_vegas_blocker(std::span<EtForest> forests,
                                  std::span<const VertexId> roots,
                                  std::size_t n, int d, double c, Rng& rng,
                                  int cap) {
  LasVegasBlocker out;
  while (true) {
    if (out.trials >= cap) {
      throw Error(ErrorCode::kTrialCapExceeded,
                  std::to_string(cap) + " candidates failed");
    }
    ++out.trials;
    VertexSet cand = sample_candidate(n, d, c, rng);
    if (verify_blocker(forests, roots, cand, d)) {
      out.set = std::move(cand);
      return out;
    }
  }
}

BlockerMonitor::BlockerMonitor(std::size_t n, VertexSet b, int d)
    : b_(std::move(b)), d_(d), pieces_(n), bad_(n, 0) {
  if (d_ <= 0) {
    for (VertexId v = 0; v < n; ++v) recheck(v);
  }
}

void BlockerMonitor::set_bad(VertexId v, bool bad) {
  if (static_cast<bool>(bad_[v]) == bad) return;
  bad_[v] = bad;
  if (bad) {
    ++bad_count_;
  } else {
    --bad_count_;
  }
}

void BlockerMonitor::recheck(VertexId piece_root) {
  set_bad(piece_root,
          !b_.contains(piece_root) && pieces_.depth(piece_root) >= d_);
}

void BlockerMonitor::on_cut(VertexId v) {
  if (b_.contains(v)) return;
  const VertexId old_root = pieces_.find_root(v);
  pieces_.cut(v);
  recheck(old_root);
  recheck(v);
}

void BlockerMonitor::on_link(VertexId r, VertexId v) {
  if (b_.contains(r)) return;
  set_bad(r, false);
  pieces_.link(r, v);
  recheck(pieces_.find_root(v));
}

}  // namespace hubs
