#include "hubs/hubs.hpp"

#include <cmath>
#include <deque>
#include <queue>

namespace hubs {

namespace {

// Segment starts chosen by the farthest-jump rule, or nullopt.
std::optional<std::vector<std::size_t>> greedy_split(
    std::span<const VertexId> path, const VertexSet& b, int d) {
  std::vector<std::size_t> starts{0};
  if (path.empty()) return starts;
  const std::size_t last = path.size() - 1;
  std::size_t i = 0;
  while (i + static_cast<std::size_t>(d) < last) {
    std::size_t next = i;
    for (std::size_t j = i + d; j > i; --j) {
      if (b.contains(path[j])) {
        next = j;
        break;
      }
    }
    if (next == i) return std::nullopt;
    starts.push_back(next);
    i = next;
  }
  return starts;
}

}  // namespace

bool is_covered(std::span<const VertexId> path, const VertexSet& b, int d) {
  return greedy_split(path, b, d).has_value();
}

std::optional<std::vector<std::size_t>> split_blocks(
    std::span<const VertexId> path, const VertexSet& b, int d) {
  auto segs = greedy_split(path, b, d);
  if (!segs) return std::nullopt;
  const std::size_t hops = path.empty() ? 0 : path.size() - 1;
  std::vector<std::size_t> blocks{0};
  for (std::size_t s : *segs) {
    if (s - blocks.back() >= static_cast<std::size_t>(d)) blocks.push_back(s);
  }
  // A short tail joins the previous block.
  if (blocks.size() > 1 && hops - blocks.back() < static_cast<std::size_t>(d)) {
    blocks.pop_back();
  }
  return blocks;
}

bool hub_oracle_exact(const GraphView& g, const VertexSet& h, int d) {
  const std::size_t n = g.num_vertices();
  constexpr int kUnset = std::numeric_limits<int>::max();
  std::vector<int> dist(n), f(n);
  std::vector<VertexId> order;
  for (VertexId s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), kUnset);
    order.assign(1, s);
    dist[s] = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      const VertexId u = order[i];
      g.out_arcs(u).for_each([&](const Arc& a) {
        if (dist[a.to] == kUnset) {
          dist[a.to] = dist[u] + 1;
          order.push_back(a.to);
        }
      });
    }
    // f(v): fewest hops since the last segment start over shortest paths.
    f[s] = 0;
    for (std::size_t i = 1; i < order.size(); ++i) {
      const VertexId v = order[i];
      int best = kUnset;
      g.in_arcs(v).for_each([&](const Arc& a) {
        const VertexId p = a.to;
        if (dist[p] == kUnset || dist[p] + 1 != dist[v] || f[p] == kUnset) {
          return;
        }
        const int since = h.contains(p) ? 0 : f[p];
        best = std::min(best, since + 1);
      });
      if (best > d) return false;
      f[v] = best;
    }
  }
  return true;
}

bool hub_oracle_approx(const GraphView& g, const VertexSet& h, int d,
                       double ratio) {
  const std::size_t n = g.num_vertices();
  const std::size_t width = static_cast<std::size_t>(d) + 1;
  using Item = std::pair<double, std::size_t>;
  std::vector<double> exact(n), state(n * width);
  for (VertexId s = 0; s < n; ++s) {
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    std::fill(exact.begin(), exact.end(), kInf);
    exact[s] = 0;
    pq.push({0.0, s});
    while (!pq.empty()) {
      auto [du, u] = pq.top();
      pq.pop();
      if (du > exact[u]) continue;
      g.out_arcs(static_cast<VertexId>(u)).for_each([&](const Arc& a) {
        if (du + a.w < exact[a.to]) {
          exact[a.to] = du + a.w;
          pq.push({exact[a.to], a.to});
        }
      });
    }

    // States (v, j): at v with j hops in the current segment.
    std::fill(state.begin(), state.end(), kInf);
    state[s * width] = 0;
    pq.push({0.0, s * width});
    while (!pq.empty()) {
      auto [dx, x] = pq.top();
      pq.pop();
      if (dx > state[x]) continue;
      const VertexId v = static_cast<VertexId>(x / width);
      const std::size_t j = x % width;
      if (j != 0 && h.contains(v) && dx < state[v * width]) {
        state[v * width] = dx;
        pq.push({dx, v * width});
      }
      if (j == static_cast<std::size_t>(d)) continue;
      g.out_arcs(v).for_each([&](const Arc& a) {
        const std::size_t y = a.to * width + j + 1;
        if (dx + a.w < state[y]) {
          state[y] = dx + a.w;
          pq.push({state[y], y});
        }
      });
    }
    for (VertexId v = 0; v < n; ++v) {
      if (exact[v] == kInf) continue;
      double best = kInf;
      for (std::size_t j = 0; j < width; ++j) {
        best = std::min(best, state[v * width + j]);
      }
      if (!leq_slack(best, ratio * exact[v])) return false;
    }
  }
  return true;
}

HubSet extend_on_insert(const HubSet& h, VertexId x, VertexId y) {
  HubSet out = h;
  out.members.insert(x);
  out.members.insert(y);
  return out;
}

HubSet hubs_from_exact_trees(std::span<const RootedTree> trees,
                             std::size_t n, int d) {
  return {greedy_blocker(trees, n, d), 2 * d, 1.0};
}

HubSet hubs_from_hub_trees(std::span<const RootedTree> trees, std::size_t n,
                           int d) {
  return {greedy_blocker(trees, n, d), 6 * d, 1.0};
}

int approx_hub_exponent(std::size_t n) {
  int p = 0;
  while ((std::size_t{1} << p) < n) ++p;
  return p + 1;
}

HubSet hubs_from_approx_trees(std::span<const RootedTree> trees,
                              std::size_t n, int d, double eps) {
  if (d % 2 != 0 || d <= 0) {
    throw Error(ErrorCode::kOddD, "d must be a positive even integer");
  }
  std::vector<RootedTree> pieces;
  for (const RootedTree& t : trees) {
    for (RootedTree& p : decompose_depth(t, d / 2)) pieces.push_back(std::move(p));
  }
  const int p = approx_hub_exponent(n);
  return {greedy_blocker(pieces, n, d / 2), 2 * d * p, std::pow(1.0 + eps, p)};
}

}  // namespace hubs
