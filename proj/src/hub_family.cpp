#include "hubs/hub_family.hpp"

#include <algorithm>
#include <cmath>

namespace hubs {

int hub_level_count(std::size_t n) {
  int q = 0;
  std::size_t pow = 1;
  while (pow < n) {
    pow *= 6;
    ++q;
  }
  return q;
}

std::size_t hub_level_size(std::size_t n, int i) {
  if (i == 0) return n;
  const int q = hub_level_count(n);
  std::size_t a = 1;
  for (int k = i; k < q; ++k) a *= 6;
  return std::min(a, n);
}

std::vector<int> hub_level_depths(std::size_t n, double z) {
  if (!(z > 0)) throw Error(ErrorCode::kConfigError, "z must be positive");
  const int q = hub_level_count(n);
  const int cap = std::max<int>(1, static_cast<int>(n) - 1);
  const double log_n = std::ceil(std::log(static_cast<double>(n)));
  std::vector<int> d(q + 1);
  for (int i = 0; i <= q; ++i) {
    const double next = i + 1 <= q ? hub_level_size(n, i + 1) : 1.0;
    const double x = std::floor(z * static_cast<double>(n) / next * log_n);
    long long di = static_cast<long long>(std::min<double>(x, cap));
    if (i > 0) di = std::max<long long>(di, 6LL * d[i - 1]);
    d[i] = static_cast<int>(std::clamp<long long>(di, 1, cap));
  }
  return d;
}

HubLevels sample_hub_levels(std::size_t n, double z, Rng& rng) {
  HubLevels out;
  out.n = n;
  out.z = z;
  out.d = hub_level_depths(n, z);
  const auto perm = random_permutation(n, rng);
  for (int i = 0; i <= hub_level_count(n); ++i) {
    const std::size_t a = hub_level_size(n, i);
    out.sets.emplace_back(perm.begin(), perm.begin() + a);
  }
  return out;
}

HubFamily::HubFamily(const DynamicDigraph& g, HubLevels levels, Exec exec)
    : g_(&g), rev_(g), levels_(std::move(levels)), exec_(exec) {
  const std::size_t n = g.num_vertices();
  const int q = levels_.q();
  banks_.resize(q > 0 ? q : 0);
  for (int i = 1; i <= q; ++i) {
    Level& level = banks_[i - 1];
    const int depth = levels_.d[i - 1];
    const auto& sources = levels_.sets[i - 1];
    level.from.resize(sources.size());
    level.to.resize(sources.size());
    const VertexSet b = levels_.set(i);
    parallel_for(sources.size(), exec_, [&](std::size_t j) {
      level.from[j].reset(new Watched{EsTree(*g_, sources[j], depth),
                                      BlockerMonitor(n, b, depth)});
      level.to[j].reset(new Watched{EsTree(rev_, sources[j], depth),
                                    BlockerMonitor(n, b, depth)});
    });
    attach_monitors(level, b, depth);
  }
}

void HubFamily::attach_monitors(Level& level, const VertexSet& b, int d) {
  const std::size_t n = g_->num_vertices();
  auto fill = [&](Watched& w) {
    w.monitor = BlockerMonitor(n, b, d);
    for (VertexId v = 0; v < n; ++v) {
      if (w.tree.reached(v) && w.tree.parent(v) != kNoVertex) {
        w.monitor.on_link(v, w.tree.parent(v));
      }
    }
  };
  parallel_for(level.from.size() * 2, exec_, [&](std::size_t j) {
    const std::size_t half = level.from.size();
    fill(j < half ? *level.from[j] : *level.to[j - half]);
  });
}

void HubFamily::on_update(const ArcChange& c) {
  const ArcChange rc = c.reversed();
  for (Level& level : banks_) {
    const std::size_t half = level.from.size();
    parallel_for(half * 2, exec_, [&](std::size_t j) {
      Watched& w = j < half ? *level.from[j] : *level.to[j - half];
      const auto& log = w.tree.apply(j < half ? c : rc);
      replay_tree_changes(
          std::span<const TreeChange>(log),
          [&](VertexId v) { w.monitor.on_cut(v); },
          [&](VertexId v, VertexId p) { w.monitor.on_link(v, p); });
    });
  }
}

std::vector<int> HubFamily::failing_levels() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < banks_.size(); ++i) {
    const Level& level = banks_[i];
    bool ok = true;
    for (std::size_t j = 0; j < level.from.size() && ok; ++j) {
      ok = level.from[j]->monitor.is_blocker() &&
           level.to[j]->monitor.is_blocker();
    }
    if (!ok) out.push_back(static_cast<int>(i) + 1);
  }
  return out;
}

bool HubFamily::alarm() const { return !failing_levels().empty(); }

std::size_t HubFamily::tree_count() const {
  std::size_t total = 0;
  for (const Level& level : banks_) total += 2 * level.from.size();
  return total;
}

std::uint64_t HubFamily::work() const {
  std::uint64_t total = 0;
  for (const Level& level : banks_) {
    for (const auto& w : level.from) total += w->tree.work();
    for (const auto& w : level.to) total += w->tree.work();
  }
  return total;
}

void HubFamily::debug_override_level(int i, std::span<const VertexId> members) {
  if (i < 1 || i > levels_.q()) {
    throw Error(ErrorCode::kConfigError, "no such hub level");
  }
  attach_monitors(banks_[i - 1], VertexSet(g_->num_vertices(), members),
                  levels_.d[i - 1]);
}

}  // namespace hubs
