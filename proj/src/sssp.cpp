#include "hubs/sssp.hpp"

#include <cmath>
#include <deque>

namespace hubs {

EsTree::EsTree(const GraphView& g, VertexId source, int depth)
    : g_(&g),
      source_(source),
      depth_(depth),
      level_(g.num_vertices(), kUnreached),
      parent_(g.num_vertices(), kNoVertex),
      touched_(g.num_vertices(), 0),
      buckets_(static_cast<std::size_t>(std::max(depth, 0)) + 1),
      queued_(g.num_vertices(), 0) {
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    g.out_arcs(v).for_each([&](const Arc& a) {
      if (a.w != 1.0) {
        throw Error(ErrorCode::kWeightedGraph, "ES tree needs unit weights");
      }
    });
  }
  level_[source] = 0;
  relax_from(source);
  log_.clear();
  std::fill(touched_.begin(), touched_.end(), 0);
}

void EsTree::touch(VertexId v) {
  if (touched_[v] != 0) return;
  log_.push_back({v, parent_[v], kNoVertex, level_[v], 0});
  touched_[v] = static_cast<std::uint32_t>(log_.size());
}

void EsTree::finish_log() {
  std::size_t out = 0;
  for (std::size_t i = 0; i < log_.size(); ++i) {
    TreeChange c = log_[i];
    touched_[c.v] = 0;
    c.new_parent = parent_[c.v];
    c.new_level = level_[c.v];
    if (c.new_parent != c.old_parent || c.new_level != c.old_level) {
      log_[out++] = c;
    }
  }
  log_.resize(out);
}

void EsTree::relax_from(VertexId start) {
  std::deque<VertexId> q{start};
  while (!q.empty()) {
    const VertexId v = q.front();
    q.pop_front();
    const int next = level_[v] + 1;
    if (next > depth_) continue;
    g_->out_arcs(v).for_each([&](const Arc& a) {
      ++work_;
      if (next < level_[a.to]) {
        touch(a.to);
        level_[a.to] = next;
        parent_[a.to] = v;
        q.push_back(a.to);
      }
    });
  }
}

void EsTree::repair(VertexId start) {
  buckets_[level_[start]].push_back(start);
  queued_[start] = 1;
  for (int b = level_[start]; b <= depth_; ++b) {
    auto& bucket = buckets_[b];
    for (std::size_t i = 0; i < bucket.size(); ++i) {
      const VertexId v = bucket[i];
      queued_[v] = 0;
      int best = kUnreached;
      VertexId best_parent = kNoVertex;
      g_->in_arcs(v).for_each([&](const Arc& a) {
        ++work_;
        const int l = level_[a.to];
        if (l != kUnreached && l + 1 < best) {
          best = l + 1;
          best_parent = a.to;
        }
      });
      if (best > depth_) {
        best = kUnreached;
        best_parent = kNoVertex;
      }
      touch(v);
      parent_[v] = best_parent;
      if (best == level_[v]) continue;
      level_[v] = best;
      g_->out_arcs(v).for_each([&](const Arc& a) {
        ++work_;
        const VertexId c = a.to;
        if (parent_[c] == v && !queued_[c]) {
          queued_[c] = 1;
          buckets_[level_[c]].push_back(c);
        }
      });
    }
    bucket.clear();
  }
}

const std::vector<TreeChange>& EsTree::apply(const ArcChange& c) {
  log_.clear();
  if (c.new_w != kInf && c.new_w != 1.0) {
    throw Error(ErrorCode::kWeightedGraph, "ES tree needs unit weights");
  }
  const VertexId x = c.from;
  const VertexId y = c.to;
  if (c.is_decrease()) {
    if (level_[x] != kUnreached && level_[x] + 1 <= depth_ &&
        level_[x] + 1 < level_[y]) {
      touch(y);
      level_[y] = level_[x] + 1;
      parent_[y] = x;
      relax_from(y);
    }
  } else if (parent_[y] == x) {
    repair(y);
  }
  finish_log();
  return log_;
}

Hsssp::Hsssp(const GraphView& g, VertexId source, int h, double eps,
             double max_dist)
    : g_(&g),
      source_(source),
      h_(std::max(h, 1)),
      eps_(eps),
      n_(g.num_vertices()),
      est_(n_, kInf),
      best_k_(n_, -1),
      dirty_mark_(n_, 0),
      layer_work_(2),
      layer_mark_(n_, 0) {
  if (!(eps > 0.0)) throw Error(ErrorCode::kConfigError, "eps must be positive");
  const double cap = std::floor(2.0 * (1.0 + eps) * h_ / eps * (1.0 + 1e-12));
  cap_units_ = static_cast<std::int32_t>(
      std::min(cap, static_cast<double>(kInfUnits / 2)));
  const int top = max_dist > 1.0 ? static_cast<int>(std::floor(std::log2(max_dist))) : 0;
  buckets_.resize(static_cast<std::size_t>(top) + 1);
  for (std::size_t k = 0; k < buckets_.size(); ++k) {
    Bucket& b = buckets_[k];
    b.unit = eps * std::ldexp(1.0, static_cast<int>(k)) / h_;
    build(b);
  }
  for (VertexId v = 0; v < n_; ++v) mark_final(0, v);
  refresh_estimates();
  log_.clear();
}

std::int32_t Hsssp::units(const Bucket& b, double w) const {
  if (w == kInf) return kInfUnits;
  const double x = w / b.unit;
  if (x > cap_units_) return kInfUnits;
  auto u = static_cast<std::int32_t>(std::ceil(x));
  if (u * b.unit < w) ++u;
  if (u < 1) u = 1;
  return u > cap_units_ ? kInfUnits : u;
}

std::pair<std::int32_t, VertexId> Hsssp::recompute(const Bucket& b, int t,
                                                   VertexId v) {
  std::int32_t best = b.d[at(t - 1, v)];
  VertexId choice = best == kInfUnits ? kNoVertex : kStay;
  g_->in_arcs(v).for_each([&](const Arc& a) {
    ++work_;
    const std::int32_t dp = b.d[at(t - 1, a.to)];
    if (dp == kInfUnits) return;
    const std::int32_t u = units(b, a.w);
    if (u == kInfUnits) return;
    const std::int64_t cand = static_cast<std::int64_t>(dp) + u;
    if (cand <= cap_units_ && cand < best) {
      best = static_cast<std::int32_t>(cand);
      choice = a.to;
    }
  });
  return {best, choice};
}

void Hsssp::build(Bucket& b) {
  b.d.assign(static_cast<std::size_t>(h_ + 1) * n_, kInfUnits);
  b.choice.assign(b.d.size(), kNoVertex);
  b.d[at(0, source_)] = 0;
  b.choice[at(0, source_)] = kStay;
  for (int t = 1; t <= h_; ++t) {
    for (VertexId v = 0; v < n_; ++v) {
      auto [d, c] = recompute(b, t, v);
      b.d[at(t, v)] = d;
      b.choice[at(t, v)] = c;
    }
  }
}

void Hsssp::mark_final(std::size_t, VertexId v) {
  if (dirty_mark_[v]) return;
  dirty_mark_[v] = 1;
  dirty_final_.push_back(v);
}

void Hsssp::lower(Bucket& b, std::size_t k, const ArcChange& c,
                  std::int32_t u_new) {
  const VertexId x = c.from;
  const VertexId y = c.to;
  auto& cur = layer_work_[0];
  auto& next = layer_work_[1];
  cur.clear();
  for (int t = 1; t <= h_; ++t) {
    next.clear();
    auto offer = [&](VertexId v, std::int64_t cand, VertexId choice) {
      if (cand > cap_units_ || cand >= b.d[at(t, v)]) return;
      b.d[at(t, v)] = static_cast<std::int32_t>(cand);
      b.choice[at(t, v)] = choice;
      if (!layer_mark_[v]) {
        layer_mark_[v] = 1;
        next.push_back(v);
      }
    };
    const std::int32_t dx = b.d[at(t - 1, x)];
    if (dx != kInfUnits && u_new != kInfUnits) {
      ++work_;
      offer(y, static_cast<std::int64_t>(dx) + u_new, x);
    }
    for (VertexId v : cur) {
      const std::int32_t dv = b.d[at(t - 1, v)];
      offer(v, dv, kStay);
      g_->out_arcs(v).for_each([&](const Arc& a) {
        ++work_;
        const std::int32_t u = units(b, a.w);
        if (u != kInfUnits) offer(a.to, static_cast<std::int64_t>(dv) + u, v);
      });
    }
    for (VertexId v : next) layer_mark_[v] = 0;
    if (t == h_) {
      for (VertexId v : next) mark_final(k, v);
    }
    std::swap(cur, next);
    // Layers only gain reachability, so an unreachable x at h-1 never
    // offers the new arc again.
    if (cur.empty() && b.d[at(h_ - 1, x)] == kInfUnits) break;
  }
}

void Hsssp::raise(Bucket& b, std::size_t k, const ArcChange& c) {
  const VertexId x = c.from;
  const VertexId y = c.to;
  auto& cur = layer_work_[0];
  auto& next = layer_work_[1];
  cur.clear();
  std::vector<VertexId> dirty;
  for (int t = 1; t <= h_; ++t) {
    dirty.clear();
    auto add = [&](VertexId v) {
      if (!layer_mark_[v]) {
        layer_mark_[v] = 1;
        dirty.push_back(v);
      }
    };
    if (b.choice[at(t, y)] == x) add(y);
    for (VertexId v : cur) {
      if (b.choice[at(t, v)] == kStay) add(v);
      g_->out_arcs(v).for_each([&](const Arc& a) {
        ++work_;
        if (b.choice[at(t, a.to)] == v) add(a.to);
      });
    }
    next.clear();
    for (VertexId v : dirty) {
      layer_mark_[v] = 0;
      auto [d, ch] = recompute(b, t, v);
      const std::int32_t old = b.d[at(t, v)];
      b.d[at(t, v)] = d;
      b.choice[at(t, v)] = ch;
      if (d != old) next.push_back(v);
    }
    std::swap(cur, next);
    if (t == h_) {
      for (VertexId v : cur) mark_final(k, v);
    }
  }
}

void Hsssp::apply_one(const ArcChange& c) {
  for (std::size_t k = 0; k < buckets_.size(); ++k) {
    Bucket& b = buckets_[k];
    const std::int32_t u_old = units(b, c.old_w);
    const std::int32_t u_new = units(b, c.new_w);
    if (u_old == u_new) continue;
    if (u_new < u_old) {
      lower(b, k, c, u_new);
    } else {
      raise(b, k, c);
    }
  }
}

void Hsssp::refresh_estimates() {
  for (VertexId v : dirty_final_) {
    dirty_mark_[v] = 0;
    double best = kInf;
    int best_k = -1;
    for (std::size_t k = 0; k < buckets_.size(); ++k) {
      const std::int32_t d = buckets_[k].d[at(h_, v)];
      if (d == kInfUnits) continue;
      const double val = d * buckets_[k].unit;
      if (val < best) {
        best = val;
        best_k = static_cast<int>(k);
      }
    }
    best_k_[v] = best_k;
    if (best != est_[v]) {
      log_.push_back({v, est_[v], best});
      est_[v] = best;
    }
  }
  dirty_final_.clear();
}

const std::vector<EstimateChange>& Hsssp::apply(const ArcChange& c) {
  return apply(std::span<const ArcChange>(&c, 1));
}

const std::vector<EstimateChange>& Hsssp::apply(
    std::span<const ArcChange> cs) {
  log_.clear();
  for (const ArcChange& c : cs) apply_one(c);
  refresh_estimates();
  return log_;
}

std::optional<std::pair<VertexId, double>> Hsssp::tree_parent(
    VertexId v) const {
  const int k = best_k_[v];
  if (k < 0) return std::nullopt;
  const Bucket& b = buckets_[k];
  int t = h_;
  while (t > 0 && b.choice[at(t, v)] == kStay) --t;
  if (t == 0) return std::nullopt;
  const VertexId p = b.choice[at(t, v)];
  return std::make_pair(p, g_->arc_weight(p, v));
}

}  // namespace hubs
