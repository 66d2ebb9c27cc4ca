#include "hubs/apsp_decr.hpp"

#include <algorithm>
#include <cmath>

namespace hubs {

namespace {

void require_increase(const ArcChange& c) {
  if (c.new_w < c.old_w) {
    throw Error(ErrorCode::kModeViolation,
                "decremental structure received a weight decrease");
  }
}

double finite_weight_bound(const DynamicDigraph& g) {
  if (g.max_weight() != kInf) return g.max_weight();
  double w = 1.0;
  for (const Edge& e : g.edges()) w = std::max(w, e.w);
  return w;
}

}  // namespace

// ---------------------------------------------------------------- exact

ExactDecrApsp::ExactDecrApsp(const DynamicDigraph& g, const HubLevels& levels,
                             Exec exec)
    : g_(&g), rev_(g), n_(g.num_vertices()), exec_(exec) {
  const int q = levels.q();
  const int far = std::max(0, static_cast<int>(n_) - 1);
  thresholds_.push_back(-1);
  for (int i = 1; i <= q; ++i) thresholds_.push_back(std::min(levels.d[i], far));
  thresholds_.push_back(far);

  levels_.resize(q + 1);
  for (int i = 0; i <= q; ++i) {
    Level& level = levels_[i];
    level.hubs = levels.sets[i];
    const int depth = thresholds_[i + 1];
    const std::size_t k = level.hubs.size();
    level.from.resize(k);
    level.to.resize(k);
    parallel_for(2 * k, exec_, [&](std::size_t j) {
      if (j < k) {
        level.from[j] = std::make_unique<EsTree>(*g_, level.hubs[j], depth);
      } else {
        level.to[j - k] = std::make_unique<EsTree>(rev_, level.hubs[j - k], depth);
      }
    });
    level.est.assign(n_ * n_, kFar);
    level.witness.assign(n_ * n_, 0);
    parallel_for(n_, exec_, [&](std::size_t u) {
      for (VertexId v = 0; v < n_; ++v) recompute(level, u, v);
    });
  }
}

void ExactDecrApsp::recompute(Level& level, VertexId u, VertexId v) {
  std::int32_t best = kFar;
  std::uint32_t who = 0;
  for (std::size_t j = 0; j < level.hubs.size(); ++j) {
    const int a = level.to[j]->level(u);
    const int b = level.from[j]->level(v);
    if (a == EsTree::kUnreached || b == EsTree::kUnreached) continue;
    if (a + b < best) {
      best = a + b;
      who = static_cast<std::uint32_t>(j);
    }
  }
  level.est[u * n_ + v] = best;
  level.witness[u * n_ + v] = who;
}

void ExactDecrApsp::on_update(const ArcChange& c) {
  require_increase(c);
  const ArcChange rc = c.reversed();
  for (Level& level : levels_) {
    const std::size_t k = level.hubs.size();
    parallel_for(2 * k, exec_, [&](std::size_t j) {
      if (j < k) {
        level.from[j]->apply(c);
      } else {
        level.to[j - k]->apply(rc);
      }
    });
  }
  // Labels only grow, so an entry can only be stale if its witness moved.
  for (Level& level : levels_) {
    for (std::size_t j = 0; j < level.hubs.size(); ++j) {
      for (const TreeChange& ch : level.to[j]->changes()) {
        if (ch.old_level == ch.new_level) continue;
        const VertexId u = ch.v;
        ++sweeps_;
        for (VertexId v = 0; v < n_; ++v) {
          if (level.witness[u * n_ + v] == j && level.est[u * n_ + v] != kFar) {
            recompute(level, u, v);
          }
        }
      }
      for (const TreeChange& ch : level.from[j]->changes()) {
        if (ch.old_level == ch.new_level) continue;
        const VertexId v = ch.v;
        ++sweeps_;
        for (VertexId u = 0; u < n_; ++u) {
          if (level.witness[u * n_ + v] == j && level.est[u * n_ + v] != kFar) {
            recompute(level, u, v);
          }
        }
      }
    }
  }
}

double ExactDecrApsp::level_estimate(int i, VertexId u, VertexId v) const {
  const std::int32_t e = levels_[i].est[u * n_ + v];
  return e == kFar ? kInf : e;
}

double ExactDecrApsp::distance(VertexId u, VertexId v) const {
  double best = kInf;
  for (int i = 0; i < levels(); ++i) best = std::min(best, level_estimate(i, u, v));
  return best;
}

std::uint64_t ExactDecrApsp::work() const {
  std::uint64_t total = sweeps_ * n_;
  for (const Level& level : levels_) {
    for (const auto& t : level.from) total += t->work();
    for (const auto& t : level.to) total += t->work();
  }
  return total;
}

// --------------------------------------------------------------- approx

ApproxDecrApsp::Source::Source(const GraphView& fwd_base,
                               const GraphView& bwd_base, VertexId u,
                               std::size_t n)
    : fstar(n, u),
      bstar(n, u),
      fview(fwd_base, fstar),
      bview(bwd_base, bstar) {}

ApproxDecrApsp::ApproxDecrApsp(const DynamicDigraph& g,
                               const HubLevels& levels, double eps, Exec exec)
    : g_(&g),
      rev_(g),
      n_(g.num_vertices()),
      eps_(eps),
      eps_prime_(eps / (2.0 * (levels.q() + 1))),
      exec_(exec) {
  if (!(eps > 0)) throw Error(ErrorCode::kConfigError, "eps must be positive");
  const int q = levels.q();
  const int far = std::max(1, static_cast<int>(n_) - 1);
  max_dist_ = 2.0 * (1.0 + eps) * std::max<double>(1.0, n_) *
              finite_weight_bound(g);
  levels_.resize(q + 1);
  for (int i = q; i >= 0; --i) {
    Level& level = levels_[i];
    level.h = i == q ? far : std::min(levels.d[i + 1] + 1, far);
    level.members = levels.sets[i];
    level.index.assign(n_, -1);
    for (std::size_t j = 0; j < level.members.size(); ++j) {
      level.index[level.members[j]] = static_cast<std::int32_t>(j);
    }
    level.sources.resize(level.members.size());
    for (std::size_t j = 0; j < level.members.size(); ++j) {
      const VertexId u = level.members[j];
      auto src = std::make_unique<Source>(*g_, rev_, u, n_);
      if (i < q) {
        for (VertexId v : levels_[i + 1].members) {
          if (v == u) continue;
          src->fstar.set(v, level_estimate(i + 1, u, v));
          src->bstar.set(v, level_estimate(i + 1, v, u));
        }
      }
      level.sources[j] = std::move(src);
    }
    parallel_for(2 * level.sources.size(), exec_, [&](std::size_t j) {
      const std::size_t k = level.sources.size();
      Source& s = *level.sources[j % k];
      const VertexId u = level.members[j % k];
      if (j < k) {
        s.fwd.emplace(s.fview, u, level.h, eps_prime_, max_dist_);
      } else {
        s.bwd.emplace(s.bview, u, level.h, eps_prime_, max_dist_);
      }
    });
  }
}

double ApproxDecrApsp::level_estimate(int i, VertexId u, VertexId v) const {
  if (u == v) return 0;
  const Level& level = levels_[i];
  double best = kInf;
  if (level.index[u] >= 0) best = level.sources[level.index[u]]->fwd->estimate(v);
  if (level.index[v] >= 0) {
    best = std::min(best, level.sources[level.index[v]]->bwd->estimate(u));
  }
  return best;
}

double ApproxDecrApsp::estimate(VertexId u, VertexId v) const {
  return level_estimate(0, u, v);
}

const GraphView& ApproxDecrApsp::forward_view(int i, VertexId u) const {
  const Level& level = levels_[i];
  if (level.index[u] < 0) throw Error(ErrorCode::kConfigError, "not a hub");
  return level.sources[level.index[u]]->fview;
}

void ApproxDecrApsp::on_update(const ArcChange& c) {
  require_increase(c);
  const ArcChange rc = c.reversed();
  std::vector<std::vector<ArcChange>> fbatch, bbatch;
  for (int i = levels() - 1; i >= 0; --i) {
    Level& level = levels_[i];
    const std::size_t k = level.sources.size();
    fbatch.assign(k, {c});
    bbatch.assign(k, {rc});
    if (i + 1 < levels()) {
      const Level& up = levels_[i + 1];
      auto refresh = [&](VertexId x, VertexId y) {
        if (x == y) return;
        const double w = level_estimate(i + 1, x, y);
        if (level.index[x] >= 0 && up.index[y] >= 0) {
          Source& s = *level.sources[level.index[x]];
          if (s.fstar.weight(y) != w) {
            fbatch[level.index[x]].push_back(s.fstar.set(y, w));
          }
        }
        if (level.index[y] >= 0 && up.index[x] >= 0) {
          Source& s = *level.sources[level.index[y]];
          if (s.bstar.weight(x) != w) {
            bbatch[level.index[y]].push_back(s.bstar.set(x, w));
          }
        }
      };
      for (std::size_t j = 0; j < up.sources.size(); ++j) {
        const VertexId a = up.members[j];
        for (const EstimateChange& e : up.sources[j]->fwd->changes()) {
          refresh(a, e.v);
        }
        for (const EstimateChange& e : up.sources[j]->bwd->changes()) {
          refresh(e.v, a);
        }
      }
    }
    parallel_for(2 * k, exec_, [&](std::size_t j) {
      Source& s = *level.sources[j % k];
      if (j < k) {
        s.fwd->apply(fbatch[j]);
      } else {
        s.bwd->apply(bbatch[j - k]);
      }
    });
  }
}

std::uint64_t ApproxDecrApsp::work() const {
  std::uint64_t total = 0;
  for (const Level& level : levels_) {
    for (const auto& s : level.sources) total += s->fwd->work() + s->bwd->work();
  }
  return total;
}

// ----------------------------------------------------------- las vegas

LasVegasDecr::LasVegasDecr(const DynamicDigraph& g, DecrInner inner,
                           double eps, double z, std::uint64_t seed, Exec exec)
    : g_(&g), inner_(inner), eps_(eps), z_(z), exec_(exec), rng_(seed) {
  if (!g.is_unweighted()) {
    throw Error(ErrorCode::kWeightedGraph,
                "the restart wrapper supports unweighted graphs only");
  }
  build(sample_hub_levels(g.num_vertices(), z_, rng_));
  settle();
}

void LasVegasDecr::build(HubLevels levels) {
  exact_.reset();
  approx_.reset();
  family_ = std::make_unique<HubFamily>(*g_, std::move(levels), exec_);
  if (inner_ == DecrInner::kExact) {
    exact_ = std::make_unique<ExactDecrApsp>(*g_, family_->levels(), exec_);
  } else {
    approx_ =
        std::make_unique<ApproxDecrApsp>(*g_, family_->levels(), eps_, exec_);
  }
}

void LasVegasDecr::settle() {
  int streak = 0;
  while (family_->alarm()) {
    if (++streak > kMaxConsecutiveRestarts) {
      throw Error(ErrorCode::kTrialCapExceeded,
                  "hub family kept failing verification");
    }
    ++restarts_;
    build(sample_hub_levels(g_->num_vertices(), z_, rng_));
  }
}

void LasVegasDecr::on_update(const ArcChange& c) {
  family_->on_update(c);
  if (family_->alarm()) {
    settle();
  } else if (exact_) {
    exact_->on_update(c);
  } else {
    approx_->on_update(c);
  }
}

double LasVegasDecr::estimate(VertexId u, VertexId v) const {
  return exact_ ? exact_->distance(u, v) : approx_->estimate(u, v);
}

std::uint64_t LasVegasDecr::work() const {
  return family_->work() + (exact_ ? exact_->work() : approx_->work());
}

void LasVegasDecr::inject_levels(HubLevels levels) {
  build(std::move(levels));
  settle();
}

}  // namespace hubs
