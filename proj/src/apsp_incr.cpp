#include "hubs/apsp_incr.hpp"

#include <algorithm>
#include <cmath>

#include "hubs/blockers.hpp"

namespace hubs {

namespace {

void require_decrease(const ArcChange& c) {
  if (c.new_w > c.old_w) {
    throw Error(ErrorCode::kModeViolation,
                "incremental structure received a weight increase");
  }
}

int ceil_log2(std::size_t n) {
  int k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  return k;
}

// Tree of t restricted to vertices at level <= depth.
RootedTree truncated(const EsTree& t, int depth) {
  std::vector<VertexId> parent(t.num_vertices(), kNoVertex);
  for (VertexId v = 0; v < t.num_vertices(); ++v) {
    if (t.reached(v) && t.level(v) <= depth) parent[v] = t.parent(v);
  }
  return tree_from_parents(t.source(), parent);
}

}  // namespace

double incremental_distance_bound(const DynamicDigraph& g, double eps) {
  const double w = g.max_weight() == kInf ? 1.0 : g.max_weight();
  return 2.0 * (1.0 + eps) * std::max<double>(1.0, g.num_vertices()) * w;
}

// ---------------------------------------------------------------- dense

DenseIncrApsp::DenseIncrApsp(const GraphView& g, double eps, double max_dist,
                             Exec exec)
    : g_(&g), n_(g.num_vertices()), max_dist_(max_dist), exec_(exec) {
  if (!(eps > 0)) throw Error(ErrorCode::kConfigError, "eps must be positive");
  const int k = std::max(1, ceil_log2(n_));
  eps_layer_ = eps / (4.0 * k);
  layers_.resize(k);
  for (int i = 0; i < k; ++i) {
    Layer& layer = layers_[i];
    const GraphView* base = g_;
    if (i > 0) {
      layer.matrix = std::make_unique<MatrixGraph>(n_);
      const Layer& prev = layers_[i - 1];
      for (VertexId u = 0; u < n_; ++u) {
        for (VertexId v = 0; v < n_; ++v) {
          const double e = prev.sources[u]->estimate(v);
          if (u != v && e != kInf) layer.matrix->set(u, v, e);
        }
      }
      base = layer.matrix.get();
    }
    layer.sources.resize(n_);
    parallel_for(n_, exec_, [&](std::size_t s) {
      layer.sources[s] = std::make_unique<Hsssp>(
          *base, static_cast<VertexId>(s), 2, eps_layer_, max_dist_);
    });
  }
}

void DenseIncrApsp::on_update(const ArcChange& c) {
  on_update(std::span<const ArcChange>(&c, 1));
}

void DenseIncrApsp::on_update(std::span<const ArcChange> cs) {
  for (const ArcChange& c : cs) require_decrease(c);
  log_.clear();
  std::vector<ArcChange> batch(cs.begin(), cs.end());
  for (int i = 0; i < layers(); ++i) {
    Layer& layer = layers_[i];
    if (batch.empty()) break;
    parallel_for(n_, exec_, [&](std::size_t s) { layer.sources[s]->apply(batch); });
    std::vector<ArcChange> next;
    const bool last = i + 1 == layers();
    for (VertexId s = 0; s < n_; ++s) {
      for (const EstimateChange& e : layer.sources[s]->changes()) {
        if (e.v == s) continue;
        if (last) {
          log_.push_back({s, e.v, e.old_value, e.new_value});
        } else {
          next.push_back(layers_[i + 1].matrix->set(s, e.v, e.new_value));
        }
      }
    }
    batch = std::move(next);
  }
}

double DenseIncrApsp::layer_estimate(int i, VertexId u, VertexId v) const {
  return layers_[i - 1].sources[u]->estimate(v);
}

double DenseIncrApsp::estimate(VertexId u, VertexId v) const {
  return layer_estimate(layers(), u, v);
}

std::uint64_t DenseIncrApsp::work() const {
  std::uint64_t total = 0;
  for (const Layer& layer : layers_) {
    for (const auto& s : layer.sources) total += s->work();
  }
  return total;
}

// --------------------------------------------------------------- sparse

SparseIncrApsp::Source::Source(const GraphView& g, const GraphView& rev,
                               VertexId u, std::size_t n)
    : s(n, u), r(n, u), sview(rev, s), rview(g, r) {}

int SparseIncrApsp::default_d(std::size_t n) {
  const double x = std::cbrt(static_cast<double>(n)) *
                   std::pow(std::log(std::max<double>(n, 2)), 4.0 / 3.0);
  int d = 2 * static_cast<int>(std::lround(x / 2));
  const int top = (static_cast<int>(n) - 1) / 2 * 2;
  return std::max(2, std::min(d, top));
}

SparseIncrApsp::SparseIncrApsp(const DynamicDigraph& g, int d, double eps,
                               bool weighted, Exec exec, HubRebuild rebuild)
    : g_(&g),
      rev_(g),
      n_(g.num_vertices()),
      d_(d),
      eps_(eps),
      weighted_(weighted),
      max_dist_(incremental_distance_bound(g, eps)),
      exec_(exec),
      rebuild_(rebuild),
      rng_(rebuild.seed) {
  if (d < 2 || d % 2 != 0 || static_cast<std::size_t>(d) >= n_) {
    throw Error(ErrorCode::kBadD, "d must be even with 2 <= d < n");
  }
  if (!(eps > 0)) throw Error(ErrorCode::kConfigError, "eps must be positive");
  if (!weighted_ && !g.is_unweighted()) {
    throw Error(ErrorCode::kWeightedGraph, "unweighted mode needs unit weights");
  }
  if (weighted_ && rebuild_.las_vegas) {
    throw Error(ErrorCode::kConfigError, "sampled hub rebuild is unweighted only");
  }
  const int p = approx_hub_exponent(n_);
  eps1_ = weighted_ ? eps / (4.0 * p + 8.0) : eps / 6.0;
  f_ = static_cast<std::size_t>(
      std::ceil(static_cast<double>(n_) / d * std::log(static_cast<double>(n_))));
  f_ = std::max<std::size_t>(f_, 1);
  const int far = std::max<int>(1, static_cast<int>(n_) - 1);

  if (!weighted_) {
    hub_depth_ = d_;
    from_es_.resize(n_);
    to_es_.resize(n_);
    parallel_for(2 * n_, exec_, [&](std::size_t j) {
      if (j < n_) {
        from_es_[j] = std::make_unique<EsTree>(*g_, j, d_ / 2);
      } else {
        to_es_[j - n_] = std::make_unique<EsTree>(rev_, j - n_, d_);
      }
    });
  } else {
    hub_depth_ = 2 * d_ * p;
    const int tree_h = std::min(3 * d_, far);
    const int bank_h = std::min(hub_depth_, far);
    from_hs_.resize(n_);
    to_hs_.resize(n_);
    bank_.resize(n_);
    parallel_for(3 * n_, exec_, [&](std::size_t j) {
      const VertexId v = j % n_;
      if (j < n_) {
        from_hs_[v] = std::make_unique<Hsssp>(*g_, v, tree_h, eps1_, max_dist_);
      } else if (j < 2 * n_) {
        to_hs_[v] = std::make_unique<Hsssp>(rev_, v, tree_h, eps1_, max_dist_);
      } else {
        bank_[v] = std::make_unique<Hsssp>(rev_, v, bank_h, eps1_, max_dist_);
      }
    });
  }
  hops_ = std::min(hub_depth_ + 1, far);

  recompute_hubs();
  sources_.resize(n_);
  for (VertexId u = 0; u < n_; ++u) {
    sources_[u] = std::make_unique<Source>(*g_, rev_, u, n_);
  }
  std::vector<std::vector<ArcChange>> unused(n_);
  build_hub_graph(unused);
  parallel_for(n_, exec_, [&](std::size_t u) {
    Source& s = *sources_[u];
    s.back.emplace(s.sview, static_cast<VertexId>(u), hops_, eps1_, max_dist_);
  });
  for (VertexId v = 0; v < n_; ++v) {
    for (VertexId x = 0; x < n_; ++x) {
      const double e = sources_[v]->back->estimate(x);
      if (x != v && e != kInf) sources_[x]->r.lower(v, e);
    }
  }
  parallel_for(n_, exec_, [&](std::size_t u) {
    Source& s = *sources_[u];
    s.fwd.emplace(s.rview, static_cast<VertexId>(u), hops_, eps1_, max_dist_);
  });
}

void SparseIncrApsp::recompute_hubs() {
  std::vector<RootedTree> trees;
  trees.reserve(2 * n_);
  HubSet h;
  if (!weighted_) {
    for (VertexId v = 0; v < n_; ++v) {
      trees.push_back(tree_of(*from_es_[v]));
      trees.push_back(truncated(*to_es_[v], d_ / 2));
    }
    if (!rebuild_.las_vegas) {
      h = hubs_from_exact_trees(trees, n_, d_ / 2);
    } else {
      std::vector<EtForest> forests;
      std::vector<VertexId> roots;
      for (const RootedTree& t : trees) {
        forests.push_back(forest_of(t, n_));
        roots.push_back(t.root);
      }
      auto lv = las_vegas_blocker(forests, roots, n_, d_ / 2, rebuild_.c, rng_);
      trials_ += lv.trials;
      h = {std::move(lv.set), d_, 1.0};
    }
  } else {
    for (VertexId v = 0; v < n_; ++v) {
      trees.push_back(tree_of(*from_hs_[v]));
      trees.push_back(tree_of(*to_hs_[v]));
    }
    h = hubs_from_approx_trees(trees, n_, d_, eps1_);
  }
  hubs_ = std::move(h.members);
  hub_ratio_ = h.ratio;
}

double SparseIncrApsp::a_weight(VertexId u, VertexId v) const {
  if (!weighted_) {
    const int level = to_es_[u]->level(v);
    return level == EsTree::kUnreached ? kInf : level;
  }
  return bank_[u]->estimate(v);
}

void SparseIncrApsp::add_slot(VertexId x) {
  if (slot_hub_.size() == a_->num_vertices()) {
    throw Error(ErrorCode::kConfigError, "hub graph capacity exhausted");
  }
  slot_of_[x] = static_cast<int>(slot_hub_.size());
  slot_hub_.push_back(x);
}

// Fresh slots, A and dense structure for the current hub set; the dense
// structure's initial estimates lower S.
void SparseIncrApsp::build_hub_graph(std::vector<std::vector<ArcChange>>& sbatch) {
  const std::size_t cap = std::min(n_, hubs_.size() + 2 * f_);
  slot_of_.assign(n_, -1);
  slot_hub_.clear();
  if (dense_) retired_work_ += dense_->work();
  a_ = std::make_unique<MatrixGraph>(cap);
  for (VertexId x : hubs_.members()) add_slot(x);
  for (std::size_t i = 0; i < slot_hub_.size(); ++i) {
    for (std::size_t j = 0; j < slot_hub_.size(); ++j) {
      if (i == j) continue;
      const double w = a_weight(slot_hub_[i], slot_hub_[j]);
      if (w != kInf) a_->set(i, j, w);
    }
  }
  dense_ = std::make_unique<DenseIncrApsp>(*a_, eps1_, max_dist_, exec_);
  std::vector<PairChange> initial;
  for (std::size_t i = 0; i < slot_hub_.size(); ++i) {
    for (std::size_t j = 0; j < slot_hub_.size(); ++j) {
      const double e = dense_->estimate(i, j);
      if (i != j && e != kInf) {
        initial.push_back({static_cast<VertexId>(i), static_cast<VertexId>(j), kInf, e});
      }
    }
  }
  push_dense_changes(initial, sbatch);
}

void SparseIncrApsp::push_dense_changes(
    std::span<const PairChange> changes,
    std::vector<std::vector<ArcChange>>& sbatch) {
  for (const PairChange& pc : changes) {
    const VertexId u = slot_hub_[pc.u];
    const VertexId v = slot_hub_[pc.v];
    if (auto ch = sources_[u]->s.lower(v, pc.new_value)) sbatch[u].push_back(*ch);
  }
}

double SparseIncrApsp::hub_estimate(VertexId u, VertexId v) const {
  if (slot_of_[u] < 0 || slot_of_[v] < 0) return kInf;
  if (u == v) return 0;
  return dense_->estimate(slot_of_[u], slot_of_[v]);
}

double SparseIncrApsp::rev_estimate(VertexId u, VertexId v) const {
  return sources_[u]->back->estimate(v);
}

double SparseIncrApsp::estimate(VertexId u, VertexId v) const {
  if (u == v) return 0;
  return sources_[u]->fwd->estimate(v);
}

void SparseIncrApsp::on_update(const ArcChange& c) {
  require_decrease(c);
  if (c.new_w == c.old_w) return;
  if (!weighted_ && c.new_w != 1.0) {
    throw Error(ErrorCode::kWeightedGraph, "unweighted mode needs unit weights");
  }
  const ArcChange rc = c.reversed();

  // Trees (and the weighted hub bank).
  std::vector<ArcChange> a_changes;
  if (!weighted_) {
    parallel_for(2 * n_, exec_, [&](std::size_t j) {
      if (j < n_) {
        from_es_[j]->apply(c);
      } else {
        to_es_[j - n_]->apply(rc);
      }
    });
  } else {
    parallel_for(3 * n_, exec_, [&](std::size_t j) {
      const std::size_t v = j % n_;
      if (j < n_) {
        from_hs_[v]->apply(c);
      } else if (j < 2 * n_) {
        to_hs_[v]->apply(rc);
      } else {
        bank_[v]->apply(rc);
      }
    });
  }

  std::vector<std::vector<ArcChange>> sbatch(n_);
  if (++phase_pos_ == f_) {
    phase_pos_ = 0;
    ++phases_;
    recompute_hubs();
    build_hub_graph(sbatch);
  } else {
    // Extend H by the endpoints, then refresh A from the trees.
    auto lower_a = [&](VertexId u, VertexId v) {
      const double w = a_weight(u, v);
      const int su = slot_of_[u], sv = slot_of_[v];
      if (w < a_->weight(su, sv)) a_changes.push_back(a_->set(su, sv, w));
    };
    std::vector<VertexId> fresh;
    for (VertexId x : {c.from, c.to}) {
      if (hubs_.insert(x)) {
        add_slot(x);
        fresh.push_back(x);
      }
    }
    for (VertexId u : slot_hub_) {
      if (!weighted_) {
        for (const TreeChange& ch : to_es_[u]->changes()) {
          if (ch.v != u && slot_of_[ch.v] >= 0) lower_a(u, ch.v);
        }
      } else {
        for (const EstimateChange& e : bank_[u]->changes()) {
          if (e.v != u && slot_of_[e.v] >= 0) lower_a(u, e.v);
        }
      }
    }
    for (VertexId x : fresh) {
      for (VertexId v : slot_hub_) {
        if (v == x) continue;
        lower_a(x, v);
        lower_a(v, x);
      }
    }
    if (!a_changes.empty()) {
      dense_->on_update(a_changes);
      push_dense_changes(dense_->changes(), sbatch);
    }
  }

  // D_u on rev(G) + S_u.
  for (auto& b : sbatch) b.insert(b.begin(), rc);
  parallel_for(n_, exec_, [&](std::size_t u) { sources_[u]->back->apply(sbatch[u]); });

  // R_x(x -> v) follows D_v's estimate of x.
  std::vector<std::vector<ArcChange>> rbatch(n_, std::vector<ArcChange>{c});
  for (VertexId v = 0; v < n_; ++v) {
    for (const EstimateChange& e : sources_[v]->back->changes()) {
      if (e.v == v) continue;
      if (auto ch = sources_[e.v]->r.lower(v, e.new_value)) rbatch[e.v].push_back(*ch);
    }
  }
  parallel_for(n_, exec_, [&](std::size_t u) { sources_[u]->fwd->apply(rbatch[u]); });
}

std::uint64_t SparseIncrApsp::work() const {
  std::uint64_t total = retired_work_ + dense_->work();
  for (const auto& t : from_es_) total += t->work();
  for (const auto& t : to_es_) total += t->work();
  for (const auto& t : from_hs_) total += t->work();
  for (const auto& t : to_hs_) total += t->work();
  for (const auto& t : bank_) total += t->work();
  for (const auto& s : sources_) total += s->back->work() + s->fwd->work();
  return total;
}

}  // namespace hubs
