#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "hubs/common.hpp"
#include "hubs/graph.hpp"

namespace hubs {

// One vertex whose tree position changed during a single update.
struct TreeChange {
  VertexId v;
  VertexId old_parent;  // kNoVertex for none
  VertexId new_parent;
  int old_level;
  int new_level;
};

// Exact BFS tree from `source` truncated at depth d, over an unweighted view,
// maintained under either insertions or deletions. The caller mutates the
// underlying graph first and then reports the change.
class EsTree {
 public:
  static constexpr int kUnreached = std::numeric_limits<int>::max();

  // Throws WeightedGraph if any arc weight differs from 1.
  EsTree(const GraphView& g, VertexId source, int depth);

  VertexId source() const { return source_; }
  int depth_bound() const { return depth_; }
  std::size_t num_vertices() const { return level_.size(); }

  int level(VertexId v) const { return level_[v]; }
  double distance(VertexId v) const {
    return level_[v] == kUnreached ? kInf : level_[v];
  }
  bool reached(VertexId v) const { return level_[v] != kUnreached; }
  VertexId parent(VertexId v) const { return parent_[v]; }

  // Restores the tree after `c` was applied to the graph. Returns the
  // vertices whose parent or level changed.
  const std::vector<TreeChange>& apply(const ArcChange& c);
  const std::vector<TreeChange>& changes() const { return log_; }

  // Arc scans performed so far.
  std::uint64_t work() const { return work_; }

 private:
  void touch(VertexId v);
  void finish_log();
  void relax_from(VertexId start);
  void repair(VertexId start);

  const GraphView* g_;
  VertexId source_;
  int depth_;
  std::vector<int> level_;
  std::vector<VertexId> parent_;
  std::vector<TreeChange> log_;
  std::vector<std::uint32_t> touched_;  // index into log_ + 1, 0 if none
  std::vector<std::vector<VertexId>> buckets_;
  std::vector<char> queued_;
  std::uint64_t work_ = 0;
};

// Replays a change log onto a forest-like sink: all cuts first, then all
// links. Every intermediate state is then a subforest of the final tree, so
// no link can close a cycle regardless of order.
template <class Cut, class Link>
void replay_tree_changes(std::span<const TreeChange> changes, Cut&& cut,
                         Link&& link) {
  for (const TreeChange& c : changes) {
    if (c.old_parent != kNoVertex && c.old_parent != c.new_parent) cut(c.v);
  }
  for (const TreeChange& c : changes) {
    if (c.new_parent != kNoVertex && c.old_parent != c.new_parent) {
      link(c.v, c.new_parent);
    }
  }
}

struct EstimateChange {
  VertexId v;
  double old_value;
  double new_value;
};

// Approximate h-hop-bounded single-source distances. For every v,
//   delta(s, v) <= estimate(v) <= (1 + eps) * delta^h(s, v),
// maintained under weight decreases or weight increases (never mixed within
// one instance). Scale bucket k rounds weights up to multiples of
// eps * 2^k / h and keeps an exact (h+1)-layer table over the rounded graph,
// discarding values beyond 2^{k+1} (1 + eps).
class Hsssp {
 public:
  // max_dist bounds every finite distance the structure must report.
  Hsssp(const GraphView& g, VertexId source, int h, double eps,
        double max_dist);

  VertexId source() const { return source_; }
  int hops() const { return h_; }
  double eps() const { return eps_; }
  std::size_t num_vertices() const { return n_; }
  std::size_t num_buckets() const { return buckets_.size(); }

  double estimate(VertexId v) const { return est_[v]; }
  std::span<const double> estimates() const { return est_; }
  // Bucket realizing estimate(v); -1 if unreached.
  int winning_bucket(VertexId v) const { return best_k_[v]; }

  // Parent of v in the combined tree together with the arc weight, or
  // nullopt for the source and unreached vertices. Parents strictly
  // decrease the estimate, so following them always ends at the source.
  std::optional<std::pair<VertexId, double>> tree_parent(VertexId v) const;

  const std::vector<EstimateChange>& apply(const ArcChange& c);
  const std::vector<EstimateChange>& apply(std::span<const ArcChange> cs);
  const std::vector<EstimateChange>& changes() const { return log_; }

  // Edge relaxations performed so far.
  std::uint64_t work() const { return work_; }

 private:
  static constexpr std::int32_t kInfUnits =
      std::numeric_limits<std::int32_t>::max();
  static constexpr VertexId kStay = kNoVertex - 1;

  struct Bucket {
    double unit;
    std::vector<std::int32_t> d;   // (h+1) x n, layer-major
    std::vector<VertexId> choice;  // kStay, a predecessor, or kNoVertex
  };

  std::size_t at(int t, VertexId v) const {
    return static_cast<std::size_t>(t) * n_ + v;
  }
  std::int32_t units(const Bucket& b, double w) const;
  void build(Bucket& b);
  void apply_one(const ArcChange& c);
  void lower(Bucket& b, std::size_t k, const ArcChange& c, std::int32_t u);
  void raise(Bucket& b, std::size_t k, const ArcChange& c);
  std::pair<std::int32_t, VertexId> recompute(const Bucket& b, int t,
                                              VertexId v);
  void mark_final(std::size_t k, VertexId v);
  void refresh_estimates();

  const GraphView* g_;
  VertexId source_;
  int h_;
  double eps_;
  std::size_t n_;
  std::int32_t cap_units_;
  std::vector<Bucket> buckets_;
  std::vector<double> est_;
  std::vector<int> best_k_;
  std::vector<EstimateChange> log_;
  std::vector<VertexId> dirty_final_;
  std::vector<char> dirty_mark_;
  std::vector<std::vector<VertexId>> layer_work_;
  std::vector<char> layer_mark_;
  std::uint64_t work_ = 0;
};

}  // namespace hubs
