#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "hubs/common.hpp"
#include "hubs/graph.hpp"
#include "hubs/hubs.hpp"
#include "hubs/parallel.hpp"
#include "hubs/sssp.hpp"

namespace hubs {

struct PairChange {
  VertexId u;
  VertexId v;
  double old_value;
  double new_value;
};

// Approximate all-pairs distances under insertions and weight decreases.
// Layer 1 runs an h = 2 structure from every vertex on the observed graph;
// layer i > 1 runs them on the complete graph whose weights are layer i-1's
// estimates, so layer i approximates 2^i-hop distances. With
// k = ceil(log2 n) layers and eps_1 = eps / (4k),
//   delta(u, v) <= est_i(u, v) <= (1 + eps_1)^i * delta^{2^i}(u, v).
class DenseIncrApsp {
 public:
  // max_dist bounds every finite distance in g.
  DenseIncrApsp(const GraphView& g, double eps, double max_dist,
                Exec exec = Exec::kParallel);
  DenseIncrApsp(const DenseIncrApsp&) = delete;
  DenseIncrApsp& operator=(const DenseIncrApsp&) = delete;

  // Call after the changes were applied to the graph. Throws ModeViolation
  // for a change that lengthens an arc.
  void on_update(const ArcChange& c);
  void on_update(std::span<const ArcChange> cs);

  double estimate(VertexId u, VertexId v) const;
  // 1 <= i <= layers().
  double layer_estimate(int i, VertexId u, VertexId v) const;
  int layers() const { return static_cast<int>(layers_.size()); }
  double eps_layer() const { return eps_layer_; }
  std::size_t num_vertices() const { return n_; }
  // Final-layer estimates changed by the last update.
  const std::vector<PairChange>& changes() const { return log_; }
  std::uint64_t work() const;

 private:
  struct Layer {
    std::unique_ptr<MatrixGraph> matrix;  // null for layer 1
    std::vector<std::unique_ptr<Hsssp>> sources;
  };

  const GraphView* g_;
  std::size_t n_;
  double eps_layer_;
  double max_dist_;
  Exec exec_;
  std::vector<Layer> layers_;
  std::vector<PairChange> log_;
};

// Upper bound on finite distances used to size approximate structures:
// 2 (1 + eps) n W, with W the declared max weight or 1 when undeclared.
double incremental_distance_bound(const DynamicDigraph& g, double eps);

// (1+eps)-approximate all-pairs distances under insertions (and, weighted,
// weight decreases), built from hop-bounded structures and a hub set that
// is recomputed every f updates and extended by the endpoints of each
// update in between.
//
// Unweighted: BFS trees up to depth d/2 from every vertex in G and up to
// depth d in rev(G). H is a d-hub set; the hub graph A joins hubs u, v at
// rev distance <= d and a dense structure approximates A. S_u carries those
// estimates from u, D_u runs on rev(G) + S_u, R_u carries D_v's estimates
// of (v, u) as arcs u -> v, and D'_u on G + R_u gives the answers.
//
// Weighted: approximate trees up to depth 3d yield a (1+eps_1)^p-approximate
// D-hub set with D = 2dp, p = ceil(log2 n) + 1, and an extra bank of
// D-hop structures on rev(G) weighs the hub graph.
struct HubRebuild {
  // Sample verified candidate sets instead of the greedy blocker
  // (unweighted only).
  bool las_vegas = false;
  double c = 3.0;
  std::uint64_t seed = 1;
};

class SparseIncrApsp {
 public:
  // Throws BadD unless d is even and 2 <= d < n.
  SparseIncrApsp(const DynamicDigraph& g, int d, double eps, bool weighted,
                 Exec exec = Exec::kParallel, HubRebuild rebuild = {});
  SparseIncrApsp(const SparseIncrApsp&) = delete;
  SparseIncrApsp& operator=(const SparseIncrApsp&) = delete;

  // n^{1/3} (ln n)^{4/3} rounded to an even number in [2, n).
  static int default_d(std::size_t n);

  // Throws ModeViolation for a change that lengthens an arc.
  void on_update(const ArcChange& c);

  double estimate(VertexId u, VertexId v) const;

  int d() const { return d_; }
  bool weighted() const { return weighted_; }
  double eps_inner() const { return eps1_; }
  // Hop parameter of the hub set (d, or 2dp weighted) and its stretch.
  int hub_depth() const { return hub_depth_; }
  double hub_ratio() const { return hub_ratio_; }
  // Hop bound of D_u and D'_u.
  int hops() const { return hops_; }
  std::size_t phase_length() const { return f_; }
  std::size_t phase_position() const { return phase_pos_; }
  int phases_completed() const { return phases_; }
  // Candidate samples drawn by the Las Vegas rebuild so far.
  int blocker_trials() const { return trials_; }

  const VertexSet& hubs() const { return hubs_; }
  // A on slots; slot_of(v) is -1 for non-hubs.
  const MatrixGraph& hub_graph() const { return *a_; }
  int slot_of(VertexId v) const { return slot_of_[v]; }
  VertexId hub_at(int slot) const { return slot_hub_[slot]; }
  // Dense estimate between two hubs.
  double hub_estimate(VertexId u, VertexId v) const;

  const StarGraph& s_star(VertexId u) const { return sources_[u]->s; }
  const StarGraph& r_star(VertexId u) const { return sources_[u]->r; }
  // rev(G) + S_u and G + R_u.
  const GraphView& rev_shortcut_view(VertexId u) const { return sources_[u]->sview; }
  const GraphView& shortcut_view(VertexId u) const { return sources_[u]->rview; }
  // D_u's estimate of delta_rev(u, v).
  double rev_estimate(VertexId u, VertexId v) const;

  std::uint64_t work() const;

 private:
  struct Source {
    Source(const GraphView& g, const GraphView& rev, VertexId u, std::size_t n);
    StarGraph s, r;
    StarUnionView sview, rview;
    std::optional<Hsssp> back, fwd;  // D_u, D'_u
  };

  void recompute_hubs();
  void build_hub_graph(std::vector<std::vector<ArcChange>>& sbatch);
  void add_slot(VertexId x);
  double a_weight(VertexId u, VertexId v) const;
  void push_dense_changes(std::span<const PairChange> changes,
                          std::vector<std::vector<ArcChange>>& sbatch);

  const DynamicDigraph* g_;
  ReverseView rev_;
  std::size_t n_;
  int d_;
  double eps_;
  bool weighted_;
  double eps1_;
  int hub_depth_ = 0;
  double hub_ratio_ = 1.0;
  int hops_ = 0;
  double max_dist_;
  Exec exec_;
  std::size_t f_;
  std::size_t phase_pos_ = 0;
  int phases_ = 0;
  HubRebuild rebuild_;
  Rng rng_;
  int trials_ = 0;

  // Unweighted trees: from depth d/2, to depth d.
  std::vector<std::unique_ptr<EsTree>> from_es_, to_es_;
  // Weighted trees (h = 3d) and the D-hop bank on rev(G).
  std::vector<std::unique_ptr<Hsssp>> from_hs_, to_hs_, bank_;

  VertexSet hubs_;
  std::vector<int> slot_of_;
  std::vector<VertexId> slot_hub_;
  std::unique_ptr<MatrixGraph> a_;
  std::unique_ptr<DenseIncrApsp> dense_;
  std::uint64_t retired_work_ = 0;
  std::vector<std::unique_ptr<Source>> sources_;
};

}  // namespace hubs
