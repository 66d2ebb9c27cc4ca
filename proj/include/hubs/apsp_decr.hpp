#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "hubs/common.hpp"
#include "hubs/graph.hpp"
#include "hubs/hub_family.hpp"
#include "hubs/parallel.hpp"
#include "hubs/sssp.hpp"

namespace hubs {

// Exact distances in an unweighted graph under deletions, given hub levels.
// Level i keeps BFS trees up to depth t_{i+1} from and to every a in A_i and
//   est_i(u, v) = min over a in A_i of dist(u, a) + dist(a, v)
// read off those trees; est_i equals the distance whenever it lies in
// [t_i + 1, t_{i+1}] and A_i is a d_i-hub set. Each entry remembers the hub
// realizing it and is recomputed when one of that hub's two labels moves.
class ExactDecrApsp {
 public:
  // Throws WeightedGraph for weighted input.
  ExactDecrApsp(const DynamicDigraph& g, const HubLevels& levels,
                Exec exec = Exec::kParallel);
  ExactDecrApsp(const ExactDecrApsp&) = delete;
  ExactDecrApsp& operator=(const ExactDecrApsp&) = delete;

  // Call after `c` was applied to the graph. Throws ModeViolation for a
  // change that shortens an arc.
  void on_update(const ArcChange& c);

  double distance(VertexId u, VertexId v) const;
  double level_estimate(int i, VertexId u, VertexId v) const;
  int levels() const { return static_cast<int>(levels_.size()); }
  // t_0 .. t_{q+1}.
  int threshold(int i) const { return thresholds_[i]; }
  std::uint64_t work() const;

 private:
  static constexpr std::int32_t kFar = std::numeric_limits<std::int32_t>::max();

  struct Level {
    std::vector<VertexId> hubs;
    std::vector<std::unique_ptr<EsTree>> from;
    std::vector<std::unique_ptr<EsTree>> to;
    std::vector<std::int32_t> est;      // n x n
    std::vector<std::uint32_t> witness;  // index into hubs
  };

  void recompute(Level& level, VertexId u, VertexId v);

  const DynamicDigraph* g_;
  ReverseView rev_;
  std::size_t n_;
  Exec exec_;
  std::vector<int> thresholds_;
  std::vector<Level> levels_;
  std::uint64_t sweeps_ = 0;
};

// (1+eps)-approximate distances under deletions and weight increases, given
// hub levels. For u in A_i the level-i structures are h-SSSP instances from u
// on G + S_{i,u} and on rev(G) + S'_{i,u}, with h = d_{i+1} + 1, where the
// stars carry level i+1 estimates between u and A_{i+1}. The top level runs
// with h = n - 1 and no star.
class ApproxDecrApsp {
 public:
  ApproxDecrApsp(const DynamicDigraph& g, const HubLevels& levels, double eps,
                 Exec exec = Exec::kParallel);
  ApproxDecrApsp(const ApproxDecrApsp&) = delete;
  ApproxDecrApsp& operator=(const ApproxDecrApsp&) = delete;

  // Throws ModeViolation for a change that shortens an arc.
  void on_update(const ArcChange& c);

  double estimate(VertexId u, VertexId v) const;
  // Defined when u or v is in A_i; kInf otherwise.
  double level_estimate(int i, VertexId u, VertexId v) const;
  int levels() const { return static_cast<int>(levels_.size()); }
  int hops(int i) const { return levels_[i].h; }
  double eps_prime() const { return eps_prime_; }
  // The graph the level-i forward structure from u runs on.
  const GraphView& forward_view(int i, VertexId u) const;
  std::uint64_t work() const;

 private:
  struct Source {
    Source(const GraphView& fwd_base, const GraphView& bwd_base, VertexId u,
           std::size_t n);
    StarGraph fstar, bstar;
    StarUnionView fview, bview;
    std::optional<Hsssp> fwd, bwd;
  };
  struct Level {
    int h = 0;
    std::vector<VertexId> members;
    std::vector<std::int32_t> index;  // vertex -> position in members, or -1
    std::vector<std::unique_ptr<Source>> sources;
  };

  const DynamicDigraph* g_;
  ReverseView rev_;
  std::size_t n_;
  double eps_;
  double eps_prime_;
  double max_dist_;
  Exec exec_;
  std::vector<Level> levels_;
};

enum class DecrInner { kExact, kApprox };

// Runs a hub family monitor next to a decremental pipeline and rebuilds both
// from a fresh sample whenever the monitor raises its alarm, so answers
// never rest on stale hubs. Unweighted graphs only.
class LasVegasDecr {
 public:
  LasVegasDecr(const DynamicDigraph& g, DecrInner inner, double eps, double z,
               std::uint64_t seed, Exec exec = Exec::kParallel);

  void on_update(const ArcChange& c);
  double estimate(VertexId u, VertexId v) const;

  // Rebuilds caused by alarms, including any at construction.
  int restarts() const { return restarts_; }
  const HubFamily& family() const { return *family_; }
  // Monitor plus current inner pipeline.
  std::uint64_t work() const;

  // Test hook: installs `levels` as if freshly sampled, then restarts if the
  // monitor rejects them.
  void inject_levels(HubLevels levels);

  static constexpr int kMaxConsecutiveRestarts = 64;

 private:
  void build(HubLevels levels);
  void settle();

  const DynamicDigraph* g_;
  DecrInner inner_;
  double eps_;
  double z_;
  Exec exec_;
  Rng rng_;
  int restarts_ = 0;
  std::unique_ptr<HubFamily> family_;
  std::unique_ptr<ExactDecrApsp> exact_;
  std::unique_ptr<ApproxDecrApsp> approx_;
};

}  // namespace hubs
