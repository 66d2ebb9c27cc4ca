#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "hubs/blockers.hpp"
#include "hubs/common.hpp"
#include "hubs/graph.hpp"
#include "hubs/parallel.hpp"
#include "hubs/sssp.hpp"

namespace hubs {

inline constexpr double kDefaultZ = 4.0;

// Nested sampled sets A_0 = V, A_1, ..., A_q with hop parameters d_0..d_q.
struct HubLevels {
  std::size_t n = 0;
  double z = kDefaultZ;
  std::vector<std::vector<VertexId>> sets;
  std::vector<int> d;

  int q() const { return static_cast<int>(sets.size()) - 1; }
  VertexSet set(int i) const { return VertexSet(n, sets[i]); }
};

// Smallest q with 6^q >= n.
int hub_level_count(std::size_t n);

// Target size of A_i: n for i = 0, else 6^(q-i).
std::size_t hub_level_size(std::size_t n, int i);

// d_i = floor(z * n / a_{i+1} * ceil(ln n)) with a_{q+1} = 1, clamped to
// [1, n-1], and raised to at least 6 d_{i-1} (still capped at n-1) so a set
// blocking depth-d_{i-1} trees is always a d_i-hub set.
std::vector<int> hub_level_depths(std::size_t n, double z);

// Prefixes of one uniform permutation of V.
HubLevels sample_hub_levels(std::size_t n, double z, Rng& rng);

// Watches whether every A_i (i >= 1) keeps blocking the depth-d_{i-1} BFS
// trees from and to each vertex of A_{i-1}. While alarm() is false, each A_i
// is a d_i-hub set of both G and rev(G). The graph must be unweighted and
// must outlive the family.
class HubFamily {
 public:
  HubFamily(const DynamicDigraph& g, HubLevels levels,
            Exec exec = Exec::kParallel);
  HubFamily(const HubFamily&) = delete;
  HubFamily& operator=(const HubFamily&) = delete;

  // Call after `c` was applied to the graph.
  void on_update(const ArcChange& c);

  bool alarm() const;
  // Levels i >= 1 whose set currently fails to block.
  std::vector<int> failing_levels() const;

  const HubLevels& levels() const { return levels_; }
  std::size_t tree_count() const;
  std::uint64_t work() const;

  // Test hook: level i's monitors switch to `members` as their blocker
  // candidate. The trees and the recorded levels stay as they were.
  void debug_override_level(int i, std::span<const VertexId> members);

 private:
  struct Watched {
    EsTree tree;
    BlockerMonitor monitor;
  };
  struct Level {
    std::vector<std::unique_ptr<Watched>> from;
    std::vector<std::unique_ptr<Watched>> to;
  };

  void attach_monitors(Level& level, const VertexSet& b, int d);

  const DynamicDigraph* g_;
  ReverseView rev_;
  HubLevels levels_;
  Exec exec_;
  // Index i - 1 holds level i.
  std::vector<Level> banks_;
};

}  // namespace hubs
