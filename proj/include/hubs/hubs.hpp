#pragma once

#include <optional>
#include <span>
#include <vector>

#include "hubs/blockers.hpp"
#include "hubs/common.hpp"
#include "hubs/graph.hpp"

namespace hubs {

struct HubSet {
  VertexSet members;
  // Hop parameter the set is claimed valid for.
  int d = 0;
  // Length stretch of covered paths; 1 for exact hub sets.
  double ratio = 1.0;
};

// Whether the path (vertex sequence) splits into segments of at most d hops
// where every segment but the first starts in b. Greedy farthest-jump.
bool is_covered(std::span<const VertexId> path, const VertexSet& b, int d);

// Cuts a (b, d)-covered path with at least d hops into blocks of hop length
// in [d, 3d], every block but the first starting in b. Returns the block
// start indices (first is 0), or nullopt if the path is not covered.
std::optional<std::vector<std::size_t>> split_blocks(
    std::span<const VertexId> path, const VertexSet& b, int d);

// Exhaustive checks of the hub-set definitions; quadratic or worse, meant
// for verification only.
bool hub_oracle_exact(const GraphView& g, const VertexSet& h, int d);
bool hub_oracle_approx(const GraphView& g, const VertexSet& h, int d,
                       double ratio);

HubSet extend_on_insert(const HubSet& h, VertexId x, VertexId y);

// Blocker of exact depth-d trees from and to every vertex: a 2d-hub set.
HubSet hubs_from_exact_trees(std::span<const RootedTree> trees,
                             std::size_t n, int d);
// Blocker of depth-d trees from and to the members of a d-hub set: a
// 6d-hub set.
HubSet hubs_from_hub_trees(std::span<const RootedTree> trees, std::size_t n,
                           int d);
// Blocker with parameter d/2 of the d/2-decompositions of (1+eps)-approximate
// trees up to depth 3d from and to every vertex: a (1+eps)^p-approximate
// 2dp-hub set, p = ceil(log2 n) + 1. Throws OddD.
HubSet hubs_from_approx_trees(std::span<const RootedTree> trees,
                              std::size_t n, int d, double eps);

int approx_hub_exponent(std::size_t n);

}  // namespace hubs
