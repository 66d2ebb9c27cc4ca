#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "hubs/common.hpp"
#include "hubs/dyntree.hpp"

namespace hubs {

class EsTree;
class Hsssp;

// Rooted out-tree over a subset of [0, n), as (child, parent) pairs.
struct RootedTree {
  VertexId root = kNoVertex;
  std::vector<std::pair<VertexId, VertexId>> edges;

  std::size_t size() const { return edges.size() + (root == kNoVertex ? 0 : 1); }
};

// parent[v] == kNoVertex marks both the root and vertices outside the tree.
RootedTree tree_from_parents(VertexId root, std::span<const VertexId> parent);
RootedTree tree_of(const EsTree& t);
// Combined approximate tree of an h-SSSP structure.
RootedTree tree_of(const Hsssp& s);

// Hop depth of the deepest vertex.
int tree_depth(const RootedTree& t);

// King's greedy: repeatedly takes the vertex with the most depth-d
// descendants over all trees (ties to the lowest id) and removes its
// subtrees. Throws DepthExceeded if a tree is deeper than d.
VertexSet greedy_blocker(std::span<const RootedTree> trees, std::size_t n,
                         int d);

// Maximal subtrees of depth <= d rooted at non-leaf vertices whose depth is
// a multiple of d. Cut vertices appear in two pieces.
std::vector<RootedTree> decompose_depth(const RootedTree& tree, int d);

// Size min(ceil(c * n/d * ln n), n).
std::size_t candidate_size(std::size_t n, int d, double c);
VertexSet sample_candidate(std::size_t n, int d, double c, Rng& rng);

// True iff B hits every depth-d vertex (or one of its ancestors) of the
// tree rooted at `root` in `forest`. Cuts every member of B, reads the depth
// and relinks, leaving parents and depths as they were.
bool verify_blocker(EtForest& forest, VertexId root, const VertexSet& b,
                    int d);
bool verify_blocker(std::span<EtForest> forests,
                    std::span<const VertexId> roots, const VertexSet& b,
                    int d);

EtForest forest_of(const RootedTree& t, std::size_t n);

struct LasVegasBlocker {
  VertexSet set;
  int trials = 0;
};

inline constexpr int kDefaultTrialCap = 64;

// Samples candidates until one verifies. Throws TrialCapExceeded after
// `cap` failures.
LasVegasBlocker las_vegas_blocker(std::span<EtForest> forests,
                                  std::span<const VertexId> roots,
                                  std::size_t n, int d, double c, Rng& rng,
                                  int cap = kDefaultTrialCap);

// Tracks whether a fixed B stays a (T, d)-blocker while T changes by cuts
// and links. Internally T is split at members of B, so B vertices only ever
// root pieces; B blocks T iff every piece rooted outside B is shallower
// than d.
class BlockerMonitor {
 public:
  BlockerMonitor(std::size_t n, VertexSet b, int d);

  // v loses its parent in T.
  void on_cut(VertexId v);
  // r, a root of T's forest, becomes a child of v.
  void on_link(VertexId r, VertexId v);

  bool is_blocker() const { return bad_count_ == 0; }
  const VertexSet& members() const { return b_; }
  int d() const { return d_; }

 private:
  void recheck(VertexId piece_root);
  void set_bad(VertexId v, bool bad);

  VertexSet b_;
  int d_;
  EtForest pieces_;
  std::vector<char> bad_;
  std::size_t bad_count_ = 0;
};

}  // namespace hubs
