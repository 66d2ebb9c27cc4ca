#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hubs/common.hpp"

namespace hubs {

// Rooted dynamic forest over [0, n). Each tree is stored as its Euler tour
// (an open and a close token per vertex) in a treap keyed by position. Open
// tokens carry val(v), the depth of v inside its tree; a subtree is a
// contiguous run of the tour, so link/cut shift depths with one range add.
class EtForest {
 public:
  explicit EtForest(std::size_t n = 0, std::uint64_t seed = 0x5eed);

  std::size_t size() const { return parent_.size(); }

  std::optional<VertexId> parent(VertexId v) const;
  bool is_root(VertexId v) const { return parent_[v] == kNoVertex; }

  // Makes u (a tree root) a child of v. Throws NotARoot / SameTree.
  void link(VertexId u, VertexId v);
  // Detaches the subtree of v from its parent. Throws IsRoot.
  void cut(VertexId v);

  // Depth of v inside its tree.
  int val(VertexId v) const;
  // Depth of the whole tree containing v: max val over the tree.
  int depth(VertexId v) const;
  VertexId find_root(VertexId v) const;
  bool same_tree(VertexId u, VertexId v) const;
  std::size_t tree_size(VertexId v) const;

  // Number of treap split/merge steps performed so far.
  std::uint64_t work() const { return work_; }

 private:
  static constexpr std::uint32_t kNil = 0xffffffffu;
  static constexpr int kNeg = -(1 << 29);

  struct Node {
    std::uint32_t left = kNil;
    std::uint32_t right = kNil;
    std::uint32_t up = kNil;
    std::uint32_t size = 1;
    std::uint64_t prio = 0;
    int val = 0;   // exact value once ancestors' lazies are added
    int agg = 0;   // max val over open tokens in this treap subtree
    int lazy = 0;  // pending add for both children
  };

  static std::uint32_t open(VertexId v) { return 2 * v; }
  static std::uint32_t close(VertexId v) { return 2 * v + 1; }
  static bool is_open(std::uint32_t x) { return (x & 1u) == 0; }

  std::uint32_t sz(std::uint32_t x) const { return x == kNil ? 0 : t_[x].size; }
  int agg(std::uint32_t x) const { return x == kNil ? kNeg : t_[x].agg; }
  void apply(std::uint32_t x, int delta);
  void push(std::uint32_t x);
  void pull(std::uint32_t x);
  std::uint32_t treap_root(std::uint32_t x) const;
  std::uint32_t position(std::uint32_t x) const;
  // Splits into [0, k) and [k, ..).
  void split(std::uint32_t x, std::uint32_t k, std::uint32_t& l,
             std::uint32_t& r);
  std::uint32_t merge(std::uint32_t l, std::uint32_t r);

  std::vector<Node> t_;
  std::vector<VertexId> parent_;
  std::uint64_t work_ = 0;
};

}  // namespace hubs
