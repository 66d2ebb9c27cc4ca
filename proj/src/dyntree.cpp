#include "hubs/dyntree.hpp"

#include <algorithm>

namespace hubs {

EtForest::EtForest(std::size_t n, std::uint64_t seed)
    : t_(2 * n), parent_(n, kNoVertex) {
  Rng rng(seed);
  for (VertexId v = 0; v < n; ++v) {
    Node& o = t_[open(v)];
    Node& c = t_[close(v)];
    o.prio = rng();
    c.prio = rng();
    c.agg = kNeg;
    // Each singleton tour is open(v) close(v); hang the lower priority one
    // under the other.
    const std::uint32_t hi = o.prio >= c.prio ? open(v) : close(v);
    const std::uint32_t lo = hi ^ 1u;
    if (is_open(hi)) {
      t_[hi].right = lo;
    } else {
      t_[hi].left = lo;
    }
    t_[lo].up = hi;
    pull(hi);
  }
}

void EtForest::apply(std::uint32_t x, int delta) {
  if (x == kNil) return;
  Node& nd = t_[x];
  nd.val += delta;
  if (nd.agg != kNeg) nd.agg += delta;
  nd.lazy += delta;
}

void EtForest::push(std::uint32_t x) {
  Node& nd = t_[x];
  if (nd.lazy != 0) {
    apply(nd.left, nd.lazy);
    apply(nd.right, nd.lazy);
    nd.lazy = 0;
  }
}

void EtForest::pull(std::uint32_t x) {
  Node& nd = t_[x];
  nd.size = 1 + sz(nd.left) + sz(nd.right);
  int m = is_open(x) ? nd.val : kNeg;
  m = std::max({m, agg(nd.left), agg(nd.right)});
  nd.agg = m;
}

std::uint32_t EtForest::treap_root(std::uint32_t x) const {
  while (t_[x].up != kNil) x = t_[x].up;
  return x;
}

std::uint32_t EtForest::position(std::uint32_t x) const {
  std::uint32_t pos = sz(t_[x].left);
  while (t_[x].up != kNil) {
    const std::uint32_t p = t_[x].up;
    if (t_[p].right == x) pos += sz(t_[p].left) + 1;
    x = p;
  }
  return pos;
}

void EtForest::split(std::uint32_t x, std::uint32_t k, std::uint32_t& l,
                     std::uint32_t& r) {
  if (x == kNil) {
    l = r = kNil;
    return;
  }
  ++work_;
  push(x);
  if (sz(t_[x].left) < k) {
    std::uint32_t a, b;
    split(t_[x].right, k - sz(t_[x].left) - 1, a, b);
    t_[x].right = a;
    if (a != kNil) t_[a].up = x;
    if (b != kNil) t_[b].up = kNil;
    pull(x);
    l = x;
    r = b;
  } else {
    std::uint32_t a, b;
    split(t_[x].left, k, a, b);
    t_[x].left = b;
    if (b != kNil) t_[b].up = x;
    if (a != kNil) t_[a].up = kNil;
    pull(x);
    l = a;
    r = x;
  }
  t_[x].up = kNil;
}

std::uint32_t EtForest::merge(std::uint32_t l, std::uint32_t r) {
  if (l == kNil) return r;
  if (r == kNil) return l;
  ++work_;
  if (t_[l].prio >= t_[r].prio) {
    push(l);
    const std::uint32_t m = merge(t_[l].right, r);
    t_[l].right = m;
    t_[m].up = l;
    pull(l);
    t_[l].up = kNil;
    return l;
  }
  push(r);
  const std::uint32_t m = merge(l, t_[r].left);
  t_[r].left = m;
  t_[m].up = r;
  pull(r);
  t_[r].up = kNil;
  return r;
}

std::optional<VertexId> EtForest::parent(VertexId v) const {
  if (parent_[v] == kNoVertex) return std::nullopt;
  return parent_[v];
}

int EtForest::val(VertexId v) const {
  std::uint32_t x = open(v);
  int value = t_[x].val;
  for (x = t_[x].up; x != kNil; x = t_[x].up) value += t_[x].lazy;
  return value;
}

int EtForest::depth(VertexId v) const { return t_[treap_root(open(v))].agg; }

VertexId EtForest::find_root(VertexId v) const {
  std::uint32_t x = treap_root(open(v));
  // The tour of a tree starts with the root's open token.
  while (t_[x].left != kNil) x = t_[x].left;
  return x / 2;
}

bool EtForest::same_tree(VertexId u, VertexId v) const {
  return treap_root(open(u)) == treap_root(open(v));
}

std::size_t EtForest::tree_size(VertexId v) const {
  return t_[treap_root(open(v))].size / 2;
}

void EtForest::link(VertexId u, VertexId v) {
  if (parent_[u] != kNoVertex) {
    throw Error(ErrorCode::kNotARoot, "link source " + std::to_string(u));
  }
  const std::uint32_t tu = treap_root(open(u));
  const std::uint32_t tv = treap_root(open(v));
  if (tu == tv) throw Error(ErrorCode::kSameTree, "link would close a cycle");

  apply(tu, val(v) + 1);
  std::uint32_t l, r;
  split(tv, position(close(v)), l, r);
  merge(merge(l, tu), r);
  parent_[u] = v;
}

void EtForest::cut(VertexId v) {
  if (parent_[v] == kNoVertex) {
    throw Error(ErrorCode::kIsRoot, "cut of root " + std::to_string(v));
  }
  const int y = val(v);
  const std::uint32_t a = position(open(v));
  const std::uint32_t b = position(close(v));
  const std::uint32_t root = treap_root(open(v));

  std::uint32_t left, mid, right, rest;
  split(root, a, left, rest);
  split(rest, b - a + 1, mid, right);
  apply(mid, -y);
  merge(left, right);
  parent_[v] = kNoVertex;
}

}  // namespace hubs
