#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "hubs/common.hpp"

namespace hubs {

// An adjacency entry. In out-lists `to` is the head, in in-lists it is the
// tail of the edge.
struct Arc {
  VertexId to;
  double w;
};

// Adjacency of one vertex in a composed view: at most two contiguous runs.
// Arcs of infinite weight may appear and must be skipped by consumers.
struct ArcSpans {
  std::span<const Arc> first;
  std::span<const Arc> second;

  template <class F>
  void for_each(F&& f) const {
    for (const Arc& a : first) {
      if (a.w != kInf) f(a);
    }
    for (const Arc& a : second) {
      if (a.w != kInf) f(a);
    }
  }
};

// Read-only weighted digraph as seen by single-source structures.
class GraphView {
 public:
  virtual ~GraphView() = default;
  virtual std::size_t num_vertices() const = 0;
  virtual ArcSpans out_arcs(VertexId v) const = 0;
  virtual ArcSpans in_arcs(VertexId v) const = 0;

  // Minimum weight over the (possibly parallel) arcs from u to v.
  double arc_weight(VertexId u, VertexId v) const;
};

// A weight change of a single arc in some view's coordinates. Insertion is
// old_w == kInf, deletion is new_w == kInf.
struct ArcChange {
  VertexId from;
  VertexId to;
  double old_w;
  double new_w;

  ArcChange reversed() const { return {to, from, old_w, new_w}; }
  bool is_decrease() const { return new_w < old_w; }
};

enum class Mode { kIncremental, kDecremental };

const char* to_string(Mode mode);

struct EdgeWeight {
  double value = 1.0;
  // Set when the value is exactly (1+eps')^exponent in a restricted stream.
  std::optional<int> exponent;

  bool restricted() const { return exponent.has_value(); }
  friend bool operator==(const EdgeWeight&, const EdgeWeight&) = default;
};

enum class OpKind { kInsert, kDelete, kSetWeight };

struct UpdateOp {
  OpKind kind = OpKind::kInsert;
  VertexId u = 0;
  VertexId v = 0;
  EdgeWeight w;

  static UpdateOp insert(VertexId u, VertexId v, double w = 1.0) {
    return {OpKind::kInsert, u, v, {w, std::nullopt}};
  }
  static UpdateOp remove(VertexId u, VertexId v) {
    return {OpKind::kDelete, u, v, {}};
  }
  static UpdateOp set_weight(VertexId u, VertexId v, double w) {
    return {OpKind::kSetWeight, u, v, {w, std::nullopt}};
  }

  friend bool operator==(const UpdateOp&, const UpdateOp&) = default;
};

struct Edge {
  VertexId u;
  VertexId v;
  double w;
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Directed graph with positive weights under a partially dynamic update
// stream. No parallel edges, no self-loops.
class DynamicDigraph final : public GraphView {
 public:
  // max_weight bounds every weight; kInf disables the upper check.
  DynamicDigraph(std::size_t n, Mode mode, double max_weight = kInf);

  // Builds the starting graph of a stream. Not counted as updates and not
  // subject to the mode check.
  static DynamicDigraph from_edges(std::size_t n, Mode mode,
                                   std::span<const Edge> edges,
                                   double max_weight = kInf);

  std::size_t num_vertices() const override { return out_.size(); }
  ArcSpans out_arcs(VertexId v) const override { return {out_[v], {}}; }
  ArcSpans in_arcs(VertexId v) const override { return {in_[v], {}}; }

  Mode mode() const { return mode_; }
  double max_weight() const { return max_weight_; }
  std::size_t num_edges() const { return slots_.size(); }
  std::uint64_t update_count() const { return updates_; }

  bool has_edge(VertexId u, VertexId v) const;
  // kInf when absent.
  double weight(VertexId u, VertexId v) const;
  bool is_unweighted() const;
  std::vector<Edge> edges() const;

  // Applies a mode-legal update. Returns whether the graph changed; the
  // change itself is then available through last_change().
  bool apply_update(const UpdateOp& op);
  const ArcChange& last_change() const { return last_change_; }

  // Mode-free edge insertion/weight set used during construction.
  void add_initial_edge(VertexId u, VertexId v, double w);

  // Consistency audit of adjacency lists, index and weight bounds. Throws
  // std::logic_error describing the first violation.
  void audit() const;

 private:
  struct Slot {
    std::uint32_t out_pos;
    std::uint32_t in_pos;
  };

  std::uint64_t key(VertexId u, VertexId v) const {
    return static_cast<std::uint64_t>(u) * out_.size() + v;
  }
  void check_endpoints(VertexId u, VertexId v) const;
  void check_weight(double w) const;
  void insert_edge(VertexId u, VertexId v, double w);
  void erase_edge(VertexId u, VertexId v);
  void set_edge_weight(VertexId u, VertexId v, double w);

  Mode mode_;
  double max_weight_;
  std::vector<std::vector<Arc>> out_;
  std::vector<std::vector<Arc>> in_;
  std::unordered_map<std::uint64_t, Slot> slots_;
  std::uint64_t updates_ = 0;
  ArcChange last_change_{0, 0, kInf, kInf};
};

// rev(G): same vertices, every edge reversed, weights preserved. Shares
// state with the underlying graph.
class ReverseView final : public GraphView {
 public:
  explicit ReverseView(const GraphView& g) : g_(&g) {}
  std::size_t num_vertices() const override { return g_->num_vertices(); }
  ArcSpans out_arcs(VertexId v) const override { return g_->in_arcs(v); }
  ArcSpans in_arcs(VertexId v) const override { return g_->out_arcs(v); }

 private:
  const GraphView* g_;
};

inline ReverseView reverse_view(const GraphView& g) { return ReverseView(g); }

// A single-source star {center -> v : v in V}; every weight starts at kInf.
class StarGraph {
 public:
  StarGraph(std::size_t n, VertexId center);

  VertexId center() const { return center_; }
  double weight(VertexId v) const { return out_[v].w; }
  // Sets the weight and returns the change in (center, v) coordinates.
  ArcChange set(VertexId v, double w);
  // Lowers the weight to min(current, w); nullopt if nothing changed.
  std::optional<ArcChange> lower(VertexId v, double w);

  std::span<const Arc> out() const { return out_; }
  std::span<const Arc> in(VertexId v) const { return {&in_[v], 1}; }

 private:
  VertexId center_;
  std::vector<Arc> out_;
  std::vector<Arc> in_;
};

// base ∪ star, weights combined by taking the minimum over parallel arcs.
class StarUnionView final : public GraphView {
 public:
  StarUnionView(const GraphView& base, const StarGraph& star)
      : base_(&base), star_(&star) {}
  std::size_t num_vertices() const override { return base_->num_vertices(); }
  ArcSpans out_arcs(VertexId v) const override;
  ArcSpans in_arcs(VertexId v) const override;

 private:
  const GraphView* base_;
  const StarGraph* star_;
};

// Complete digraph with an explicit n x n weight matrix (diagonal unused).
class MatrixGraph final : public GraphView {
 public:
  explicit MatrixGraph(std::size_t n);
  std::size_t num_vertices() const override { return n_; }
  ArcSpans out_arcs(VertexId v) const override {
    return {{out_.data() + v * n_, n_}, {}};
  }
  ArcSpans in_arcs(VertexId v) const override {
    return {{in_.data() + v * n_, n_}, {}};
  }
  double weight(VertexId u, VertexId v) const { return out_[u * n_ + v].w; }
  ArcChange set(VertexId u, VertexId v, double w);

 private:
  std::size_t n_;
  std::vector<Arc> out_;
  std::vector<Arc> in_;
};

struct UpdateStream {
  Mode mode = Mode::kIncremental;
  std::size_t n = 0;
  double max_weight = 1.0;
  // Starting graph; only meaningful in decremental mode.
  std::vector<Edge> initial;
  std::vector<UpdateOp> ops;

  DynamicDigraph initial_graph() const;
};

// Replaces every weight by the smallest power of (1+eps/4) that is at least
// the weight and drops updates that no longer change the rounded graph.
UpdateStream round_weights_restricted(const UpdateStream& stream, double eps);

// Smallest e >= 0 with base^e >= x (x >= 1).
int restricted_exponent(double x, double base);

// Text format:
//   # mode=incremental|decremental n=<n> W=<W>
//   i u v w | d u v | w u v neww
// In decremental streams the leading `i` lines describe the starting graph.
UpdateStream parse_stream(std::istream& in);
UpdateStream read_stream_file(const std::string& path);
void write_stream(std::ostream& out, const UpdateStream& stream);
std::string format_weight(double w);

}  // namespace hubs
