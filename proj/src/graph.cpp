#include "hubs/graph.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace hubs {

double GraphView::arc_weight(VertexId u, VertexId v) const {
  double best = kInf;
  out_arcs(u).for_each([&](const Arc& a) {
    if (a.to == v && a.w < best) best = a.w;
  });
  return best;
}

const char* to_string(Mode mode) {
  return mode == Mode::kIncremental ? "incremental" : "decremental";
}

DynamicDigraph::DynamicDigraph(std::size_t n, Mode mode, double max_weight)
    : mode_(mode), max_weight_(max_weight), out_(n), in_(n) {}

DynamicDigraph DynamicDigraph::from_edges(std::size_t n, Mode mode,
                                          std::span<const Edge> edges,
                                          double max_weight) {
  DynamicDigraph g(n, mode, max_weight);
  for (const Edge& e : edges) g.add_initial_edge(e.u, e.v, e.w);
  return g;
}

void DynamicDigraph::check_endpoints(VertexId u, VertexId v) const {
  if (u >= out_.size() || v >= out_.size()) {
    throw Error(ErrorCode::kVertexOutOfRange,
                "edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
  }
  if (u == v) throw Error(ErrorCode::kSelfLoop, "vertex " + std::to_string(u));
}

void DynamicDigraph::check_weight(double w) const {
  if (!(w >= 1.0) || w > max_weight_ || w == kInf) {
    throw Error(ErrorCode::kInvalidWeight, "weight " + format_weight(w));
  }
}

bool DynamicDigraph::has_edge(VertexId u, VertexId v) const {
  if (u >= out_.size() || v >= out_.size()) return false;
  return slots_.count(key(u, v)) != 0;
}

double DynamicDigraph::weight(VertexId u, VertexId v) const {
  if (u >= out_.size() || v >= out_.size()) return kInf;
  auto it = slots_.find(key(u, v));
  return it == slots_.end() ? kInf : out_[u][it->second.out_pos].w;
}

bool DynamicDigraph::is_unweighted() const {
  for (const auto& arcs : out_) {
    for (const Arc& a : arcs) {
      if (a.w != 1.0) return false;
    }
  }
  return true;
}

std::vector<Edge> DynamicDigraph::edges() const {
  std::vector<Edge> out;
  out.reserve(slots_.size());
  for (VertexId u = 0; u < out_.size(); ++u) {
    for (const Arc& a : out_[u]) out.push_back({u, a.to, a.w});
  }
  return out;
}

void DynamicDigraph::insert_edge(VertexId u, VertexId v, double w) {
  Slot s{static_cast<std::uint32_t>(out_[u].size()),
         static_cast<std::uint32_t>(in_[v].size())};
  out_[u].push_back({v, w});
  in_[v].push_back({u, w});
  slots_.emplace(key(u, v), s);
}

void DynamicDigraph::erase_edge(VertexId u, VertexId v) {
  auto it = slots_.find(key(u, v));
  const Slot s = it->second;
  slots_.erase(it);

  auto& out = out_[u];
  if (s.out_pos + 1 != out.size()) {
    out[s.out_pos] = out.back();
    slots_[key(u, out[s.out_pos].to)].out_pos = s.out_pos;
  }
  out.pop_back();

  auto& in = in_[v];
  if (s.in_pos + 1 != in.size()) {
    in[s.in_pos] = in.back();
    slots_[key(in[s.in_pos].to, v)].in_pos = s.in_pos;
  }
  in.pop_back();
}

void DynamicDigraph::set_edge_weight(VertexId u, VertexId v, double w) {
  const Slot& s = slots_.at(key(u, v));
  out_[u][s.out_pos].w = w;
  in_[v][s.in_pos].w = w;
}

void DynamicDigraph::add_initial_edge(VertexId u, VertexId v, double w) {
  check_endpoints(u, v);
  check_weight(w);
  if (has_edge(u, v)) {
    set_edge_weight(u, v, w);
  } else {
    insert_edge(u, v, w);
  }
}

bool DynamicDigraph::apply_update(const UpdateOp& op) {
  const VertexId u = op.u;
  const VertexId v = op.v;
  check_endpoints(u, v);
  const double cur = weight(u, v);
  const bool incremental = mode_ == Mode::kIncremental;

  double next = kInf;
  switch (op.kind) {
    case OpKind::kInsert:
      if (!incremental) {
        throw Error(ErrorCode::kModeViolation, "insert in decremental mode");
      }
      check_weight(op.w.value);
      next = op.w.value;
      break;
    case OpKind::kDelete:
      if (incremental) {
        throw Error(ErrorCode::kModeViolation, "delete in incremental mode");
      }
      if (cur == kInf) throw Error(ErrorCode::kUnknownEdge, "delete of absent edge");
      next = kInf;
      break;
    case OpKind::kSetWeight:
      if (cur == kInf) throw Error(ErrorCode::kUnknownEdge, "weight set on absent edge");
      check_weight(op.w.value);
      next = op.w.value;
      break;
  }

  if (next == cur) return false;
  if (incremental ? next > cur : next < cur) {
    throw Error(ErrorCode::kModeViolation,
                std::string("weight change against ") + to_string(mode_) +
                    " mode");
  }

  if (cur == kInf) {
    insert_edge(u, v, next);
  } else if (next == kInf) {
    erase_edge(u, v);
  } else {
    set_edge_weight(u, v, next);
  }
  ++updates_;
  last_change_ = {u, v, cur, next};
  return true;
}

void DynamicDigraph::audit() const {
  const std::size_t n = out_.size();
  std::size_t out_total = 0;
  std::size_t in_total = 0;
  for (VertexId u = 0; u < n; ++u) {
    for (std::size_t i = 0; i < out_[u].size(); ++i) {
      const Arc& a = out_[u][i];
      if (a.to >= n || a.to == u) throw std::logic_error("bad out arc");
      if (!(a.w >= 1.0) || a.w > max_weight_) {
        throw std::logic_error("weight out of bounds");
      }
      auto it = slots_.find(key(u, a.to));
      if (it == slots_.end() || it->second.out_pos != i) {
        throw std::logic_error("out index mismatch");
      }
      const Arc& back = in_[a.to].at(it->second.in_pos);
      if (back.to != u || back.w != a.w) {
        throw std::logic_error("in/out lists disagree");
      }
    }
    out_total += out_[u].size();
    in_total += in_[u].size();
  }
  if (out_total != slots_.size() || in_total != slots_.size()) {
    throw std::logic_error("edge count mismatch");
  }
}

StarGraph::StarGraph(std::size_t n, VertexId center)
    : center_(center), out_(n), in_(n) {
  for (VertexId v = 0; v < n; ++v) {
    out_[v] = {v, kInf};
    in_[v] = {center, kInf};
  }
}

ArcChange StarGraph::set(VertexId v, double w) {
  const double old = out_[v].w;
  out_[v].w = w;
  in_[v].w = w;
  return {center_, v, old, w};
}

std::optional<ArcChange> StarGraph::lower(VertexId v, double w) {
  if (v == center_ || !(w < out_[v].w)) return std::nullopt;
  return set(v, w);
}

ArcSpans StarUnionView::out_arcs(VertexId v) const {
  ArcSpans s = base_->out_arcs(v);
  if (v == star_->center()) s.second = star_->out();
  return s;
}

ArcSpans StarUnionView::in_arcs(VertexId v) const {
  ArcSpans s = base_->in_arcs(v);
  if (v != star_->center()) s.second = star_->in(v);
  return s;
}

MatrixGraph::MatrixGraph(std::size_t n) : n_(n), out_(n * n), in_(n * n) {
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = 0; v < n; ++v) {
      out_[u * n + v] = {v, kInf};
      in_[v * n + u] = {u, kInf};
    }
  }
}

ArcChange MatrixGraph::set(VertexId u, VertexId v, double w) {
  const double old = out_[u * n_ + v].w;
  out_[u * n_ + v].w = w;
  in_[v * n_ + u].w = w;
  return {u, v, old, w};
}

DynamicDigraph UpdateStream::initial_graph() const {
  return DynamicDigraph::from_edges(n, mode, initial, max_weight);
}

int restricted_exponent(double x, double base) {
  if (!(x > 1.0)) return 0;
  int e = static_cast<int>(std::ceil(std::log(x) / std::log(base)));
  if (e < 0) e = 0;
  while (e > 0 && std::pow(base, e - 1) >= x) --e;
  while (std::pow(base, e) < x) ++e;
  return e;
}

UpdateStream round_weights_restricted(const UpdateStream& stream, double eps) {
  const double base = 1.0 + eps / 4.0;
  auto round = [&](double w) {
    const int e = restricted_exponent(w, base);
    return EdgeWeight{std::pow(base, e), e};
  };

  UpdateStream out;
  out.mode = stream.mode;
  out.n = stream.n;
  out.max_weight = round(stream.max_weight).value;

  std::map<std::pair<VertexId, VertexId>, int> current;
  for (const Edge& e : stream.initial) {
    const EdgeWeight r = round(e.w);
    out.initial.push_back({e.u, e.v, r.value});
    current[{e.u, e.v}] = *r.exponent;
  }
  for (const UpdateOp& op : stream.ops) {
    const auto k = std::make_pair(op.u, op.v);
    if (op.kind == OpKind::kDelete) {
      current.erase(k);
      out.ops.push_back(op);
      continue;
    }
    UpdateOp r = op;
    r.w = round(op.w.value);
    auto it = current.find(k);
    if (it != current.end() && it->second == *r.w.exponent) continue;
    current[k] = *r.w.exponent;
    out.ops.push_back(r);
  }
  return out;
}

namespace {

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::kStreamParseError,
              "line " + std::to_string(line) + ": " + what);
}

template <class T>
T parse_number(std::string_view tok, std::size_t line) {
  T value{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    parse_error(line, "bad number '" + std::string(tok) + "'");
  }
  return value;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> toks;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) toks.push_back(s.substr(i, j - i));
    i = j;
  }
  return toks;
}

}  // namespace

UpdateStream parse_stream(std::istream& in) {
  UpdateStream s;
  bool have_header = false;
  bool in_prefix = true;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (toks[0] == "#") {
      if (have_header) continue;
      bool got_mode = false, got_n = false, got_w = false;
      for (std::size_t i = 1; i < toks.size(); ++i) {
        const auto eq = toks[i].find('=');
        if (eq == std::string_view::npos) continue;
        const auto k = toks[i].substr(0, eq);
        const auto v = toks[i].substr(eq + 1);
        if (k == "mode") {
          if (v == "incremental") {
            s.mode = Mode::kIncremental;
          } else if (v == "decremental") {
            s.mode = Mode::kDecremental;
          } else {
            parse_error(lineno, "unknown mode");
          }
          got_mode = true;
        } else if (k == "n") {
          s.n = parse_number<std::size_t>(v, lineno);
          got_n = true;
        } else if (k == "W") {
          s.max_weight = parse_number<double>(v, lineno);
          got_w = true;
        }
      }
      if (!got_mode || !got_n || !got_w) parse_error(lineno, "incomplete header");
      have_header = true;
      continue;
    }
    if (toks[0].front() == '#') continue;
    if (!have_header) parse_error(lineno, "missing header");

    UpdateOp op;
    const auto kind = toks[0];
    const std::size_t want = kind == "d" ? 3 : 4;
    if ((kind != "i" && kind != "d" && kind != "w") || toks.size() != want) {
      parse_error(lineno, "malformed op");
    }
    op.u = parse_number<VertexId>(toks[1], lineno);
    op.v = parse_number<VertexId>(toks[2], lineno);
    if (op.u >= s.n || op.v >= s.n) parse_error(lineno, "vertex out of range");
    if (kind == "d") {
      op.kind = OpKind::kDelete;
    } else {
      op.kind = kind == "i" ? OpKind::kInsert : OpKind::kSetWeight;
      op.w.value = parse_number<double>(toks[3], lineno);
    }

    if (s.mode == Mode::kDecremental) {
      if (op.kind == OpKind::kInsert) {
        if (!in_prefix) parse_error(lineno, "insert after first update");
        s.initial.push_back({op.u, op.v, op.w.value});
        continue;
      }
      in_prefix = false;
    }
    s.ops.push_back(op);
  }
  if (!have_header) parse_error(lineno, "missing header");
  return s;
}

UpdateStream read_stream_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kStreamParseError, "cannot open " + path);
  return parse_stream(in);
}

std::string format_weight(double w) {
  if (w == kInf) return "inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, w);
  return std::string(buf, ptr);
}

void write_stream(std::ostream& out, const UpdateStream& s) {
  out << "# mode=" << to_string(s.mode) << " n=" << s.n
      << " W=" << format_weight(s.max_weight) << '\n';
  for (const Edge& e : s.initial) {
    out << "i " << e.u << ' ' << e.v << ' ' << format_weight(e.w) << '\n';
  }
  for (const UpdateOp& op : s.ops) {
    switch (op.kind) {
      case OpKind::kInsert:
        out << "i " << op.u << ' ' << op.v << ' ' << format_weight(op.w.value);
        break;
      case OpKind::kDelete:
        out << "d " << op.u << ' ' << op.v;
        break;
      case OpKind::kSetWeight:
        out << "w " << op.u << ' ' << op.v << ' ' << format_weight(op.w.value);
        break;
    }
    out << '\n';
  }
}

}  // namespace hubs
