#include "hubs/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <ostream>
#include <queue>
#include <sstream>
#include <unordered_map>

#include "hubs/apsp_decr.hpp"
#include "hubs/apsp_incr.hpp"
#include "hubs/hub_family.hpp"

namespace hubs {

namespace {

std::vector<double> bfs_row(const GraphView& g, VertexId s) {
  std::vector<double> dist(g.num_vertices(), kInf);
  std::deque<VertexId> queue{s};
  dist[s] = 0;
  while (!queue.empty()) {
    const VertexId u = queue.front();
    queue.pop_front();
    g.out_arcs(u).for_each([&](const Arc& a) {
      if (dist[a.to] == kInf) {
        dist[a.to] = dist[u] + 1;
        queue.push_back(a.to);
      }
    });
  }
  return dist;
}

std::vector<double> dijkstra_row(const GraphView& g, VertexId s) {
  std::vector<double> dist(g.num_vertices(), kInf);
  using Item = std::pair<double, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[s] = 0;
  pq.push({0, s});
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[u]) continue;
    g.out_arcs(u).for_each([&](const Arc& a) {
      if (d + a.w < dist[a.to]) {
        dist[a.to] = d + a.w;
        pq.push({dist[a.to], a.to});
      }
    });
  }
  return dist;
}

std::vector<double> hop_row(const GraphView& g, VertexId s, int k) {
  const std::size_t n = g.num_vertices();
  std::vector<double> cur(n, kInf);
  cur[s] = 0;
  for (int round = 0; round < k; ++round) {
    std::vector<double> next = cur;
    bool moved = false;
    for (VertexId u = 0; u < n; ++u) {
      if (cur[u] == kInf) continue;
      g.out_arcs(u).for_each([&](const Arc& a) {
        if (cur[u] + a.w < next[a.to]) {
          next[a.to] = cur[u] + a.w;
          moved = true;
        }
      });
    }
    cur = std::move(next);
    if (!moved) break;
  }
  return cur;
}

template <class Row>
DistMatrix fill(std::size_t n, Exec exec, Row&& row) {
  DistMatrix m{n, std::vector<double>(n * n, kInf)};
  parallel_for(n, exec, [&](std::size_t s) {
    const std::vector<double> r = row(static_cast<VertexId>(s));
    std::copy(r.begin(), r.end(), m.d.begin() + s * n);
  });
  return m;
}

std::string fmt(const char* spec, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

std::size_t arc_count(const UpdateStream& s) {
  if (s.mode == Mode::kDecremental) return s.initial.size();
  std::size_t m = 0;
  for (const UpdateOp& op : s.ops) m += op.kind == OpKind::kInsert;
  return m;
}

double estimate_of(const DenseIncrApsp& a, VertexId u, VertexId v) { return a.estimate(u, v); }
double estimate_of(const SparseIncrApsp& a, VertexId u, VertexId v) { return a.estimate(u, v); }
double estimate_of(const ExactDecrApsp& a, VertexId u, VertexId v) { return a.distance(u, v); }
double estimate_of(const ApproxDecrApsp& a, VertexId u, VertexId v) { return a.estimate(u, v); }
double estimate_of(const LasVegasDecr& a, VertexId u, VertexId v) { return a.estimate(u, v); }

template <class A>
class Driver final : public ApspDriver {
 public:
  template <class Make>
  Driver(DynamicDigraph g, Algo algo, double ratio, Make&& make)
      : ApspDriver(std::move(g), algo, ratio), alg_(make(g_)) {}
  double estimate(VertexId u, VertexId v) const override {
    return estimate_of(*alg_, u, v);
  }
  std::uint64_t work() const override { return alg_->work(); }

 private:
  void on_change(const ArcChange& c) override { alg_->on_update(c); }
  std::unique_ptr<A> alg_;
};

}  // namespace

DistMatrix oracle_dist(const GraphView& g, bool weighted, Exec exec) {
  if (weighted) {
    return fill(g.num_vertices(), exec, [&](VertexId s) { return dijkstra_row(g, s); });
  }
  return fill(g.num_vertices(), exec, [&](VertexId s) { return bfs_row(g, s); });
}

DistMatrix oracle_hop_dist(const GraphView& g, int k, Exec exec) {
  return fill(g.num_vertices(), exec, [&](VertexId s) { return hop_row(g, s, k); });
}

const char* to_string(Algo algo) {
  switch (algo) {
    case Algo::kDenseIncr: return "dense-incr";
    case Algo::kSparseIncr: return "sparse-incr";
    case Algo::kExactDecr: return "exact-decr";
    case Algo::kApproxDecr: return "approx-decr";
    case Algo::kLvDecr: return "lv-decr";
  }
  return "?";
}

Algo parse_algo(const std::string& name) {
  for (Algo a : {Algo::kDenseIncr, Algo::kSparseIncr, Algo::kExactDecr,
                 Algo::kApproxDecr, Algo::kLvDecr}) {
    if (name == to_string(a)) return a;
  }
  throw Error(ErrorCode::kConfigError, "unknown algorithm '" + name + "'");
}

Mode mode_of(Algo algo) {
  return algo == Algo::kDenseIncr || algo == Algo::kSparseIncr
             ? Mode::kIncremental
             : Mode::kDecremental;
}

Cadence parse_cadence(const std::string& text) {
  if (text == "each") return {Cadence::kEach, 1};
  if (text == "end") return {Cadence::kEnd, 0};
  if (text.rfind("k:", 0) == 0) {
    try {
      std::size_t used = 0;
      const int k = std::stoi(text.substr(2), &used);
      if (used == text.size() - 2 && k > 0) return {Cadence::kEvery, k};
    } catch (const std::exception&) {
    }
  }
  throw Error(ErrorCode::kConfigError, "bad check cadence '" + text + "'");
}

std::string to_string(const Cadence& c) {
  switch (c.kind) {
    case Cadence::kEach: return "each";
    case Cadence::kEnd: return "end";
    case Cadence::kEvery: return "k:" + std::to_string(c.k);
  }
  return "?";
}

Cadence effective_cadence(const RunConfig& cfg, std::size_t n) {
  if (cfg.check) return *cfg.check;
  return n <= 64 ? Cadence{Cadence::kEach, 1} : Cadence{Cadence::kEvery, 10};
}

std::string describe(const RunConfig& cfg) {
  std::ostringstream out;
  out << "algo=" << to_string(cfg.algo) << " n=" << cfg.n << " m=" << cfg.m
      << " W=" << cfg.W << " eps=" << format_weight(cfg.eps) << " d=" << cfg.d
      << " z=" << format_weight(cfg.z) << " c=" << format_weight(cfg.c)
      << " seed=" << cfg.seed
      << " stream=" << (cfg.stream_path.empty() ? "generated" : cfg.stream_path)
      << " check=" << to_string(effective_cadence(cfg, cfg.n));
  return out.str();
}

UpdateStream gen_stream(const RunConfig& cfg) {
  const std::size_t n = cfg.n;
  const std::size_t pairs = n < 2 ? 0 : n * (n - 1);
  if (cfg.m > pairs) {
    throw Error(ErrorCode::kConfigError, "m exceeds the number of vertex pairs");
  }
  if (cfg.W < 1) throw Error(ErrorCode::kConfigError, "W must be at least 1");
  Rng rng(cfg.seed);
  // Partial Fisher-Yates over pair indices, with a sparse swap table.
  std::unordered_map<std::uint64_t, std::uint64_t> swapped;
  auto at = [&](std::uint64_t i) {
    auto it = swapped.find(i);
    return it == swapped.end() ? i : it->second;
  };
  UpdateStream s;
  s.mode = mode_of(cfg.algo);
  s.n = n;
  s.max_weight = cfg.W;
  std::vector<Edge> arcs;
  for (std::uint64_t i = 0; i < cfg.m; ++i) {
    const std::uint64_t j = i + uniform_below(rng, pairs - i);
    const std::uint64_t pick = at(j);
    swapped[j] = at(i);
    const VertexId u = static_cast<VertexId>(pick / (n - 1));
    VertexId v = static_cast<VertexId>(pick % (n - 1));
    if (v >= u) ++v;
    arcs.push_back({u, v, 1.0 + static_cast<double>(uniform_below(rng, cfg.W))});
  }
  if (s.mode == Mode::kIncremental) {
    for (const Edge& e : arcs) s.ops.push_back(UpdateOp::insert(e.u, e.v, e.w));
  } else {
    s.initial = arcs;
    for (std::size_t k : random_permutation(arcs.size(), rng)) {
      s.ops.push_back(UpdateOp::remove(arcs[k].u, arcs[k].v));
    }
  }
  return s;
}

UpdateStream load_stream(const RunConfig& cfg) {
  UpdateStream s = cfg.stream_path.empty() ? gen_stream(cfg)
                                           : read_stream_file(cfg.stream_path);
  if (s.mode != mode_of(cfg.algo)) {
    throw Error(ErrorCode::kConfigError,
                std::string("stream mode does not suit ") + to_string(cfg.algo));
  }
  return s;
}

bool ApspDriver::apply(const UpdateOp& op) {
  if (!g_.apply_update(op)) return false;
  on_change(g_.last_change());
  return true;
}

std::unique_ptr<ApspDriver> make_driver(const RunConfig& cfg,
                                        const UpdateStream& stream) {
  DynamicDigraph g = stream.initial_graph();
  const std::size_t n = stream.n;
  const double eps = cfg.eps;
  const Exec exec = cfg.exec;
  switch (cfg.algo) {
    case Algo::kDenseIncr:
      return std::make_unique<Driver<DenseIncrApsp>>(
          std::move(g), cfg.algo, 1 + eps, [&](const DynamicDigraph& gr) {
            return std::make_unique<DenseIncrApsp>(
                gr, eps, incremental_distance_bound(gr, eps), exec);
          });
    case Algo::kSparseIncr: {
      const bool weighted = stream.max_weight > 1;
      const int d = cfg.d > 0 ? cfg.d : SparseIncrApsp::default_d(n);
      HubRebuild rebuild{cfg.c > 0, cfg.c > 0 ? cfg.c : 3.0, cfg.seed};
      return std::make_unique<Driver<SparseIncrApsp>>(
          std::move(g), cfg.algo, 1 + eps, [&](const DynamicDigraph& gr) {
            return std::make_unique<SparseIncrApsp>(gr, d, eps, weighted, exec,
                                                    rebuild);
          });
    }
    case Algo::kExactDecr:
    case Algo::kApproxDecr: {
      Rng rng(cfg.seed);
      HubLevels levels = sample_hub_levels(n, cfg.z, rng);
      if (cfg.algo == Algo::kExactDecr) {
        return std::make_unique<Driver<ExactDecrApsp>>(
            std::move(g), cfg.algo, 1.0, [&](const DynamicDigraph& gr) {
              return std::make_unique<ExactDecrApsp>(gr, levels, exec);
            });
      }
      return std::make_unique<Driver<ApproxDecrApsp>>(
          std::move(g), cfg.algo, 1 + eps, [&](const DynamicDigraph& gr) {
            return std::make_unique<ApproxDecrApsp>(gr, levels, eps, exec);
          });
    }
    case Algo::kLvDecr:
      return std::make_unique<Driver<LasVegasDecr>>(
          std::move(g), cfg.algo, 1.0, [&](const DynamicDigraph& gr) {
            return std::make_unique<LasVegasDecr>(gr, DecrInner::kExact, eps,
                                                  cfg.z, cfg.seed, exec);
          });
  }
  throw Error(ErrorCode::kConfigError, "unknown algorithm");
}

ReplayResult replay_verify(const RunConfig& cfg, const UpdateStream& stream,
                           const ReplayHooks& hooks) {
  using Clock = std::chrono::steady_clock;
  ReplayResult result;
  auto t0 = Clock::now();
  auto driver = make_driver(cfg, stream);
  std::uint64_t pending_ns = 0;
  auto lap = [&] {
    const auto t1 = Clock::now();
    pending_ns += std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count();
  };
  lap();
  const std::size_t n = stream.n;
  const Cadence cadence = effective_cadence(cfg, n);
  const double ratio = driver->ratio();

  auto check = [&](std::uint64_t op_index) {
    const bool weighted = !driver->graph().is_unweighted();
    const DistMatrix dist = oracle_dist(driver->graph(), weighted, cfg.exec);
    CheckRow row{op_index, 0, 1.0, 0, cfg.stable ? 0 : pending_ns};
    for (VertexId u = 0; u < n; ++u) {
      for (VertexId v = 0; v < n; ++v) {
        double est = driver->estimate(u, v);
        if (hooks.tamper) est = hooks.tamper(op_index, u, v, est);
        const double truth = dist.at(u, v);
        const double bound = truth * ratio;
        const bool pass = ratio == 1.0
                              ? est == truth
                              : leq_slack(truth, est) && leq_slack(est, bound);
        ++row.checked_pairs;
        if (truth > 0 && truth != kInf && est != kInf) {
          row.max_ratio = std::max(row.max_ratio, est / truth);
        }
        if (!pass) {
          ++row.failures;
          ++result.total_failures;
          if (result.failures.size() < ReplayResult::kMaxReports) {
            result.failures.push_back({op_index, u, v, est, truth, bound, false});
          }
        }
      }
    }
    result.rows.push_back(row);
    pending_ns = 0;
  };

  if (cadence.kind == Cadence::kEach) check(0);
  for (std::size_t i = 0; i < stream.ops.size(); ++i) {
    t0 = Clock::now();
    driver->apply(stream.ops[i]);
    lap();
    const std::uint64_t idx = i + 1;
    const bool last = idx == stream.ops.size();
    const bool due = cadence.kind == Cadence::kEach ||
                     (cadence.kind == Cadence::kEvery && idx % cadence.k == 0);
    if (due || last) check(idx);
  }
  if (stream.ops.empty() && cadence.kind != Cadence::kEach) check(0);
  result.ops = stream.ops.size();
  result.work = driver->work();
  return result;
}

ReplayResult replay_verify(const RunConfig& cfg, const ReplayHooks& hooks) {
  return replay_verify(cfg, load_stream(cfg), hooks);
}

void write_csv(std::ostream& out, const RunConfig& cfg,
               const UpdateStream& stream, const ReplayResult& result) {
  out << kCsvHeader << '\n';
  for (const CheckRow& r : result.rows) {
    out << r.op_index << ',' << to_string(cfg.algo) << ',' << stream.n << ','
        << arc_count(stream) << ',' << format_weight(cfg.eps) << ','
        << r.checked_pairs << ',' << fmt("%.6f", r.max_ratio) << ','
        << r.failures << ',' << r.elapsed_ns << '\n';
  }
}

std::string format_report(const RunConfig& cfg, const OracleReport& r) {
  std::ostringstream out;
  out << "FAIL op_index=" << r.op_index << " pair=(" << r.u << "," << r.v
      << ") maintained=" << format_weight(r.maintained)
      << " oracle=" << format_weight(r.oracle)
      << " bound=" << format_weight(r.bound) << " | " << describe(cfg);
  return out.str();
}

}  // namespace hubs
