#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hubs/common.hpp"
#include "hubs/graph.hpp"
#include "hubs/parallel.hpp"

namespace hubs {

// Row-major n x n distance table.
struct DistMatrix {
  std::size_t n = 0;
  std::vector<double> d;
  double at(VertexId u, VertexId v) const { return d[u * n + v]; }
};

// Exact distances: BFS when !weighted (arc weights are then ignored),
// Dijkstra otherwise. One source per task.
DistMatrix oracle_dist(const GraphView& g, bool weighted,
                       Exec exec = Exec::kParallel);
// delta^k for every pair: k rounds of Bellman-Ford from each source.
DistMatrix oracle_hop_dist(const GraphView& g, int k,
                           Exec exec = Exec::kParallel);

enum class Algo { kDenseIncr, kSparseIncr, kExactDecr, kApproxDecr, kLvDecr };
const char* to_string(Algo algo);
// Throws ConfigError for an unknown name.
Algo parse_algo(const std::string& name);
Mode mode_of(Algo algo);

struct Cadence {
  enum Kind { kEach, kEvery, kEnd };
  Kind kind = kEach;
  int k = 1;
};
// "each", "k:<int>" or "end". Throws ConfigError.
Cadence parse_cadence(const std::string& text);
std::string to_string(const Cadence& c);

struct RunConfig {
  Algo algo = Algo::kExactDecr;
  std::size_t n = 32;
  std::size_t m = 96;
  int W = 1;
  double eps = 0.5;
  int d = 0;        // 0: sparse default
  double z = 4.0;
  double c = 0.0;   // > 0: sampled hub rebuild with this constant
  std::uint64_t seed = 1;
  std::string stream_path;  // empty: generate
  std::optional<Cadence> check;  // default: each for n <= 64, else k:10
  bool stable = false;           // zero the timing column
  Exec exec = Exec::kParallel;
};

Cadence effective_cadence(const RunConfig& cfg, std::size_t n);
// All parameters on one line, for output headers.
std::string describe(const RunConfig& cfg);

// Random incremental stream (m distinct arcs in random order, weights
// uniform in [1, W]) or decremental one (a random m-arc graph, then every
// arc deleted in random order), drawn from Rng(cfg.seed).
UpdateStream gen_stream(const RunConfig& cfg);
// The stream a run uses: read from cfg.stream_path or generated. Throws
// ConfigError when its mode does not match the algorithm.
UpdateStream load_stream(const RunConfig& cfg);

// Owns the graph and one algorithm instance observing it.
class ApspDriver {
 public:
  virtual ~ApspDriver() = default;
  // Applies op to the graph and forwards the change. Returns whether the
  // graph changed.
  bool apply(const UpdateOp& op);
  virtual double estimate(VertexId u, VertexId v) const = 0;
  virtual std::uint64_t work() const = 0;
  const DynamicDigraph& graph() const { return g_; }
  Algo algo() const { return algo_; }
  // Promised stretch; 1 for exact algorithms.
  double ratio() const { return ratio_; }

 protected:
  ApspDriver(DynamicDigraph g, Algo algo, double ratio)
      : g_(std::move(g)), algo_(algo), ratio_(ratio) {}
  virtual void on_change(const ArcChange& c) = 0;
  DynamicDigraph g_;

 private:
  Algo algo_;
  double ratio_;
};

std::unique_ptr<ApspDriver> make_driver(const RunConfig& cfg,
                                        const UpdateStream& stream);

struct OracleReport {
  std::uint64_t op_index;
  VertexId u;
  VertexId v;
  double maintained;
  double oracle;
  double bound;
  bool pass;
};

struct CheckRow {
  std::uint64_t op_index;
  std::size_t checked_pairs;
  double max_ratio;
  std::size_t failures;
  std::uint64_t elapsed_ns;
};

struct ReplayResult {
  std::vector<CheckRow> rows;
  // First kMaxReports failing pairs.
  std::vector<OracleReport> failures;
  std::size_t total_failures = 0;
  std::size_t ops = 0;
  std::uint64_t work = 0;
  bool ok() const { return total_failures == 0; }
  static constexpr std::size_t kMaxReports = 100;
};

struct ReplayHooks {
  // Replaces a maintained value before it is checked (fault injection).
  std::function<double(std::uint64_t op_index, VertexId u, VertexId v,
                       double value)>
      tamper;
};

// Replays the stream through the selected algorithm and checks its
// contract against the oracle at the configured cadence (and always after
// the last op). Op index k means k ops applied; index 0 is checked in the
// every-op cadence.
ReplayResult replay_verify(const RunConfig& cfg, const UpdateStream& stream,
                           const ReplayHooks& hooks = {});
ReplayResult replay_verify(const RunConfig& cfg, const ReplayHooks& hooks = {});

inline constexpr const char* kCsvHeader =
    "op_index,algorithm,n,m,eps,checked_pairs,max_ratio,failures,elapsed_ns";
void write_csv(std::ostream& out, const RunConfig& cfg,
               const UpdateStream& stream, const ReplayResult& result);
// One line with everything needed to reproduce a failing check.
std::string format_report(const RunConfig& cfg, const OracleReport& r);

}  // namespace hubs
