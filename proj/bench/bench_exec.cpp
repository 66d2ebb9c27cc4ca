// Serial reference vs OpenMP execution of the per-source banks.

#include <benchmark/benchmark.h>

#include "hubs/apsp_decr.hpp"
#include "hubs/apsp_incr.hpp"
#include "hubs/harness.hpp"
#include "hubs/hub_family.hpp"

namespace {

using namespace hubs;

Exec exec_of(const benchmark::State& state) {
  return state.range(1) ? Exec::kParallel : Exec::kSerial;
}

UpdateStream stream_for(Algo algo, std::size_t n, std::size_t m, int W) {
  RunConfig cfg;
  cfg.algo = algo;
  cfg.n = n;
  cfg.m = m;
  cfg.W = W;
  cfg.seed = 7;
  return gen_stream(cfg);
}

void BM_OracleDist(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  DynamicDigraph g = stream_for(Algo::kExactDecr, n, 4 * n, 1).initial_graph();
  for (auto _ : state) benchmark::DoNotOptimize(oracle_dist(g, false, exec_of(state)));
}

void BM_ExactDecrTeardown(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const UpdateStream s = stream_for(Algo::kExactDecr, n, 3 * n, 1);
  for (auto _ : state) {
    DynamicDigraph g = s.initial_graph();
    Rng rng(1);
    ExactDecrApsp a(g, sample_hub_levels(n, kDefaultZ, rng), exec_of(state));
    for (const UpdateOp& op : s.ops) {
      if (g.apply_update(op)) a.on_update(g.last_change());
    }
    benchmark::DoNotOptimize(a.distance(0, 1));
  }
}

void BM_SparseIncrInserts(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const UpdateStream s = stream_for(Algo::kSparseIncr, n, 3 * n, 1);
  for (auto _ : state) {
    DynamicDigraph g = s.initial_graph();
    SparseIncrApsp a(g, SparseIncrApsp::default_d(n), 0.5, false, exec_of(state));
    for (const UpdateOp& op : s.ops) {
      if (g.apply_update(op)) a.on_update(g.last_change());
    }
    benchmark::DoNotOptimize(a.estimate(0, 1));
  }
}

}  // namespace

BENCHMARK(BM_OracleDist)->ArgsProduct({{200, 800}, {0, 1}})->ArgNames({"n", "par"});
BENCHMARK(BM_ExactDecrTeardown)->ArgsProduct({{64, 128}, {0, 1}})->ArgNames({"n", "par"})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SparseIncrInserts)->ArgsProduct({{48, 96}, {0, 1}})->ArgNames({"n", "par"})
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
