#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "hubs/hub_family.hpp"
#include "hubs/hubs.hpp"
#include "oracles.hpp"

using namespace hubs;

namespace {

bool all_levels_valid(const DynamicDigraph& g, const HubLevels& levels) {
  ReverseView rg(g);
  for (int i = 1; i <= levels.q(); ++i) {
    const VertexSet a = levels.set(i);
    if (!hub_oracle_exact(g, a, levels.d[i])) return false;
    if (!hub_oracle_exact(rg, a, levels.d[i])) return false;
  }
  return true;
}

// Level i verdict recomputed from mirror trees driven by the same updates.
struct Mirror {
  Mirror(const DynamicDigraph& g, const HubLevels& levels) : rev(g) {
    for (int i = 1; i <= levels.q(); ++i) {
      std::vector<std::pair<EsTree, EsTree>> bank;
      for (VertexId v : levels.sets[i - 1]) {
        bank.emplace_back(EsTree(g, v, levels.d[i - 1]),
                          EsTree(rev, v, levels.d[i - 1]));
      }
      banks.push_back(std::move(bank));
    }
  }
  void apply(const ArcChange& c) {
    for (auto& bank : banks) {
      for (auto& [f, t] : bank) {
        f.apply(c);
        t.apply(c.reversed());
      }
    }
  }
  std::vector<int> failing(const HubLevels& levels) const {
    std::vector<int> out;
    const std::size_t n = levels.n;
    for (int i = 1; i <= levels.q(); ++i) {
      const VertexSet b = levels.set(i);
      bool ok = true;
      for (const auto& [f, t] : banks[i - 1]) {
        for (const EsTree* tree : {&f, &t}) {
          EtForest forest = forest_of(tree_of(*tree), n);
          ok = ok && verify_blocker(forest, tree->source(), b, levels.d[i - 1]);
        }
      }
      if (!ok) out.push_back(i);
    }
    return out;
  }
  ReverseView rev;
  std::vector<std::vector<std::pair<EsTree, EsTree>>> banks;
};

}  // namespace

TEST_CASE("level sizes and depths") {
  CHECK(hub_level_count(1) == 0);
  CHECK(hub_level_count(6) == 1);
  CHECK(hub_level_count(7) == 2);
  CHECK(hub_level_count(60) == 3);
  CHECK(hub_level_size(60, 0) == 60);
  CHECK(hub_level_size(60, 1) == 36);
  CHECK(hub_level_size(60, 2) == 6);
  CHECK(hub_level_size(60, 3) == 1);

  // z = 4, n = 60, ceil(ln 60) = 5: d_0 = floor(4 * 60/36 * 5) = 33, the
  // rest cap at 59.
  CHECK(hub_level_depths(60, 4.0) == std::vector<int>{33, 59, 59, 59});
  // z = 0.5: d_0 = 4, d_1 = max(25, 24) = 25, then the cap.
  CHECK(hub_level_depths(60, 0.5) == std::vector<int>{4, 25, 59, 59});
  // z = 0.1: d_0 = max(1, 0) = 1, d_1 = max(5, 6) = 6, d_2 = max(30, 36).
  CHECK(hub_level_depths(60, 0.1) == std::vector<int>{1, 6, 36, 59});
  CHECK_THROWS_AS(hub_level_depths(60, 0.0), Error);

  for (std::size_t n : {2u, 5u, 17u, 100u, 500u}) {
    for (double z : {0.05, 0.3, 1.0, 4.0}) {
      auto d = hub_level_depths(n, z);
      for (std::size_t i = 1; i < d.size(); ++i) {
        CHECK(d[i] >= std::min<int>(static_cast<int>(n) - 1, 6 * d[i - 1]));
      }
    }
  }
}

TEST_CASE("sampled levels are nested prefixes") {
  Rng rng(1);
  auto levels = sample_hub_levels(100, 4.0, rng);
  REQUIRE(levels.q() == 3);
  for (int i = 0; i <= levels.q(); ++i) {
    CHECK(levels.sets[i].size() == hub_level_size(100, i));
    if (i > 0) CHECK(levels.set(i).is_subset_of(levels.set(i - 1)));
  }
  CHECK(levels.set(0) == VertexSet::all(100));
  Rng a(5), b(5);
  CHECK(sample_hub_levels(50, 1.0, a).sets == sample_hub_levels(50, 1.0, b).sets);
}

TEST_CASE("edgeless graph never alarms") {
  DynamicDigraph g(30, Mode::kDecremental);
  Rng rng(2);
  HubFamily f(g, sample_hub_levels(30, 0.1, rng));
  CHECK_FALSE(f.alarm());
}

TEST_CASE("monitor verdict matches recomputation and implies valid hubs") {
  std::mt19937_64 grng(3);
  int alarms = 0, quiet_steps = 0;
  for (int round = 0; round < 12; ++round) {
    const std::size_t n = 30 + grng() % 20;
    auto g = oracle::random_graph(n, 3 * n, grng, Mode::kDecremental);
    Rng rng(round);
    const double z = round % 3 == 0 ? 4.0 : 0.1 + 0.1 * (round % 3);
    auto levels = sample_hub_levels(n, z, rng);
    HubFamily fam(g, levels, round % 2 ? Exec::kSerial : Exec::kParallel);
    Mirror mirror(g, levels);
    for (const UpdateOp& op : oracle::teardown(g, grng)) {
      g.apply_update(op);
      fam.on_update(g.last_change());
      mirror.apply(g.last_change());
      REQUIRE(fam.failing_levels() == mirror.failing(levels));
      if (fam.alarm()) {
        ++alarms;
      } else {
        ++quiet_steps;
        REQUIRE(all_levels_valid(g, levels));
      }
    }
  }
  MESSAGE("alarm steps " << alarms << ", quiet steps " << quiet_steps);
  CHECK(quiet_steps > 0);
}

TEST_CASE("serial and parallel banks agree") {
  std::mt19937_64 grng(4);
  const std::size_t n = 50;
  auto g1 = oracle::random_graph(n, 150, grng, Mode::kDecremental);
  auto g2 = g1;
  Rng r1(9), r2(9);
  HubFamily a(g1, sample_hub_levels(n, 0.2, r1), Exec::kSerial);
  HubFamily b(g2, sample_hub_levels(n, 0.2, r2), Exec::kParallel);
  for (const UpdateOp& op : oracle::teardown(g1, grng)) {
    g1.apply_update(op);
    g2.apply_update(op);
    a.on_update(g1.last_change());
    b.on_update(g2.last_change());
    REQUIRE(a.failing_levels() == b.failing_levels());
  }
  CHECK(a.work() == b.work());
}

TEST_CASE("overriding a level with a weaker set raises the alarm") {
  // A directed path: depth-1 trees from every vertex have a leaf each.
  const std::size_t n = 40;
  DynamicDigraph g(n, Mode::kDecremental);
  for (VertexId v = 0; v + 1 < n; ++v) g.add_initial_edge(v, v + 1, 1);
  HubLevels levels;
  levels.n = n;
  levels.d = hub_level_depths(n, 0.1);
  REQUIRE(levels.d[0] == 1);
  std::vector<VertexId> all(n);
  std::iota(all.begin(), all.end(), 0);
  for (int i = 0; i <= hub_level_count(n); ++i) levels.sets.push_back(all);
  HubFamily fam(g, levels);
  CHECK_FALSE(fam.alarm());
  fam.debug_override_level(1, {});
  CHECK(fam.failing_levels() == std::vector<int>{1});
  CHECK_THROWS_AS(fam.debug_override_level(9, {}), Error);
}
