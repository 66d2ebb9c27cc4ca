#include <random>

#include "doctest.h"
#include "hubs/dyntree.hpp"
#include "oracles.hpp"

using namespace hubs;

TEST_CASE("parent, link, cut basics") {
  EtForest f(12);
  CHECK_FALSE(f.parent(3).has_value());
  f.link(1, 2);
  CHECK(f.parent(1) == 2u);
  CHECK(f.val(1) == 1);
  CHECK(f.depth(2) == 1);
  CHECK_THROWS_AS(f.link(1, 3), Error);
  f.cut(1);
  CHECK_FALSE(f.parent(1).has_value());
  CHECK_THROWS_AS(f.cut(1), Error);
  CHECK(f.depth(5) == 0);
}

TEST_CASE("link errors carry codes") {
  EtForest f(4);
  f.link(1, 2);
  try {
    f.link(1, 3);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNotARoot);
  }
  try {
    f.link(2, 1);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kSameTree);
  }
  try {
    f.cut(2);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kIsRoot);
  }
}

TEST_CASE("chain and star depths") {
  EtForest f(11);
  for (VertexId k = 0; k < 10; ++k) f.link(k, k + 1);
  CHECK(f.val(0) == 10);
  CHECK(f.depth(3) == 10);
  CHECK(f.find_root(0) == 10u);

  EtForest s(6);
  for (VertexId k = 1; k < 6; ++k) s.link(k, 0);
  CHECK(s.depth(0) == 1);
  CHECK(s.tree_size(4) == 6);
}

TEST_CASE("cut inside a chain, then relink") {
  EtForest f(3);
  f.link(1, 0);
  f.link(2, 1);
  f.cut(1);
  CHECK(f.val(1) == 0);
  CHECK(f.val(2) == 1);
  CHECK(f.depth(0) == 0);
  f.link(1, 0);
  CHECK(f.val(2) == 2);
  CHECK(f.depth(0) == 2);
}

TEST_CASE("random link/cut agrees with naive forest") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const int n = seed == 1 ? 2000 : 60;
    const int ops = seed == 1 ? 100000 : 20000;
    std::mt19937_64 rng(seed);
    EtForest f(n, seed);
    oracle::NaiveForest ref(n);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int i = 0; i < ops; ++i) {
      const int v = pick(rng);
      if (ref.parent[v] >= 0 && rng() % 2) {
        f.cut(v);
        ref.parent[v] = -1;
      } else if (ref.parent[v] < 0) {
        const int u = pick(rng);
        if (ref.root(u) != v) {
          f.link(v, u);
          ref.parent[v] = u;
        }
      }
      const int q = pick(rng);
      const auto p = f.parent(q);
      REQUIRE((p ? static_cast<int>(*p) : -1) == ref.parent[q]);
      REQUIRE(f.val(q) == ref.val(q));
      REQUIRE(f.find_root(q) == static_cast<VertexId>(ref.root(q)));
      // The whole-tree scan is O(n^2); sample it.
      if (n <= 60 || i % 97 == 0) REQUIRE(f.depth(q) == ref.depth(q));
    }
  }
}

TEST_CASE("depth is shared across a tree") {
  std::mt19937_64 rng(9);
  EtForest f(200);
  for (VertexId v = 1; v < 200; ++v) f.link(v, rng() % v);
  const int d = f.depth(0);
  for (VertexId v = 0; v < 200; ++v) CHECK(f.depth(v) == d);
}
