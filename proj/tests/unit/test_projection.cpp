#include <doctest.h>

#include <random>

#include "../oracles.hpp"
#include "causalman/errors.hpp"
#include "causalman/line_builder.hpp"
#include "causalman/projection.hpp"

using namespace causalman;

namespace {

Mechanism root() { return mech::ExogenousNoise{dist::Gaussian{}}; }
Mechanism from(std::vector<NodeId> ps) { return mech::Sum{std::move(ps)}; }
constexpr auto kObs = Visibility::Observable;
constexpr auto kLat = Visibility::Latent;

std::pair<std::size_t, std::size_t> edge(const Admg& a, const char* u, const char* v) {
  return {a.index_of(u), a.index_of(v)};
}

}  // namespace

TEST_CASE("latent_project examples") {
  SUBCASE("chain through a latent") {
    ScmGraph g;
    g.add_node("A", domain::Continuous{}, kObs, root());
    g.add_node("L", domain::Continuous{}, kLat, from({0}));
    g.add_node("B", domain::Continuous{}, kObs, from({1}));
    const Admg a = latent_project(g);
    CHECK(a.nodes == std::vector<std::string>{"A", "B"});
    CHECK(a.directed == std::set<std::pair<std::size_t, std::size_t>>{edge(a, "A", "B")});
    CHECK(a.bidirected.empty());
  }
  SUBCASE("fork through a latent") {
    ScmGraph g;
    g.add_node("L", domain::Continuous{}, kLat, root());
    g.add_node("A", domain::Continuous{}, kObs, from({0}));
    g.add_node("B", domain::Continuous{}, kObs, from({0}));
    const Admg a = latent_project(g);
    CHECK(a.directed.empty());
    CHECK(a.bidirected == std::set<std::pair<std::size_t, std::size_t>>{edge(a, "A", "B")});
    CHECK(node_census(g).projected_bidirected == 1);
  }
  SUBCASE("no latents is the identity and idempotent") {
    ScmGraph g;
    g.add_node("A", domain::Continuous{}, kObs, root());
    g.add_node("B", domain::Continuous{}, kObs, from({0}));
    g.add_node("C", domain::Continuous{}, kObs, from({0, 1}));
    const Admg a = latent_project(g);
    CHECK(a == as_admg(g));
    CHECK(a.directed.size() == 3);
    CHECK(a.bidirected.empty());
  }
  SUBCASE("directed and bidirected may coexist") {
    ScmGraph g;
    g.add_node("L", domain::Continuous{}, kLat, root());
    g.add_node("A", domain::Continuous{}, kObs, from({0}));
    g.add_node("B", domain::Continuous{}, kObs, from({0, 1}));
    const Admg a = latent_project(g);
    CHECK(a.directed.size() == 1);
    CHECK(a.bidirected.size() == 1);
    CHECK(a.collapsed_pairs() == 1);
  }
  CHECK_THROWS_AS(as_admg(ScmGraph{}).index_of("X"), ConfigError);
}

TEST_CASE("d_separated examples") {
  ScmGraph chain;
  chain.add_node("A", domain::Continuous{}, kObs, root());
  chain.add_node("B", domain::Continuous{}, kObs, from({0}));
  chain.add_node("C", domain::Continuous{}, kObs, from({1}));
  CHECK(d_separated(chain, {0}, {2}, {1}));
  CHECK_FALSE(d_separated(chain, {0}, {2}, {}));

  ScmGraph collider;
  collider.add_node("A", domain::Continuous{}, kObs, root());
  collider.add_node("B", domain::Continuous{}, kObs, root());
  collider.add_node("C", domain::Continuous{}, kObs, from({0, 1}));
  collider.add_node("D", domain::Continuous{}, kObs, from({2}));
  CHECK(d_separated(collider, {0}, {1}, {}));
  CHECK_FALSE(d_separated(collider, {0}, {1}, {2}));
  CHECK_FALSE(d_separated(collider, {0}, {1}, {3}));  // descendant of the collider

  ScmGraph fork;
  fork.add_node("L", domain::Continuous{}, kLat, root());
  fork.add_node("A", domain::Continuous{}, kObs, from({0}));
  fork.add_node("B", domain::Continuous{}, kObs, from({0}));
  CHECK_FALSE(d_separated(fork, {1}, {2}, {}));
  CHECK(d_separated(fork, {1}, {2}, {0}));

  CHECK_THROWS_AS(d_separated(chain, {0}, {0}, {}), ConfigError);
  CHECK_THROWS_AS(d_separated(chain, {0}, {2}, {0}), ConfigError);
}

TEST_CASE("m_separated examples") {
  Admg bi;
  bi.nodes = {"A", "B"};
  bi.bidirected = {{0, 1}};
  CHECK_FALSE(m_separated(bi, {0}, {1}, {}));

  Admg path;
  path.nodes = {"A", "B", "C"};
  path.bidirected = {{0, 2}, {1, 2}};
  CHECK(m_separated(path, {0}, {1}, {}));
  CHECK_FALSE(m_separated(path, {0}, {1}, {2}));

  ScmGraph fork;
  fork.add_node("L", domain::Continuous{}, kLat, root());
  fork.add_node("A", domain::Continuous{}, kObs, from({0}));
  fork.add_node("B", domain::Continuous{}, kObs, from({0}));
  fork.add_node("C", domain::Continuous{}, kObs, from({1, 2}));
  const Admg p = latent_project(fork);
  const std::vector<std::vector<std::size_t>> zs{{}, {p.index_of("C")}};
  for (const auto& z : zs) {
    std::vector<NodeId> zg;
    for (std::size_t i : z) zg.push_back(p.source_ids[i]);
    CHECK(m_separated(p, {p.index_of("A")}, {p.index_of("B")}, z) ==
          d_separated(fork, {1}, {2}, zg));
  }
}

TEST_CASE("oracles agree with the library on random graphs") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 3 + rng() % 6;
    const ScmGraph g = oracle::random_dag(rng, n, 0.2 + 0.5 * (rng() % 100) / 100.0, 0.35);
    const Admg a = latent_project(g);
    const Admg b = oracle::project(g);
    CHECK(a.nodes == b.nodes);
    CHECK(a.directed == b.directed);
    CHECK(a.bidirected == b.bidirected);

    const std::size_t k = a.nodes.size();
    for (std::size_t x = 0; x < k; ++x) {
      for (std::size_t y = x + 1; y < k; ++y) {
        for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
          if (mask & ((1u << x) | (1u << y))) continue;
          std::vector<std::size_t> z;
          std::vector<NodeId> zg;
          for (std::size_t i = 0; i < k; ++i) {
            if (mask & (1u << i)) {
              z.push_back(i);
              zg.push_back(a.source_ids[i]);
            }
          }
          const std::vector<NodeId> xg{a.source_ids[x]}, yg{a.source_ids[y]};
          const bool truth = oracle::d_separated(g, xg, yg, zg);
          if (d_separated(g, xg, yg, zg) != truth) FAIL("d-sep mismatch");
          if (m_separated(a, {x}, {y}, z) != truth) FAIL("m-sep mismatch");
          if (oracle::m_separated(a, {x}, {y}, z) != truth) FAIL("oracle m-sep mismatch");
        }
      }
    }
  }
}

TEST_CASE("set-valued separation queries") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const ScmGraph g = oracle::random_dag(rng, 7, 0.35, 0.3);
    const Admg a = latent_project(g);
    const std::size_t k = a.nodes.size();
    if (k < 3) continue;
    for (int q = 0; q < 30; ++q) {
      std::vector<std::size_t> x, y, z;
      std::vector<NodeId> xg, yg, zg;
      for (std::size_t i = 0; i < k; ++i) {
        switch (rng() % 4) {
          case 0: x.push_back(i); xg.push_back(a.source_ids[i]); break;
          case 1: y.push_back(i); yg.push_back(a.source_ids[i]); break;
          case 2: z.push_back(i); zg.push_back(a.source_ids[i]); break;
          default: break;
        }
      }
      if (x.empty() || y.empty()) continue;
      const bool truth = oracle::d_separated(g, xg, yg, zg);
      CHECK(d_separated(g, xg, yg, zg) == truth);
      CHECK(m_separated(a, x, y, z) == truth);
    }
  }
}

TEST_CASE("small preset projection has bidirected edges") {
  const Admg a = latent_project(build(preset("small")));
  CHECK(a.bidirected.size() > 0);
  CHECK(a.nodes.size() == 53);
  // Directed part stays acyclic: every edge respects source-id topological order.
  const ScmGraph g = build(preset("small"));
  const auto order = topological_order(g);
  std::vector<std::size_t> pos(g.size());
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
  for (const auto& [u, v] : a.directed) CHECK(pos[a.source_ids[u]] < pos[a.source_ids[v]]);
}
