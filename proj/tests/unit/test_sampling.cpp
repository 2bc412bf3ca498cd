#include <doctest.h>

#include <cmath>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "causalman/errors.hpp"
#include "causalman/line_builder.hpp"
#include "causalman/sampling.hpp"
#include "causalman/scm.hpp"

using namespace causalman;
using doctest::Approx;

namespace {

ScmGraph point_chain() {
  ScmGraph g("chain");
  g.add_node("A", domain::Continuous{}, Visibility::Observable,
             mech::ExogenousNoise{dist::PointMass{2.0}});
  g.add_node("B", domain::Continuous{}, Visibility::Observable, mech::Sum{{0}});
  g.add_node("C", domain::Continuous{}, Visibility::Latent, mech::Sum{{1}});
  return g;
}

ScmGraph noisy_chain() {
  ScmGraph g("noisy");
  g.add_node("A", domain::Continuous{}, Visibility::Observable,
             mech::ExogenousNoise{dist::Gaussian{0.0, 1.0}});
  g.add_node("N", domain::Continuous{}, Visibility::Latent,
             mech::ExogenousNoise{dist::Gaussian{0.0, 1.0}});
  g.add_node("B", domain::Continuous{}, Visibility::Observable, mech::Sum{{0, 1}});
  return g;
}

// All-discrete 4-node graph: A -> B, A -> C, B -> C, C -> D.
ScmGraph discrete4() {
  const domain::Categorical two{{"0", "1"}};
  ScmGraph g("d4");
  g.add_node("A", two, Visibility::Observable,
             mech::ExogenousNoise{dist::CategoricalDist{{0.3, 0.7}}});
  mech::ConditionalCategorical b{{0}, {}};
  b.table[{0}] = {0.8, 0.2};
  b.table[{1}] = {0.25, 0.75};
  g.add_node("B", two, Visibility::Observable, b);
  mech::ConditionalCategorical c{{0, 1}, {}};
  c.table[{0, 0}] = {0.9, 0.1};
  c.table[{0, 1}] = {0.4, 0.6};
  c.table[{1, 0}] = {0.5, 0.5};
  c.table[{1, 1}] = {0.05, 0.95};
  g.add_node("C", two, Visibility::Observable, c);
  mech::ConditionalCategorical d{{2}, {}};
  d.table[{0}] = {0.7, 0.3};
  d.table[{1}] = {0.2, 0.8};
  g.add_node("D", two, Visibility::Observable, d);
  return g;
}

}  // namespace

TEST_CASE("sample_batch examples") {
  const ScmGraph g = point_chain();
  const Dataset ds = sample_batch(g, BatchConfig{0, {}, 4, {}}, 1);
  REQUIRE(ds.n_rows() == 4);
  REQUIRE(ds.n_cols() == 3);
  for (std::size_t r = 0; r < 4; ++r) {
    CHECK(ds.at(r, 0) == 2.0);
    CHECK(ds.at(r, 2) == 2.0);
  }
  CHECK(ds.columns[2].visibility == Visibility::Latent);

  const ScmGraph n = noisy_chain();
  const Dataset hard = sample_batch(n, BatchConfig{3, {}, 50, {Intervention::hard(2, 1.0)}}, 9);
  for (double v : hard.column("B")) CHECK(v == 1.0);
  REQUIRE(hard.batches.size() == 1);
  CHECK(hard.batches[0].interventions == std::vector<std::string>{"do(B=1)"});

  const BatchConfig b{5, {}, 100, {}};
  CHECK(sample_batch(n, b, 42) == sample_batch(n, b, 42));
  CHECK_FALSE(sample_batch(n, b, 42) == sample_batch(n, b, 43));
}

TEST_CASE("sample_batch errors") {
  const ScmGraph g = noisy_chain();
  CHECK_THROWS_AS(sample_batch(g, BatchConfig{0, {}, 0, {}}, 1), ConfigError);
  CHECK_THROWS_AS(sample_batch(g, BatchConfig{0, {{0, 1.0}}, 1, {}}, 1), ConfigError);
  CHECK_THROWS_AS(sample_batch(g, BatchConfig{0, {{17, 1.0}}, 1, {}}, 1), ConfigError);
  ScmGraph cyc;
  cyc.add_node("A", domain::Continuous{}, Visibility::Observable, mech::Sum{{1}});
  cyc.add_node("B", domain::Continuous{}, Visibility::Observable, mech::Sum{{0}});
  CHECK_THROWS_AS(sample_batch(cyc, BatchConfig{0, {}, 1, {}}, 1), ConfigError);
}

TEST_CASE("sample_schedule examples") {
  const ScmGraph g = noisy_chain();
  const BatchConfig b0{0, {}, 3, {}}, b1{1, {}, 3, {}};
  const Dataset both = sample_schedule(g, {b0, b1}, 5);
  CHECK(both.batch_ids == std::vector<std::int64_t>{0, 0, 0, 1, 1, 1});

  const Dataset only = sample_schedule(g, {b0}, 5);
  for (std::size_t i = 0; i < only.values.size(); ++i) CHECK(only.values[i] == both.values[i]);

  // Removing a batch in the middle leaves the later batch untouched too.
  const BatchConfig b2{2, {}, 2, {}};
  const Dataset three = sample_schedule(g, {b0, b1, b2}, 5);
  const Dataset skip = sample_schedule(g, {b0, b2}, 5);
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t c = 0; c < 3; ++c) CHECK(skip.at(3 + r, c) == three.at(6 + r, c));
  }

  const BatchConfig iv{7, {}, 20, {Intervention::hard(0, 100.0)}};
  const Dataset mixed = sample_schedule(g, {b0, iv, b1}, 5);
  for (std::size_t r = 0; r < mixed.n_rows(); ++r) {
    CHECK((mixed.at(r, 0) == 100.0) == (mixed.batch_ids[r] == 7));
  }
  REQUIRE(mixed.batches.size() == 3);
  CHECK(mixed.batches[1].interventions.size() == 1);
  CHECK(mixed.batches[0].interventions.empty());

  CHECK_THROWS_AS(sample_schedule(g, {b0, b0}, 5), ConfigError);
}

TEST_CASE("determinism across thread counts") {
  const ScmGraph g = build(preset("small"));
  const auto schedule = default_schedule(3000, 100);
  const Dataset one = sample_schedule(g, schedule, 11, SamplerOptions{1});
  CHECK(sample_schedule(g, schedule, 11, SamplerOptions{3}) == one);
  CHECK(sample_schedule(g, schedule, 11, SamplerOptions{8}) == one);
}

TEST_CASE("observe") {
  const Dataset ds = sample_batch(noisy_chain(), BatchConfig{0, {}, 5, {}}, 1);
  const Dataset obs = observe(ds);
  CHECK(obs.n_cols() == 2);
  CHECK(obs.n_rows() == 5);
  CHECK(obs.column("B") == ds.column("B"));

  ScmGraph visible;
  visible.add_node("A", domain::Continuous{}, Visibility::Observable,
                   mech::ExogenousNoise{dist::Gaussian{}});
  const Dataset v = sample_batch(visible, BatchConfig{0, {}, 3, {}}, 1);
  CHECK(observe(v) == v);

  ScmGraph hidden;
  hidden.add_node("A", domain::Continuous{}, Visibility::Latent,
                  mech::ExogenousNoise{dist::Gaussian{}});
  const Dataset h = observe(sample_batch(hidden, BatchConfig{4, {}, 3, {}}, 1));
  CHECK(h.n_cols() == 0);
  CHECK(h.batch_ids == std::vector<std::int64_t>{4, 4, 4});

  const ScmGraph small = build(preset("small"));
  const Dataset s = sample_schedule(small, default_schedule(10, 10), 1);
  CHECK(s.n_cols() == 157);
  CHECK(observe(s).n_cols() == 53);
}

TEST_CASE("empirical_distribution examples") {
  ScmGraph g;
  g.add_node("b", domain::Boolean{}, Visibility::Observable,
             mech::ExogenousNoise{dist::PointMass{1.0}});
  g.add_node("x", domain::Continuous{}, Visibility::Observable,
             mech::ExogenousNoise{dist::PointMass{3.0}});
  Dataset ds = sample_batch(g, BatchConfig{0, {}, 4, {}}, 1);
  // Boolean column [T,T,F,F].
  ds.values = {1, 0, 1, 0, 0, 0, 0, 0};
  const auto pb = empirical_distribution(ds, "b");
  REQUIRE(pb.size() == 2);
  CHECK(pb[0] == 0.5);
  CHECK(pb[1] == 0.5);

  // Constant column.
  ds.values = {1, 3, 1, 3, 1, 3, 1, 3};
  const auto pc = empirical_distribution(ds, "x", 4);
  CHECK(std::accumulate(pc.begin(), pc.end(), 0.0) == Approx(1.0));
  CHECK(*std::max_element(pc.begin(), pc.end()) == 1.0);

  // [0, 0.5, 1] with 2 bins.
  ds.values = {1, 0, 1, 0.5, 1, 1};
  ds.batch_ids = {0, 0, 0};
  const auto p2 = empirical_distribution(ds, "x", 2);
  CHECK(p2[0] == Approx(2.0 / 3.0));
  CHECK(p2[1] == Approx(1.0 / 3.0));

  CHECK_THROWS_AS(empirical_distribution(ds, "x"), ConfigError);
  CHECK_THROWS_AS(empirical_distribution(ds, "nope", 2), ConfigError);
  ds.values.clear();
  ds.batch_ids.clear();
  CHECK_THROWS_AS(empirical_distribution(ds, "b"), ConfigError);
}

TEST_CASE("hard intervention matches brute-force enumeration of the mutilated graph") {
  const ScmGraph g = discrete4();
  // do(B=1): P(D=1) = sum_a P(a) sum_c P(c|a,B=1) P(D=1|c)
  const double pa[2] = {0.3, 0.7};
  const double pc1[2] = {0.6, 0.95};  // P(C=1 | a, B=1)
  const double pd1[2] = {0.3, 0.8};
  double exact_c1 = 0.0, exact_d1 = 0.0;
  for (int a = 0; a < 2; ++a) {
    exact_c1 += pa[a] * pc1[a];
    for (int c = 0; c < 2; ++c) {
      const double pc = c == 1 ? pc1[a] : 1 - pc1[a];
      exact_d1 += pa[a] * pc * pd1[c];
    }
  }
  const std::size_t n = 200000;
  const Dataset ds = sample_batch(g, BatchConfig{0, {}, n, {Intervention::hard(1, 1.0)}}, 3);
  const auto pd = empirical_distribution(ds, "D");
  const auto pcv = empirical_distribution(ds, "C");
  const auto pav = empirical_distribution(ds, "A");
  CHECK(std::abs(pd[1] - exact_d1) < 4 * std::sqrt(exact_d1 * (1 - exact_d1) / n));
  CHECK(std::abs(pcv[1] - exact_c1) < 4 * std::sqrt(exact_c1 * (1 - exact_c1) / n));
  // A is upstream of the surgery and keeps its marginal.
  CHECK(std::abs(pav[1] - 0.7) < 4 * std::sqrt(0.21 / n));
  for (double b : ds.column("B")) CHECK(b == 1.0);
}

TEST_CASE("ProcessResult equals the AND of its MpGood inputs") {
  for (const char* name : {"small", "medium"}) {
    const ScmGraph g = build(preset(name));
    const Dataset ds = sample_schedule(g, default_schedule(2000, 100), 17);
    std::size_t checked = 0;
    for (const auto& node : g.nodes()) {
      if (node.name.find("ProcessResult") == std::string::npos) continue;
      const auto flags = parents(g, node.id);
      REQUIRE_FALSE(flags.empty());
      for (NodeId f : flags) CHECK(g.node(f).name.ends_with("_MpGood"));
      for (std::size_t r = 0; r < ds.n_rows(); ++r) {
        bool all = true;
        for (NodeId f : flags) all = all && ds.at(r, f) == 1.0;
        if ((ds.at(r, node.id) == 1.0) != all) FAIL("mismatch at row " << r);
      }
      ++checked;
    }
    CHECK(checked == preset(name).n_machines());
  }
}

TEST_CASE("batch parameters are constant within a batch") {
  const ScmGraph g = build(preset("small"));
  const Dataset ds = sample_schedule(g, default_schedule(1000, 100), 2);
  std::size_t params = 0;
  for (const auto& node : g.nodes()) {
    if (!node.batch_parameter) continue;
    ++params;
    for (std::size_t r = 1; r < ds.n_rows(); ++r) {
      if (ds.batch_ids[r] == ds.batch_ids[r - 1]) {
        if (ds.at(r, node.id) != ds.at(r - 1, node.id)) FAIL(node.name << " varies in a batch");
      }
    }
  }
  CHECK(params >= 2);

  // Pinned values are used verbatim.
  const NodeId type = g.id_of("HU_HU_Block_Type_ID_num");
  const Dataset pinned = sample_batch(g, BatchConfig{0, {{type, 2.0}}, 10, {}}, 2);
  for (double v : pinned.column("HU_HU_Block_Type_ID_num")) CHECK(v == 2.0);
}

TEST_CASE("conditional-dependency mixture") {
  const domain::Categorical sup{{"s0", "s1"}};
  ScmGraph g("mix");
  g.add_node("S", sup, Visibility::Observable,
             mech::ExogenousNoise{dist::CategoricalDist{{0.5, 0.5}}});
  mech::ConditionalGaussian cg{{0}, {}, std::nullopt};
  cg.table[{0}] = {0.0, 1.0};
  cg.table[{1}] = {10.0, 1.0};
  g.add_node("X", domain::Continuous{}, Visibility::Observable, cg);

  const Dataset ds = sample_batch(g, BatchConfig{0, {}, 20000, {}}, 8);
  double sum[2] = {0, 0};
  double cnt[2] = {0, 0};
  for (std::size_t r = 0; r < ds.n_rows(); ++r) {
    const int s = static_cast<int>(ds.at(r, 0));
    sum[s] += ds.at(r, 1);
    cnt[s] += 1;
  }
  CHECK(std::abs(sum[0] / cnt[0] - 0.0) < 4 / std::sqrt(cnt[0]));
  CHECK(std::abs(sum[1] / cnt[1] - 10.0) < 4 / std::sqrt(cnt[1]));

  // Pooled marginal is bimodal: the middle bin is a valley between two peaks.
  const auto h = empirical_distribution(ds, "X", 15);
  const auto peak_lo = std::max_element(h.begin(), h.begin() + 7);
  const auto peak_hi = std::max_element(h.begin() + 8, h.end());
  CHECK(h[7] < 0.1 * std::min(*peak_lo, *peak_hi));

  // The same property on a preset node with supplier-conditioned Gaussians.
  const ScmGraph small = build(preset("small"));
  const NodeId e_mv = [&] {
    for (const auto& n : small.nodes()) {
      if (n.name.ends_with("_E_mv")) return n.id;
    }
    return NodeId{0};
  }();
  const auto& table = std::get<mech::ConditionalGaussian>(small.node(e_mv).mechanism);
  const Dataset sd = sample_schedule(small, default_schedule(20000, 100), 4);
  std::map<TableKey, std::pair<double, double>> acc;  // sum, count
  for (std::size_t r = 0; r < sd.n_rows(); ++r) {
    TableKey key;
    for (NodeId p : table.parents) key.push_back(static_cast<std::uint32_t>(sd.at(r, p)));
    auto& a = acc[key];
    a.first += sd.at(r, e_mv);
    a.second += 1;
  }
  for (const auto& [key, a] : acc) {
    if (a.second < 30) continue;
    const auto& gp = table.table.at(key);
    CHECK(std::abs(a.first / a.second - gp.mu) < 4 * gp.sigma / std::sqrt(a.second));
  }
}
