#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "causalman/errors.hpp"
#include "causalman/physics.hpp"
#include "causalman/sampling.hpp"
#include "causalman/scm.hpp"

using namespace causalman;
using namespace causalman::physics;
using doctest::Approx;

namespace {
Approx near(double v) { return Approx(v).epsilon(1e-12); }
}  // namespace

TEST_CASE("effective_elasticity examples") {
  CHECK(effective_elasticity(100, 100) == near(50));
  CHECK(effective_elasticity(100, 300) == near(75));
  CHECK(effective_elasticity(200, 200) == near(100));
  CHECK_THROWS_AS(effective_elasticity(0, 100), PhysicsError);
  CHECK_THROWS_AS(effective_elasticity(-1, 100), PhysicsError);
  CHECK_THROWS_AS(effective_elasticity(NAN, 100), PhysicsError);
}

TEST_CASE("delta_d examples") {
  auto g = delta_d(8.02, 8.00, 7.98, 8.01);
  CHECK(g.max == near(0.02));
  CHECK(g.min == near(-0.03));
  g = delta_d(8, 8, 8, 8);
  CHECK(g.max == 0.0);
  CHECK(g.min == 0.0);
  g = delta_d(9, 8, 9, 8);
  CHECK(g.max == 1.0);
  CHECK(g.min == 1.0);
  CHECK_THROWS_AS(delta_d(INFINITY, 8, 8, 8), PhysicsError);
}

TEST_CASE("delta_d_mean examples") {
  CHECK(delta_d_mean(0.02, -0.03, 1.0) == near(0.02));
  CHECK(delta_d_mean(0.02, -0.03, 0.0) == near(-0.03));
  CHECK(delta_d_mean(0.02, -0.03, 0.5) == near(-0.005));
  CHECK_THROWS_AS(delta_d_mean(0.02, -0.03, 1.1), PhysicsError);
  CHECK_THROWS_AS(delta_d_mean(0.02, -0.03, -0.1), PhysicsError);
}

TEST_CASE("leak_tol_machine examples") {
  CHECK(leak_tol_machine(0.01, 0.02, 0, 100) == near(0.01));
  CHECK(leak_tol_machine(0.01, 0.02, 100, 100) == near(0.03));
  CHECK(leak_tol_machine(0, 1, 50, 100) == near(0.5));
  CHECK_THROWS_AS(leak_tol_machine(0.01, 0, 0, 100), PhysicsError);
  CHECK_THROWS_AS(leak_tol_machine(0.01, 0.02, 0, 0), PhysicsError);
}

TEST_CASE("leak_area_pf examples") {
  CHECK(leak_area_pf(0.02, -0.03, 0.01, 0.5) == near(0.005));
  CHECK(leak_area_pf(0, 0, 0.01, 0.7) == 0.0);
  CHECK(leak_area_pf(0.05, 0.02, 0.01, 1.0) == near(0.04));
  CHECK_THROWS_AS(leak_area_pf(0.05, 0.02, 0.01, 2.0), PhysicsError);
}

TEST_CASE("leakage sums") {
  CHECK(a_leak_mv(-0.3) == 0.0);
  CHECK(a_leak_mv(0.0) == 0.0);
  CHECK(a_leak_mv(0.7) == 0.7);
  CHECK(a_leak_bore(0.1, 0.2) == near(0.3));
  CHECK(a_leak_total(std::vector<double>{}) == 0.0);
  CHECK(a_leak_total(std::vector<double>{0.1, 0, 0.05}) == near(0.15));
  CHECK_THROWS_AS(a_leak_bore(-0.1, 0.2), PhysicsError);
  CHECK_THROWS_AS(a_leak_total(std::vector<double>{0.1, -1}), PhysicsError);
}

TEST_CASE("stiffness and force examples") {
  CHECK(pf_stiffness(1000, 0.02, 0.02, 75, 75) == near(1000));
  CHECK(pf_stiffness(1000, 0.04, 0.02, 75, 150) == near(1000));
  CHECK(pf_stiffness(1000, 0.04, 0.02, 150, 75) == near(4000));
  CHECK_THROWS_AS(pf_stiffness(0, 0.04, 0.02, 150, 75), PhysicsError);

  CHECK(total_stiffness(2000, 2000) == near(1000));
  CHECK(total_stiffness(1000, 3000) == near(750));
  CHECK(total_stiffness(5, 7) < 5);
  CHECK_THROWS_AS(total_stiffness(0, 7), PhysicsError);

  CHECK(pressing_force(5, 2000) == near(10000));
  CHECK(pressing_force(1, 1234.5) == 1234.5);
  CHECK(pressing_force(0.5, 2000) == near(1000));
}

TEST_CASE("displacement and peak excursion examples") {
  auto d = displacement(10000, 1000, 2);
  CHECK(d.ds_grad == near(10));
  CHECK(d.s_grad == near(12));
  d = displacement(0, 1234, 3.5);
  CHECK(d.ds_grad == 0.0);
  CHECK(d.s_grad == 3.5);
  d = displacement(500, 500, 0);
  CHECK(d.ds_grad == 1.0);
  CHECK(d.s_grad == 1.0);
  CHECK_THROWS_AS(displacement(1, 0, 0), PhysicsError);

  auto p = max_force_and_displacement(10000, 500, 1000, 12);
  CHECK(p.f_max == near(10500));
  CHECK(p.ds_max == near(0.5));
  CHECK(p.s_max == near(12.5));
  p = max_force_and_displacement(321, 0, 9, 4);
  CHECK(p.f_max == 321);
  CHECK(p.ds_max == 0.0);
  CHECK(p.s_max == 4);
  p = max_force_and_displacement(100, 100, 100, 0);
  CHECK(p.f_max == 200);
  CHECK(p.ds_max == 1);
  CHECK(p.s_max == 1);
  CHECK_THROWS_AS(max_force_and_displacement(100, -1, 100, 0), PhysicsError);
}

TEST_CASE("force excess and quality monitoring") {
  CHECK(delta_force_relu(10500, 11000) == 0.0);
  CHECK(delta_force_relu(10500, 10000) == 500.0);
  CHECK(delta_force_relu(777, 777) == 0.0);

  CHECK(mp_good(5, 3, 7));
  CHECK(mp_good(3, 3, 7));
  CHECK(mp_good(7, 3, 7));
  CHECK_FALSE(mp_good(7.001, 3, 7));
  CHECK_THROWS_AS(mp_good(5, 7, 3), PhysicsError);

  CHECK(process_result({true, true, true}));
  CHECK_FALSE(process_result({true, false, true}));
  CHECK_FALSE(process_result({false}));
  CHECK_THROWS_AS(process_result({}), PhysicsError);
}

TEST_CASE("property: monotonicity, symmetry, non-negativity") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> dd(-0.05, 0.05), tol(0.0, 0.03), beta(0.0, 1.0),
      pos(1.0, 1e5), step(0.0, 0.01), f(0.0, 2e4);
  for (int i = 0; i < 1000; ++i) {
    const double a = dd(rng), b = dd(rng), t = tol(rng), w = beta(rng), h = step(rng);
    const double base = leak_area_pf(a, b, t, w);
    CHECK(base >= 0.0);
    CHECK(leak_area_pf(a + h, b, t, w) >= base);
    CHECK(leak_area_pf(a, b + h, t, w) >= base);
    CHECK(leak_area_pf(a, b, t + h, w) <= base);

    const double x = pos(rng), y = pos(rng);
    CHECK(effective_elasticity(x, y) == effective_elasticity(y, x));
    CHECK(total_stiffness(x, y) == total_stiffness(y, x));
    CHECK(effective_elasticity(x, y) < std::min(x, y));
    CHECK(total_stiffness(x, y) < std::min(x, y));

    CHECK(a_leak_mv(a) >= 0.0);
    const double fm = f(rng), lim = f(rng);
    CHECK((delta_force_relu(fm, lim) == 0.0) == (fm <= lim));
  }
}

TEST_CASE("formula registry") {
  CHECK(formulas().size() == 13);
  for (const auto& info : formulas()) {
    CHECK(formula_info(info.formula).name == info.name);
    CHECK(formula_from_name(info.name) == info.formula);
  }
  CHECK_FALSE(formula_from_name("nope").has_value());
  const double p[] = {1.0};
  CHECK_THROWS_AS(evaluate(Formula::PressingForce, p, {}), PhysicsError);
}

// Wire one bore per Appendix C into an ScmGraph with fixed inputs and compare
// against calling the pure functions in sequence.
TEST_CASE("composition check on a hand-built 1-bore instance") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const MvParams mv{190000 + 20000 * u(rng), 0.004 * u(rng) - 0.001, 7.02 + 0.01 * u(rng),
                      7.0 + 0.01 * u(rng), 3.9 + 0.2 * u(rng)};
    const BoreParams bore{65000 + 10000 * u(rng), 6.99 + 0.01 * u(rng), 6.98 + 0.01 * u(rng)};
    MachineParams m;
    m.k_stiff_machine = 60000;
    m.k_stiff_pf_ref = 4000;
    m.k_stiff_pf_dd_ref = 0.025;
    m.k_stiff_pf_e_ref = 52000;
    m.beta_asym = u(rng);
    m.leak_tol_0 = 0.03 + 0.02 * u(rng);
    m.leak_tol_ref = 0.002;
    m.d_force_ref = 1000;
    m.f_lim = 15000 + 3000 * u(rng);
    m.s0 = 12;
    const double trig = 500 * u(rng);

    ScmGraph g("bore");
    auto fixed = [&](const std::string& name, double v) {
      return g.add_node(name, domain::Continuous{}, Visibility::Observable,
                        mech::ExogenousNoise{dist::PointMass{v}});
    };
    auto formula = [&](const std::string& name, Formula f, std::vector<NodeId> ps,
                       std::vector<double> cs) {
      return g.add_node(name, domain::Continuous{}, Visibility::Observable,
                        mech::PhysicsFormula{f, std::move(ps), std::move(cs), std::nullopt});
    };
    const NodeId e_mv = fixed("E_mv", mv.e_mv);
    const NodeId a_raw = fixed("A_raw", mv.a_leak_mv_raw);
    const NodeId dmv_max = fixed("D_mvMax", mv.d_mv_max);
    const NodeId dmv_min = fixed("D_mvMin", mv.d_mv_min);
    const NodeId l_pf = fixed("L_mvPF", mv.l_mv_pf);
    const NodeId e_bore = fixed("E_bore", bore.e_bore);
    const NodeId db_max = fixed("D_boreMax", bore.d_bore_max);
    const NodeId db_min = fixed("D_boreMin", bore.d_bore_min);
    const NodeId trigger = fixed("Trigger", trig);

    const NodeId ddmax = formula("ddmax", Formula::DeltaDMax, {dmv_max, db_min}, {});
    const NodeId ddmin = formula("ddmin", Formula::DeltaDMin, {dmv_min, db_max}, {});
    const NodeId ddmean = g.add_node("ddmean", domain::Continuous{}, Visibility::Observable,
                                     mech::AffineMix{m.beta_asym, ddmax, ddmin});
    const NodeId eeff = formula("eeff", Formula::EffectiveElasticity, {e_bore, e_mv}, {});
    const NodeId kpf = formula("kpf", Formula::PfStiffness, {ddmean, eeff},
                               {m.k_stiff_pf_ref, m.k_stiff_pf_dd_ref, m.k_stiff_pf_e_ref});
    const NodeId k = formula("k", Formula::TotalStiffness, {kpf}, {m.k_stiff_machine});
    const NodeId force = formula("force", Formula::PressingForce, {l_pf, kpf}, {});
    const NodeId dsg = formula("dsg", Formula::DisplacementGrad, {force, k}, {});
    const NodeId sg = formula("sg", Formula::ToolPosition, {dsg}, {m.s0});
    const NodeId fmax = g.add_node("fmax", domain::Continuous{}, Visibility::Observable,
                                   mech::Sum{{force, trigger}});
    const NodeId dsmax =
        formula("dsmax", Formula::OvershootDisplacement, {trigger}, {m.k_stiff_machine});
    const NodeId smax = g.add_node("smax", domain::Continuous{}, Visibility::Observable,
                                   mech::Sum{{sg, dsmax}});
    const NodeId chamber = g.add_node("chamber_fmax", domain::Continuous{},
                                      Visibility::Observable, mech::Max{{fmax}});
    const NodeId excess = formula("excess", Formula::ForceExcess, {chamber}, {m.f_lim});
    const NodeId ltol = formula("ltol", Formula::LeakTolerance, {excess},
                                {m.leak_tol_0, m.leak_tol_ref, m.d_force_ref});
    const NodeId apf =
        formula("apf", Formula::LeakAreaPf, {ddmax, ddmin, ltol}, {m.beta_asym});
    const NodeId amv = g.add_node("amv", domain::Continuous{}, Visibility::Observable,
                                  mech::Relu{a_raw});
    const NodeId abore = g.add_node("abore", domain::Continuous{}, Visibility::Observable,
                                    mech::Sum{{amv, apf}});
    REQUIRE(validate(g).ok());

    const Dataset ds = sample_batch(g, BatchConfig{0, {}, 1, {}}, 1, SamplerOptions{1});

    // Pure-function sequence.
    const auto gap = delta_d(mv.d_mv_max, bore.d_bore_min, mv.d_mv_min, bore.d_bore_max);
    const double mean = delta_d_mean(gap.max, gap.min, m.beta_asym);
    const double ee = effective_elasticity(bore.e_bore, mv.e_mv);
    const double kp = pf_stiffness(m.k_stiff_pf_ref, mean, m.k_stiff_pf_dd_ref, ee,
                                   m.k_stiff_pf_e_ref);
    const double kt = total_stiffness(m.k_stiff_machine, kp);
    const double fo = pressing_force(mv.l_mv_pf, kp);
    const auto disp = displacement(fo, kt, m.s0);
    const auto peak = max_force_and_displacement(fo, trig, m.k_stiff_machine, disp.s_grad);
    const double ex = delta_force_relu(peak.f_max, m.f_lim);
    const double lt = leak_tol_machine(m.leak_tol_0, m.leak_tol_ref, ex, m.d_force_ref);
    const double ap = leak_area_pf(gap.max, gap.min, lt, m.beta_asym);
    const double ab = a_leak_bore(a_leak_mv(mv.a_leak_mv_raw), ap);

    CHECK(ds.at(0, ddmean) == near(mean));
    CHECK(ds.at(0, eeff) == near(ee));
    CHECK(ds.at(0, k) == near(kt));
    CHECK(ds.at(0, force) == near(fo));
    CHECK(ds.at(0, sg) == near(disp.s_grad));
    CHECK(ds.at(0, fmax) == near(peak.f_max));
    CHECK(ds.at(0, smax) == near(peak.s_max));
    CHECK(ds.at(0, excess) == near(ex));
    CHECK(ds.at(0, ltol) == near(lt));
    CHECK(ds.at(0, apf) == Approx(ap).epsilon(1e-12).scale(1e-9));
    CHECK(ds.at(0, abore) == Approx(ab).epsilon(1e-12).scale(1e-9));
  }
}
