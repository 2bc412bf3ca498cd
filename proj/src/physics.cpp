#include "causalman/physics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "causalman/errors.hpp"

namespace causalman::physics {

namespace {

void finite(std::string_view op, std::initializer_list<double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw PhysicsError(std::string(op) + ": non-finite input");
    }
  }
}

void positive(std::string_view op, std::string_view what, double v) {
  if (!(v > 0.0)) {
    throw PhysicsError(std::string(op) + ": " + std::string(what) +
                       " must be positive, got " + std::to_string(v));
  }
}

void unit_interval(std::string_view op, double beta) {
  if (!(beta >= 0.0 && beta <= 1.0)) {
    throw PhysicsError(std::string(op) + ": beta_asym must lie in [0, 1], got " +
                       std::to_string(beta));
  }
}

double relu(double x) { return x > 0.0 ? x : 0.0; }

}  // namespace

void check(const MvParams& p) {
  finite("MvParams", {p.e_mv, p.a_leak_mv_raw, p.d_mv_max, p.d_mv_min, p.l_mv_pf});
  positive("MvParams", "e_mv", p.e_mv);
  positive("MvParams", "d_mv_min", p.d_mv_min);
  positive("MvParams", "l_mv_pf", p.l_mv_pf);
  if (p.d_mv_max < p.d_mv_min) throw PhysicsError("MvParams: d_mv_max < d_mv_min");
}

void check(const BoreParams& p) {
  finite("BoreParams", {p.e_bore, p.d_bore_max, p.d_bore_min});
  positive("BoreParams", "e_bore", p.e_bore);
  positive("BoreParams", "d_bore_min", p.d_bore_min);
  if (p.d_bore_max < p.d_bore_min) {
    throw PhysicsError("BoreParams: d_bore_max < d_bore_min");
  }
}

void check(const MachineParams& p) {
  finite("MachineParams",
         {p.k_stiff_machine, p.k_stiff_pf_ref, p.k_stiff_pf_dd_ref,
          p.k_stiff_pf_e_ref, p.beta_asym, p.leak_tol_0, p.leak_tol_ref,
          p.d_force_ref, p.f_lim, p.s0, p.trigger_stop_sigma});
  positive("MachineParams", "k_stiff_machine", p.k_stiff_machine);
  positive("MachineParams", "k_stiff_pf_ref", p.k_stiff_pf_ref);
  positive("MachineParams", "k_stiff_pf_dd_ref", p.k_stiff_pf_dd_ref);
  positive("MachineParams", "k_stiff_pf_e_ref", p.k_stiff_pf_e_ref);
  positive("MachineParams", "leak_tol_ref", p.leak_tol_ref);
  positive("MachineParams", "d_force_ref", p.d_force_ref);
  positive("MachineParams", "f_lim", p.f_lim);
  positive("MachineParams", "trigger_stop_sigma", p.trigger_stop_sigma);
  unit_interval("MachineParams", p.beta_asym);
}

double effective_elasticity(double e_bore, double e_mv) {
  finite("effective_elasticity", {e_bore, e_mv});
  positive("effective_elasticity", "e_bore", e_bore);
  positive("effective_elasticity", "e_mv", e_mv);
  return 1.0 / (1.0 / e_bore + 1.0 / e_mv);
}

DiameterGap delta_d(double d_mv_max, double d_bore_min, double d_mv_min,
                    double d_bore_max) {
  finite("delta_d", {d_mv_max, d_bore_min, d_mv_min, d_bore_max});
  return {d_mv_max - d_bore_min, d_mv_min - d_bore_max};
}

double delta_d_mean(double dd_max, double dd_min, double beta_asym) {
  finite("delta_d_mean", {dd_max, dd_min, beta_asym});
  unit_interval("delta_d_mean", beta_asym);
  return beta_asym * dd_max + (1.0 - beta_asym) * dd_min;
}

double leak_tol_machine(double leak_tol_0, double leak_tol_ref,
                        double d_force_relu, double d_force_ref) {
  finite("leak_tol_machine", {leak_tol_0, leak_tol_ref, d_force_relu, d_force_ref});
  positive("leak_tol_machine", "leak_tol_ref", leak_tol_ref);
  positive("leak_tol_machine", "d_force_ref", d_force_ref);
  if (d_force_relu < 0.0) {
    throw PhysicsError("leak_tol_machine: d_force_relu must be >= 0");
  }
  return leak_tol_0 + leak_tol_ref * d_force_relu / d_force_ref;
}

double leak_area_pf(double dd_max, double dd_min, double leak_tol,
                    double beta_asym) {
  finite("leak_area_pf", {dd_max, dd_min, leak_tol, beta_asym});
  unit_interval("leak_area_pf", beta_asym);
  return beta_asym * relu(dd_max - leak_tol) +
         (1.0 - beta_asym) * relu(dd_min - leak_tol);
}

double a_leak_mv(double a_raw) {
  finite("a_leak_mv", {a_raw});
  return relu(a_raw);
}

double a_leak_bore(double a_leak_mv, double a_leak_pf) {
  finite("a_leak_bore", {a_leak_mv, a_leak_pf});
  if (a_leak_mv < 0.0 || a_leak_pf < 0.0) {
    throw PhysicsError("a_leak_bore: leakage areas must be >= 0");
  }
  return a_leak_mv + a_leak_pf;
}

double a_leak_total(std::span<const double> areas) {
  double total = 0.0;
  for (double a : areas) {
    finite("a_leak_total", {a});
    if (a < 0.0) throw PhysicsError("a_leak_total: leakage areas must be >= 0");
    total += a;
  }
  return total;
}

double pf_stiffness(double k_ref, double dd_mean, double dd_ref, double e_eff,
                    double e_ref) {
  finite("pf_stiffness", {k_ref, dd_mean, dd_ref, e_eff, e_ref});
  positive("pf_stiffness", "k_ref", k_ref);
  positive("pf_stiffness", "dd_ref", dd_ref);
  positive("pf_stiffness", "e_ref", e_ref);
  return k_ref * (dd_mean / dd_ref) * (e_eff / e_ref);
}

double total_stiffness(double k_machine, double k_pf) {
  finite("total_stiffness", {k_machine, k_pf});
  positive("total_stiffness", "k_machine", k_machine);
  positive("total_stiffness", "k_pf", k_pf);
  return 1.0 / (1.0 / k_machine + 1.0 / k_pf);
}

double pressing_force(double l_mv_pf, double k_stiff_pf) {
  finite("pressing_force", {l_mv_pf, k_stiff_pf});
  positive("pressing_force", "l_mv_pf", l_mv_pf);
  positive("pressing_force", "k_stiff_pf", k_stiff_pf);
  return l_mv_pf * k_stiff_pf;
}

Displacement displacement(double force, double k_stiff, double s0) {
  finite("displacement", {force, k_stiff, s0});
  positive("displacement", "k_stiff", k_stiff);
  const double ds = force / k_stiff;
  return {ds, s0 + ds};
}

PeakExcursion max_force_and_displacement(double force, double df_trigger_stop,
                                         double k_stiff_machine, double s_grad) {
  finite("max_force_and_displacement",
         {force, df_trigger_stop, k_stiff_machine, s_grad});
  positive("max_force_and_displacement", "k_stiff_machine", k_stiff_machine);
  if (df_trigger_stop < 0.0) {
    throw PhysicsError("max_force_and_displacement: df_trigger_stop must be >= 0");
  }
  const double ds_max = df_trigger_stop / k_stiff_machine;
  return {force + df_trigger_stop, ds_max, s_grad + ds_max};
}

double delta_force_relu(double f_max_chamber, double f_lim) {
  finite("delta_force_relu", {f_max_chamber, f_lim});
  return relu(f_max_chamber - f_lim);
}

bool mp_good(double x, double ltl, double utl) {
  finite("mp_good", {x, ltl, utl});
  if (ltl > utl) throw PhysicsError("mp_good: ltl > utl");
  return ltl <= x && x <= utl;
}

bool process_result(const std::vector<bool>& flags) {
  if (flags.empty()) throw PhysicsError("process_result: no MpGood flags");
  return std::all_of(flags.begin(), flags.end(), [](bool f) { return f; });
}

double bore_elasticity(double e_hu, double eps) {
  finite("bore_elasticity", {e_hu, eps});
  positive("bore_elasticity", "e_hu", e_hu);
  if (!(eps > -1.0)) throw PhysicsError("bore_elasticity: eps must exceed -1");
  return e_hu * (1.0 + eps);
}

// ---------------------------------------------------------------------------

const std::vector<FormulaInfo>& formulas() {
  static const std::vector<FormulaInfo> registry = {
      {Formula::DeltaDMax, "delta_d_max", {"d_mv_max", "d_bore_min"}, {}, false},
      {Formula::DeltaDMin, "delta_d_min", {"d_mv_min", "d_bore_max"}, {}, false},
      {Formula::EffectiveElasticity, "effective_elasticity", {"e_bore", "e_mv"}, {}, false},
      {Formula::PfStiffness,
       "pf_stiffness",
       {"dd_mean", "e_eff"},
       {"k_stiff_pf_ref", "k_stiff_pf_dd_ref", "k_stiff_pf_e_ref"},
       false},
      {Formula::TotalStiffness, "total_stiffness", {"k_stiff_pf"}, {"k_stiff_machine"}, false},
      {Formula::PressingForce, "pressing_force", {"l_mv_pf", "k_stiff_pf"}, {}, false},
      {Formula::DisplacementGrad, "displacement_grad", {"force", "k_stiff"}, {}, false},
      {Formula::ToolPosition, "tool_position", {"ds_grad"}, {"s0"}, false},
      {Formula::OvershootDisplacement,
       "overshoot_displacement",
       {"df_trigger_stop"},
       {"k_stiff_machine"},
       false},
      {Formula::ForceExcess, "force_excess", {"f_max_chamber"}, {"f_lim"}, false},
      {Formula::LeakTolerance,
       "leak_tolerance",
       {"d_force_relu"},
       {"leak_tol_0", "leak_tol_ref", "d_force_ref"},
       false},
      {Formula::LeakAreaPf, "leak_area_pf", {"dd_max", "dd_min", "leak_tol"}, {"beta_asym"}, false},
      {Formula::BoreElasticity, "bore_elasticity", {"e_hu"}, {}, true},
  };
  return registry;
}

const FormulaInfo& formula_info(Formula f) {
  const auto& registry = formulas();
  const auto i = static_cast<std::size_t>(f);
  if (i >= registry.size()) throw PhysicsError("unknown formula id");
  return registry[i];  // registry is listed in enum order
}

std::optional<Formula> formula_from_name(std::string_view name) {
  for (const auto& info : formulas()) {
    if (info.name == name) return info.formula;
  }
  return std::nullopt;
}

double evaluate(Formula f, std::span<const double> p, std::span<const double> c,
                double noise) {
  const auto& info = formula_info(f);
  if (p.size() != info.parent_roles.size() || c.size() != info.constants.size()) {
    throw PhysicsError(std::string(info.name) + ": wrong number of arguments");
  }
  switch (f) {
    case Formula::DeltaDMax:
      return delta_d(p[0], p[1], p[0], p[1]).max;
    case Formula::DeltaDMin:
      // d_mv_min - d_bore_max
      return delta_d(p[0], p[1], p[0], p[1]).min;
    case Formula::EffectiveElasticity:
      return effective_elasticity(p[0], p[1]);
    case Formula::PfStiffness:
      return pf_stiffness(c[0], p[0], c[1], p[1], c[2]);
    case Formula::TotalStiffness:
      return total_stiffness(c[0], p[0]);
    case Formula::PressingForce:
      return pressing_force(p[0], p[1]);
    case Formula::DisplacementGrad:
      return displacement(p[0], p[1], 0.0).ds_grad;
    case Formula::ToolPosition:
      finite("tool_position", {p[0], c[0]});
      return c[0] + p[0];
    case Formula::OvershootDisplacement:
      return max_force_and_displacement(0.0, p[0], c[0], 0.0).ds_max;
    case Formula::ForceExcess:
      return delta_force_relu(p[0], c[0]);
    case Formula::LeakTolerance:
      return leak_tol_machine(c[0], c[1], p[0], c[2]);
    case Formula::LeakAreaPf:
      return leak_area_pf(p[0], p[1], p[2], c[0]);
    case Formula::BoreElasticity:
      return bore_elasticity(p[0], noise);
  }
  throw PhysicsError("unknown formula id");
}

}  // namespace causalman::physics
