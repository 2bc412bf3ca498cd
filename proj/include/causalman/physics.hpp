#pragma once

// Press-fit structural equations for magnetic valves (MV) inserted into the
// bores of a hydraulic unit (HU). Units: mm, mm^2, N, N/mm, MPa.
// Every function throws PhysicsError on non-finite input or when a
// precondition is violated.

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace causalman::physics {

struct MvParams {
  double e_mv = 0.0;           // elasticity
  double a_leak_mv_raw = 0.0;  // pre-ReLU leakage area
  double d_mv_max = 0.0;
  double d_mv_min = 0.0;
  double l_mv_pf = 0.0;  // axial length engaged by the press fit
};

struct BoreParams {
  double e_bore = 0.0;
  double d_bore_max = 0.0;
  double d_bore_min = 0.0;
};

struct MachineParams {
  double k_stiff_machine = 0.0;
  double k_stiff_pf_ref = 0.0;
  double k_stiff_pf_dd_ref = 0.0;
  double k_stiff_pf_e_ref = 0.0;
  double beta_asym = 0.5;
  double leak_tol_0 = 0.0;
  double leak_tol_ref = 0.0;
  double d_force_ref = 0.0;
  double f_lim = 0.0;
  double s0 = 0.0;
  double trigger_stop_sigma = 0.0;  // HalfNormal scale of the trigger overshoot

  bool operator==(const MachineParams&) const = default;
};

// Throws PhysicsError describing the first violated invariant.
void check(const MvParams& p);
void check(const BoreParams& p);
void check(const MachineParams& p);

double effective_elasticity(double e_bore, double e_mv);

struct DiameterGap {
  double max = 0.0;  // d_mv_max - d_bore_min
  double min = 0.0;  // d_mv_min - d_bore_max
};
DiameterGap delta_d(double d_mv_max, double d_bore_min, double d_mv_min,
                    double d_bore_max);

double delta_d_mean(double dd_max, double dd_min, double beta_asym);

double leak_tol_machine(double leak_tol_0, double leak_tol_ref,
                        double d_force_relu, double d_force_ref);

// beta * relu(dd_max - tol) + (1 - beta) * relu(dd_min - tol)
double leak_area_pf(double dd_max, double dd_min, double leak_tol,
                    double beta_asym);

double a_leak_mv(double a_raw);
double a_leak_bore(double a_leak_mv, double a_leak_pf);
double a_leak_total(std::span<const double> areas);

double pf_stiffness(double k_ref, double dd_mean, double dd_ref, double e_eff,
                    double e_ref);
double total_stiffness(double k_machine, double k_pf);
double pressing_force(double l_mv_pf, double k_stiff_pf);

struct Displacement {
  double ds_grad = 0.0;
  double s_grad = 0.0;
};
Displacement displacement(double force, double k_stiff, double s0);

struct PeakExcursion {
  double f_max = 0.0;
  double ds_max = 0.0;
  double s_max = 0.0;
};
PeakExcursion max_force_and_displacement(double force, double df_trigger_stop,
                                         double k_stiff_machine, double s_grad);

double delta_force_relu(double f_max_chamber, double f_lim);

// Inclusive at both limits.
bool mp_good(double x, double ltl, double utl);
bool process_result(const std::vector<bool>& flags);

// e_hu * (1 + eps): per-bore elasticity scattered around the HU elasticity.
double bore_elasticity(double e_hu, double eps);

// ---------------------------------------------------------------------------
// Formula registry used by PhysicsFormula mechanisms.
// ---------------------------------------------------------------------------

enum class Formula {
  DeltaDMax,
  DeltaDMin,
  EffectiveElasticity,
  PfStiffness,
  TotalStiffness,
  PressingForce,
  DisplacementGrad,
  ToolPosition,
  OvershootDisplacement,
  ForceExcess,
  LeakTolerance,
  LeakAreaPf,
  BoreElasticity,
};

struct FormulaInfo {
  Formula formula;
  std::string_view name;
  std::vector<std::string_view> parent_roles;
  std::vector<std::string_view> constants;
  bool needs_noise = false;
};

const std::vector<FormulaInfo>& formulas();
const FormulaInfo& formula_info(Formula f);
std::optional<Formula> formula_from_name(std::string_view name);

// Parents and constants in registry order. `noise` is ignored by formulas
// that take none.
double evaluate(Formula f, std::span<const double> parents,
                std::span<const double> constants, double noise = 0.0);

}  // namespace causalman::physics
