#include "causalman/line_builder.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "causalman/errors.hpp"
#include "causalman/projection.hpp"

namespace causalman {

namespace {
constexpr auto kObs = Visibility::Observable;
constexpr auto kLat = Visibility::Latent;
}  // namespace

const std::vector<RoleInfo>& roles() {
  static const std::vector<RoleInfo> table = {
      {Role::ProductType, "product_type", "HU_Block_Type_ID_num", "", kObs},
      {Role::HuElasticity, "hu_elasticity", "E_hu", "MPa", kLat},
      {Role::ProcessResult, "process_result", "ProcessResult", "", kObs},
      {Role::Supplier, "supplier", "MV_Supplier_ID", "", kObs},
      {Role::MvElasticity, "mv_elasticity", "E_mv", "MPa", kLat},
      {Role::MvLeakRaw, "mv_leak_raw", "A_leak_MV_raw", "mm2", kLat},
      {Role::MvDiameterMax, "mv_diameter_max", "D_mvMax", "mm", kLat},
      {Role::MvDiameterMin, "mv_diameter_min", "D_mvMin", "mm", kLat},
      {Role::MvLength, "mv_length", "L_mvPF", "mm", kLat},
      {Role::BoreDiameterMax, "bore_diameter_max", "D_boreMax", "mm", kLat},
      {Role::BoreDiameterMin, "bore_diameter_min", "D_boreMin", "mm", kLat},
      {Role::BoreElasticity, "bore_elasticity", "E_bore", "MPa", kLat},
      {Role::DeltaDMax, "delta_d_max", "DeltaD_max", "mm", kLat},
      {Role::DeltaDMin, "delta_d_min", "DeltaD_min", "mm", kLat},
      {Role::DeltaDMean, "delta_d_mean", "DeltaD_mean", "mm", kLat},
      {Role::EffElasticity, "effective_elasticity", "E_eff", "MPa", kLat},
      {Role::PfStiffness, "pf_stiffness", "K_stiffPF", "N/mm", kLat},
      {Role::Stiffness, "stiffness", "K_stiff", "N/mm", kLat},
      {Role::Force, "force", "Force", "N", kObs},
      {Role::DsGrad, "ds_grad", "Delta_s_grad", "mm", kObs},
      {Role::SGrad, "s_grad", "s_grad", "mm", kObs},
      {Role::TriggerStop, "trigger_stop", "DeltaF_trigger_stop", "N", kLat},
      {Role::FMax, "f_max", "F_max", "N", kObs},
      {Role::DsMax, "ds_max", "Delta_s_max", "mm", kLat},
      {Role::SMax, "s_max", "s_max", "mm", kObs},
      {Role::LeakMv, "leak_mv", "A_leak_MV", "mm2", kLat},
      {Role::LeakPf, "leak_pf", "A_leak_PF", "mm2", kLat},
      {Role::LeakBore, "leak_bore", "A_leak_Bore", "mm2", kLat},
      {Role::ChamberFMax, "chamber_f_max", "F_max", "N", kLat},
      {Role::ForceExcess, "force_excess", "DeltaForce_ReLU", "N", kLat},
      {Role::LeakTol, "leak_tol", "LeakTolMachine", "mm", kLat},
      {Role::LeakTotal, "leak_total", "A_leak_tot", "mm2", kLat},
      {Role::Ltl, "ltl", "LTL", "", kObs},
      {Role::Utl, "utl", "UTL", "", kObs},
      {Role::MpGood, "mp_good", "MpGood", "", kObs},
  };
  return table;
}

const RoleInfo& role_info(Role role) { return roles()[static_cast<std::size_t>(role)]; }

std::optional<Role> role_from_key(std::string_view key) {
  for (const auto& r : roles()) {
    if (key == r.key) return r.role;
  }
  return std::nullopt;
}

namespace {

bool is_bore_attribute(Role r) { return r >= Role::MvElasticity && r <= Role::LeakBore; }
bool is_chamber_attribute(Role r) { return r >= Role::ChamberFMax && r <= Role::LeakTotal; }

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError("line config: " + message);
}

void check_weights(const std::vector<std::string>& labels, const std::vector<double>& weights,
                   const std::string& what) {
  require(!labels.empty(), what + " labels must not be empty");
  require(weights.size() == labels.size(), what + " weights must match labels");
  double total = 0.0;
  for (double w : weights) {
    require(std::isfinite(w) && w >= 0.0, what + " weights must be non-negative");
    total += w;
  }
  require(std::abs(total - 1.0) <= 1e-9, what + " weights must sum to 1");
}

}  // namespace

physics::MachineParams nominal_machine() {
  physics::MachineParams m;
  m.k_stiff_machine = 60000.0;
  m.k_stiff_pf_ref = 4000.0;
  m.k_stiff_pf_dd_ref = 0.025;
  m.k_stiff_pf_e_ref = 52000.0;
  m.beta_asym = 0.5;
  m.leak_tol_0 = 0.041;
  m.leak_tol_ref = 0.002;
  m.d_force_ref = 1000.0;
  m.f_lim = 17000.0;
  m.s0 = 12.0;
  m.trigger_stop_sigma = 250.0;
  return m;
}

const physics::MachineParams& LineConfig::machine(std::size_t k) const {
  return machines.size() == 1 ? machines.front() : machines.at(k);
}

Visibility LineConfig::visibility_of(Role role) const {
  const auto it = visibility.find(role);
  return it != visibility.end() ? it->second : role_info(role).visibility;
}

const std::vector<std::string>& table_names() {
  static const std::vector<std::string> names = {"E_mv",    "A_leak_MV_raw", "D_mvMax",
                                                 "D_mvMin", "L_mvPF",        "D_boreMax",
                                                 "D_boreMin", "E_hu"};
  return names;
}

bool table_by_supplier(std::string_view table) {
  return table == "E_mv" || table == "A_leak_MV_raw" || table == "D_mvMax" ||
         table == "D_mvMin" || table == "L_mvPF";
}

void check(const LineConfig& c) {
  require(!c.sections.empty(), "at least one section required");
  for (const auto& s : c.sections) {
    require(!s.empty() && std::all_of(s.begin(), s.end(),
                                      [](unsigned char ch) { return std::isalnum(ch); }),
            "section label '" + s + "' must be alphanumeric");
  }
  require(c.n_machines_per_section >= 1, "n_machines_per_section must be >= 1");
  require(!c.bores_per_chamber.empty(), "at least one chamber required");
  for (std::size_t b : c.bores_per_chamber) require(b >= 1, "every chamber needs a bore");
  check_weights(c.suppliers, c.supplier_weights, "supplier");
  check_weights(c.product_types, c.type_weights, "product type");
  require(std::isfinite(c.e_bore_spread) && c.e_bore_spread > 0.0,
          "e_bore_spread must be positive");
  require(c.machines.size() == 1 || c.machines.size() == c.n_machines(),
          "machines must hold one entry or one per machine");
  for (const auto& m : c.machines) {
    try {
      physics::check(m);
    } catch (const PhysicsError& e) {
      throw ConfigError(std::string("line config: ") + e.what());
    }
  }
  for (const auto& name : table_names()) {
    const auto it = c.tables.find(name);
    require(it != c.tables.end(), "missing parameter table " + name);
    const auto& t = it->second;
    require(t.by_supplier == table_by_supplier(name),
            "table " + name + " has the wrong key (by_supplier)");
    const std::size_t want = (t.by_supplier ? c.n_suppliers() : 1) * c.n_product_types();
    require(t.entries.size() == want, "incomplete table " + name);
    for (const auto& g : t.entries) {
      require(std::isfinite(g.mu) && std::isfinite(g.sigma) && g.sigma > 0.0,
              "table " + name + " needs finite mu and sigma > 0");
    }
  }
  for (const auto& [name, t] : c.tables) {
    require(std::find(table_names().begin(), table_names().end(), name) != table_names().end(),
            "unknown parameter table " + name);
  }
  auto check_monitors = [&](const std::vector<Monitor>& ms, bool bore) {
    std::vector<Role> seen;
    for (const auto& m : ms) {
      const std::string key = role_info(m.attribute).key;
      require(bore ? is_bore_attribute(m.attribute) : is_chamber_attribute(m.attribute),
              "attribute " + key + " cannot be monitored at " + (bore ? "bore" : "chamber") +
                  " level");
      require(std::find(seen.begin(), seen.end(), m.attribute) == seen.end(),
              "attribute " + key + " monitored twice");
      seen.push_back(m.attribute);
      require(m.windows.size() == c.n_product_types(),
              "monitor " + key + " needs one window per product type");
      for (const auto& w : m.windows) {
        require(std::isfinite(w.ltl) && std::isfinite(w.utl), "non-finite tolerance");
        require(w.ltl <= w.utl, "monitor " + key + " has ltl > utl");
      }
    }
  };
  check_monitors(c.bore_monitors, true);
  check_monitors(c.chamber_monitors, false);
  require(!c.bore_monitors.empty() || !c.chamber_monitors.empty(),
          "at least one monitor is needed to form a ProcessResult");
}

namespace {

class Builder {
 public:
  explicit Builder(const LineConfig& c) : c_(c), g_(c.name, "1") {}

  ScmGraph run() {
    type_ = g_.add_node("HU_HU_Block_Type_ID_num", domain::Categorical{c_.product_types},
                        c_.visibility_of(Role::ProductType),
                        mech::ExogenousNoise{dist::CategoricalDist{c_.type_weights}}, true);
    std::size_t k = 0;
    for (const auto& section : c_.sections) {
      for (std::size_t j = 1; j <= c_.n_machines_per_section; ++j) {
        machine(++k, section, j);
      }
    }
    return std::move(g_);
  }

 private:
  NodeId add(const std::string& name, Role role, Mechanism m, bool parameter = false) {
    const RoleInfo& info = role_info(role);
    return g_.add_node(name, domain::Continuous{info.unit}, c_.visibility_of(role), std::move(m),
                       parameter);
  }

  // ConditionalGaussian keyed on (supplier, type) or (type).
  mech::ConditionalGaussian gaussian(const std::string& table, std::optional<NodeId> supplier) {
    const ParameterTable& t = c_.tables.at(table);
    mech::ConditionalGaussian m;
    m.lower = t.lower;
    const auto nt = static_cast<std::uint32_t>(c_.n_product_types());
    if (t.by_supplier) {
      m.parents = {*supplier, type_};
      for (std::uint32_t s = 0; s < c_.n_suppliers(); ++s) {
        for (std::uint32_t ty = 0; ty < nt; ++ty) m.table[{s, ty}] = t.entries[s * nt + ty];
      }
    } else {
      m.parents = {type_};
      for (std::uint32_t ty = 0; ty < nt; ++ty) m.table[{ty}] = t.entries[ty];
    }
    return m;
  }

  mech::PhysicsFormula formula(physics::Formula f, std::vector<NodeId> parents,
                               std::vector<double> constants = {},
                               std::optional<Distribution> noise = std::nullopt) {
    return {f, std::move(parents), std::move(constants), std::move(noise)};
  }

  std::string attribute_unit(Role r) const { return role_info(r).unit; }

  void monitor(const std::string& prefix, Role attribute, NodeId x, const Monitor& m,
               std::vector<NodeId>& flags) {
    const std::string base = prefix + role_info(attribute).suffix;
    mech::ConditionalValue ltl{{type_}, {}}, utl{{type_}, {}};
    for (std::uint32_t t = 0; t < m.windows.size(); ++t) {
      ltl.table[{t}] = m.windows[t].ltl;
      utl.table[{t}] = m.windows[t].utl;
    }
    const domain::Continuous unit{attribute_unit(attribute)};
    const NodeId l = g_.add_node(base + "_LTL", unit, c_.visibility_of(Role::Ltl), ltl);
    const NodeId u = g_.add_node(base + "_UTL", unit, c_.visibility_of(Role::Utl), utl);
    flags.push_back(g_.add_node(base + "_MpGood", domain::Boolean{},
                                c_.visibility_of(Role::MpGood), mech::ToleranceCheck{x, l, u}));
  }

  struct Bore {
    std::size_t t = 0;
    std::map<Role, NodeId> ids;
  };

  void machine(std::size_t k, const std::string& section, std::size_t j) {
    const physics::MachineParams& mp = c_.machine(k - 1);
    const std::string hu = "HU_M" + std::to_string(k) + "_";
    const NodeId e_hu = add(hu + "E_hu", Role::HuElasticity, gaussian("E_hu", std::nullopt));
    std::vector<NodeId> flags;
    std::size_t t = 0;
    for (std::size_t ch = 0; ch < c_.n_chambers(); ++ch) {
      const std::string cp = "PF_M" + std::to_string(k) + "_C" + std::to_string(ch + 1) + "_";
      std::vector<Bore> bores;
      for (std::size_t b = 0; b < c_.bores_per_chamber[ch]; ++b) {
        bores.push_back(bore(k, ++t, e_hu, mp));
      }
      std::vector<NodeId> fmax;
      for (const auto& b : bores) fmax.push_back(b.ids.at(Role::FMax));
      std::map<Role, NodeId> cid;
      cid[Role::ChamberFMax] = add(cp + "F_max", Role::ChamberFMax, mech::Max{fmax});
      cid[Role::ForceExcess] =
          add(cp + "DeltaForce_ReLU", Role::ForceExcess,
              formula(physics::Formula::ForceExcess, {cid[Role::ChamberFMax]}, {mp.f_lim}));
      cid[Role::LeakTol] = add(
          cp + "LeakTolMachine", Role::LeakTol,
          formula(physics::Formula::LeakTolerance, {cid[Role::ForceExcess]},
                  {mp.leak_tol_0, mp.leak_tol_ref, mp.d_force_ref}));
      std::vector<NodeId> leaks;
      for (auto& b : bores) {
        const std::string p = bore_prefix(k, b.t);
        b.ids[Role::LeakPf] =
            add(p + "A_leak_PF", Role::LeakPf,
                formula(physics::Formula::LeakAreaPf,
                        {b.ids[Role::DeltaDMax], b.ids[Role::DeltaDMin], cid[Role::LeakTol]},
                        {mp.beta_asym}));
        b.ids[Role::LeakBore] = add(p + "A_leak_Bore", Role::LeakBore,
                                    mech::Sum{{b.ids[Role::LeakMv], b.ids[Role::LeakPf]}});
        leaks.push_back(b.ids[Role::LeakBore]);
      }
      cid[Role::LeakTotal] = add(cp + "A_leak_tot", Role::LeakTotal, mech::Sum{leaks});
      for (const auto& b : bores) {
        for (const auto& m : c_.bore_monitors) {
          monitor(bore_prefix(k, b.t) , m.attribute, b.ids.at(m.attribute), m, flags);
        }
      }
      for (const auto& m : c_.chamber_monitors) {
        monitor(cp, m.attribute, cid.at(m.attribute), m, flags);
      }
    }
    g_.add_node("Sec_" + section + "_Machine" + std::to_string(j) + "_ProcessResult",
                domain::Boolean{}, c_.visibility_of(Role::ProcessResult), mech::LogicalAnd{flags});
  }

  static std::string bore_prefix(std::size_t k, std::size_t t) {
    return "PF_M" + std::to_string(k) + "_T" + std::to_string(t) + "_";
  }

  Bore bore(std::size_t k, std::size_t t, NodeId e_hu, const physics::MachineParams& mp) {
    using physics::Formula;
    Bore b;
    b.t = t;
    auto& id = b.ids;
    const std::string p = bore_prefix(k, t);
    id[Role::Supplier] =
        g_.add_node(p + "MV_Supplier_ID", domain::Categorical{c_.suppliers},
                    c_.visibility_of(Role::Supplier),
                    mech::ExogenousNoise{dist::CategoricalDist{c_.supplier_weights}}, true);
    const NodeId sup = id[Role::Supplier];
    id[Role::MvElasticity] = add(p + "E_mv", Role::MvElasticity, gaussian("E_mv", sup));
    id[Role::MvLeakRaw] =
        add(p + "A_leak_MV_raw", Role::MvLeakRaw, gaussian("A_leak_MV_raw", sup));
    id[Role::MvDiameterMax] = add(p + "D_mvMax", Role::MvDiameterMax, gaussian("D_mvMax", sup));
    id[Role::MvDiameterMin] = add(p + "D_mvMin", Role::MvDiameterMin, gaussian("D_mvMin", sup));
    id[Role::MvLength] = add(p + "L_mvPF", Role::MvLength, gaussian("L_mvPF", sup));
    id[Role::BoreDiameterMax] =
        add(p + "D_boreMax", Role::BoreDiameterMax, gaussian("D_boreMax", std::nullopt));
    id[Role::BoreDiameterMin] =
        add(p + "D_boreMin", Role::BoreDiameterMin, gaussian("D_boreMin", std::nullopt));
    id[Role::BoreElasticity] =
        add(p + "E_bore", Role::BoreElasticity,
            formula(Formula::BoreElasticity, {e_hu}, {},
                    dist::TruncatedGaussian{0.0, c_.e_bore_spread, -0.5}));

    id[Role::DeltaDMax] =
        add(p + "DeltaD_max", Role::DeltaDMax,
            formula(Formula::DeltaDMax, {id[Role::MvDiameterMax], id[Role::BoreDiameterMin]}));
    id[Role::DeltaDMin] =
        add(p + "DeltaD_min", Role::DeltaDMin,
            formula(Formula::DeltaDMin, {id[Role::MvDiameterMin], id[Role::BoreDiameterMax]}));
    id[Role::DeltaDMean] = add(p + "DeltaD_mean", Role::DeltaDMean,
                               mech::AffineMix{mp.beta_asym, id[Role::DeltaDMax], id[Role::DeltaDMin]});
    id[Role::EffElasticity] =
        add(p + "E_eff", Role::EffElasticity,
            formula(Formula::EffectiveElasticity, {id[Role::BoreElasticity], id[Role::MvElasticity]}));
    id[Role::PfStiffness] =
        add(p + "K_stiffPF", Role::PfStiffness,
            formula(Formula::PfStiffness, {id[Role::DeltaDMean], id[Role::EffElasticity]},
                    {mp.k_stiff_pf_ref, mp.k_stiff_pf_dd_ref, mp.k_stiff_pf_e_ref}));
    id[Role::Stiffness] = add(p + "K_stiff", Role::Stiffness,
                              formula(Formula::TotalStiffness, {id[Role::PfStiffness]},
                                      {mp.k_stiff_machine}));
    id[Role::Force] =
        add(p + "Force", Role::Force,
            formula(Formula::PressingForce, {id[Role::MvLength], id[Role::PfStiffness]}));
    id[Role::DsGrad] = add(p + "Delta_s_grad", Role::DsGrad,
                           formula(Formula::DisplacementGrad, {id[Role::Force], id[Role::Stiffness]}));
    id[Role::SGrad] =
        add(p + "s_grad", Role::SGrad, formula(Formula::ToolPosition, {id[Role::DsGrad]}, {mp.s0}));
    id[Role::TriggerStop] = add(p + "DeltaF_trigger_stop", Role::TriggerStop,
                                mech::ExogenousNoise{dist::HalfNormal{mp.trigger_stop_sigma}});
    id[Role::FMax] =
        add(p + "F_max", Role::FMax, mech::Sum{{id[Role::Force], id[Role::TriggerStop]}});
    id[Role::DsMax] = add(p + "Delta_s_max", Role::DsMax,
                          formula(Formula::OvershootDisplacement, {id[Role::TriggerStop]},
                                  {mp.k_stiff_machine}));
    id[Role::SMax] = add(p + "s_max", Role::SMax, mech::Sum{{id[Role::SGrad], id[Role::DsMax]}});
    id[Role::LeakMv] = add(p + "A_leak_MV", Role::LeakMv, mech::Relu{id[Role::MvLeakRaw]});
    return b;
  }

  const LineConfig& c_;
  ScmGraph g_;
  NodeId type_ = 0;
};

}  // namespace

ScmGraph build(const LineConfig& config) {
  check(config);
  ScmGraph g = Builder(config).run();
  require_valid(g);
  return g;
}

namespace {

// Product types 908, 921, 933 and suppliers SupA, SupB, SupC. Repo-chosen
// numbers: the paper publishes no parameter values.
LineConfig base_config() {
  LineConfig c;
  c.suppliers = {"SupA", "SupB", "SupC"};
  c.supplier_weights = {0.5, 0.3, 0.2};
  c.product_types = {"908", "921", "933"};
  c.type_weights = {0.3, 0.4, 0.3};

  const double dn[] = {6.5, 7.0, 7.5};  // nominal bore diameter per type
  const double s_off[] = {0.0, 0.0012, -0.0012};
  const double e_mv[] = {200000.0, 190000.0, 210000.0};
  const double e_mv_type[] = {-1000.0, 0.0, 1000.0};
  const double leak_raw[] = {0.002, 0.005, 0.008};
  const double l_mv[] = {4.05, 4.0, 3.95};
  const double l_mv_sup[] = {0.0, 0.01, -0.01};
  const double e_hu[] = {66000.0, 70000.0, 74000.0};

  auto by_sup = [&](auto&& f, double sigma, std::optional<double> lower) {
    ParameterTable t{true, {}, lower};
    for (int s = 0; s < 3; ++s) {
      for (int ty = 0; ty < 3; ++ty) t.entries.push_back({f(s, ty), sigma});
    }
    return t;
  };
  auto by_type = [&](auto&& f, double sigma, std::optional<double> lower) {
    ParameterTable t{false, {}, lower};
    for (int ty = 0; ty < 3; ++ty) t.entries.push_back({f(ty), sigma});
    return t;
  };
  c.tables["E_mv"] = by_sup([&](int s, int t) { return e_mv[s] + e_mv_type[t]; }, 2500.0, 1000.0);
  c.tables["A_leak_MV_raw"] = by_sup([&](int s, int) { return leak_raw[s]; }, 0.001, std::nullopt);
  c.tables["D_mvMax"] =
      by_sup([&](int s, int t) { return dn[t] + 0.040 + s_off[s]; }, 0.0004, 0.1);
  c.tables["D_mvMin"] =
      by_sup([&](int s, int t) { return dn[t] + 0.020 + s_off[s]; }, 0.0004, 0.1);
  c.tables["L_mvPF"] = by_sup([&](int s, int t) { return l_mv[t] + l_mv_sup[s]; }, 0.015, 0.1);
  c.tables["D_boreMax"] = by_type([&](int t) { return dn[t] + 0.010; }, 0.0004, 0.1);
  c.tables["D_boreMin"] = by_type([&](int t) { return dn[t]; }, 0.0004, 0.1);
  c.tables["E_hu"] = by_type([&](int t) { return e_hu[t]; }, 1000.0, 1000.0);
  c.e_bore_spread = 0.01;
  c.machines = {nominal_machine()};
  c.bore_monitors = {
      {Role::Force, {{14000.0, 18500.0}, {14200.0, 18800.0}, {14500.0, 19000.0}}}};
  return c;
}

}  // namespace

LineConfig minimal_config() {
  LineConfig c = base_config();
  c.name = "minimal";
  c.suppliers = {"SupA"};
  c.supplier_weights = {1.0};
  c.product_types = {"908"};
  c.type_weights = {1.0};
  for (auto& [name, t] : c.tables) {
    // keep the (SupA, 908) entry
    t.entries.resize(1);
  }
  c.bore_monitors = {{Role::Force, {{14000.0, 18500.0}}}};
  c.bores_per_chamber = {1};
  return c;
}

LineConfig preset(std::string_view name) {
  LineConfig c = base_config();
  if (name == "small") {
    c.name = "causalman-small";
    c.sections = {"C2"};
    c.n_machines_per_section = 1;
    c.bores_per_chamber = {3, 2};
    c.chamber_monitors = {{Role::LeakTotal, {{0.0, 0.022}, {0.0, 0.022}, {0.0, 0.022}}}};
    return c;
  }
  if (name == "medium") {
    c.name = "causalman-medium";
    c.sections = {"C2"};
    c.n_machines_per_section = 2;
    c.bores_per_chamber = {2, 2, 2, 2, 2};
    return c;
  }
  throw ConfigError("unknown preset '" + std::string(name) + "' (expected small or medium)");
}

std::vector<std::string> preset_names() { return {"small", "medium"}; }

Census node_census(const ScmGraph& graph) {
  require_valid(graph);
  Census c;
  c.total = graph.size();
  for (const auto& n : graph.nodes()) {
    (n.visibility == Visibility::Observable ? c.observable : c.latent) += 1;
  }
  c.edges = graph.edge_count();
  const Admg admg = latent_project(graph);
  c.projected_directed = admg.directed.size();
  c.projected_bidirected = admg.bidirected.size();
  c.collapsed_pairs = admg.collapsed_pairs();
  return c;
}

std::vector<BatchConfig> default_schedule(std::size_t total_rows, std::size_t batch_size) {
  if (batch_size == 0) throw ConfigError("default schedule: batch size must be >= 1");
  std::vector<BatchConfig> out;
  for (std::size_t done = 0; done < total_rows; done += batch_size) {
    BatchConfig b;
    b.batch_id = static_cast<std::int64_t>(out.size());
    b.n_samples = std::min(batch_size, total_rows - done);
    out.push_back(std::move(b));
  }
  return out;
}

}  // namespace causalman
