#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "causalman/physics.hpp"
#include "causalman/sampling.hpp"
#include "causalman/scm.hpp"

namespace causalman {

// Node roles of the press-fit line. Each role maps to a name suffix and a
// default visibility.
enum class Role {
  ProductType,
  HuElasticity,
  ProcessResult,
  Supplier,
  MvElasticity,
  MvLeakRaw,
  MvDiameterMax,
  MvDiameterMin,
  MvLength,
  BoreDiameterMax,
  BoreDiameterMin,
  BoreElasticity,
  DeltaDMax,
  DeltaDMin,
  DeltaDMean,
  EffElasticity,
  PfStiffness,
  Stiffness,
  Force,
  DsGrad,
  SGrad,
  TriggerStop,
  FMax,
  DsMax,
  SMax,
  LeakMv,
  LeakPf,
  LeakBore,
  ChamberFMax,
  ForceExcess,
  LeakTol,
  LeakTotal,
  Ltl,
  Utl,
  MpGood,
};

struct RoleInfo {
  Role role;
  const char* key;     // config key, e.g. "force"
  const char* suffix;  // node-name suffix, e.g. "Force"
  const char* unit;    // "" for non-continuous roles
  Visibility visibility;
};

const std::vector<RoleInfo>& roles();
const RoleInfo& role_info(Role role);
std::optional<Role> role_from_key(std::string_view key);

// Gaussian table of one raw-material parameter. Entries are row-major over
// (supplier, product type) when by_supplier, else over product type.
struct ParameterTable {
  bool by_supplier = true;
  std::vector<mech::GaussianParams> entries;
  std::optional<double> lower;
  bool operator==(const ParameterTable&) const = default;
};

struct Tolerance {
  double ltl = 0.0;
  double utl = 0.0;
  bool operator==(const Tolerance&) const = default;
};

// Quality monitor on one attribute: LTL/UTL per product type.
struct Monitor {
  Role attribute = Role::Force;
  std::vector<Tolerance> windows;
  bool operator==(const Monitor&) const = default;
};

// Repo-chosen machine defaults (nominal Force around 16 kN).
physics::MachineParams nominal_machine();

struct LineConfig {
  std::string name = "line";
  std::vector<std::string> sections{"C2"};
  std::size_t n_machines_per_section = 1;
  std::vector<std::size_t> bores_per_chamber{1};  // one entry per chamber
  std::vector<std::string> suppliers{"SupA"};
  std::vector<double> supplier_weights{1.0};
  std::vector<std::string> product_types{"908"};
  std::vector<double> type_weights{1.0};
  // Keys: E_mv, A_leak_MV_raw, D_mvMax, D_mvMin, L_mvPF (by supplier and
  // type); D_boreMax, D_boreMin, E_hu (by type).
  std::map<std::string, ParameterTable> tables;
  double e_bore_spread = 0.01;  // sigma of the relative E_bore deviation
  // One entry per machine, or a single entry shared by all machines.
  std::vector<physics::MachineParams> machines{nominal_machine()};
  std::vector<Monitor> bore_monitors;
  std::vector<Monitor> chamber_monitors;
  std::map<Role, Visibility> visibility;  // overrides of the role defaults

  std::size_t n_sections() const { return sections.size(); }
  std::size_t n_chambers() const { return bores_per_chamber.size(); }
  std::size_t n_suppliers() const { return suppliers.size(); }
  std::size_t n_product_types() const { return product_types.size(); }
  std::size_t n_machines() const { return sections.size() * n_machines_per_section; }
  const physics::MachineParams& machine(std::size_t k) const;
  Visibility visibility_of(Role role) const;

  bool operator==(const LineConfig&) const = default;
};

// Names of the parameter tables a LineConfig must provide.
const std::vector<std::string>& table_names();
bool table_by_supplier(std::string_view table);

// Throws ConfigError describing the first problem.
void check(const LineConfig& config);

ScmGraph build(const LineConfig& config);

// 1 section, 1 machine, 1 chamber, 1 bore, 1 supplier, 1 product type,
// with a Force monitor.
LineConfig minimal_config();

// "small" or "medium"; throws ConfigError otherwise.
LineConfig preset(std::string_view name);
std::vector<std::string> preset_names();

struct Census {
  std::size_t total = 0;
  std::size_t observable = 0;
  std::size_t latent = 0;
  std::size_t edges = 0;
  std::size_t projected_directed = 0;
  std::size_t projected_bidirected = 0;
  // Pairs carrying both a directed and a bidirected projected edge.
  std::size_t collapsed_pairs = 0;
  bool operator==(const Census&) const = default;
};

Census node_census(const ScmGraph& graph);

// Observational schedule of `total_rows` rows cut into batches of
// `batch_size` (the last one may be shorter). Parameter nodes are left
// unpinned so every batch draws its own product type and supplier lots.
std::vector<BatchConfig> default_schedule(std::size_t total_rows, std::size_t batch_size = 100);

}  // namespace causalman
