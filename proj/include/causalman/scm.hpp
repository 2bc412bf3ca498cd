#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "causalman/physics.hpp"

namespace causalman {

using NodeId = std::uint32_t;

// ---------------------------------------------------------------------------
// Domains
// ---------------------------------------------------------------------------

namespace domain {

struct Continuous {
  std::string unit;
  bool operator==(const Continuous&) const = default;
};

struct Boolean {
  bool operator==(const Boolean&) const = default;
};

// Integer values 0 .. cardinality-1.
struct Discrete {
  std::uint32_t cardinality = 1;
  bool operator==(const Discrete&) const = default;
};

// Values are label indices.
struct Categorical {
  std::vector<std::string> labels;
  bool operator==(const Categorical&) const = default;
};

}  // namespace domain

using Domain = std::variant<domain::Continuous, domain::Boolean,
                            domain::Discrete, domain::Categorical>;

// Number of admissible values for finite domains, 0 for continuous ones.
std::size_t cardinality(const Domain& d);
inline bool is_finite(const Domain& d) { return cardinality(d) > 0; }
bool in_domain(const Domain& d, double value);

// Parses "true", "3", "921", "1.5e4" according to the domain. Categorical
// values are matched by label. Throws ConfigError when the text is not a
// member of the domain.
double parse_value(const Domain& d, std::string_view text);
// Inverse of parse_value; continuous values use 17 significant digits.
std::string format_value(const Domain& d, double value);
std::string domain_kind(const Domain& d);

enum class Visibility { Observable, Latent };

// ---------------------------------------------------------------------------
// Distributions
// ---------------------------------------------------------------------------

namespace dist {

struct Gaussian {
  double mu = 0.0;
  double sigma = 1.0;
  bool operator==(const Gaussian&) const = default;
};

struct TruncatedGaussian {
  double mu = 0.0;
  double sigma = 1.0;
  double lower = 0.0;
  bool operator==(const TruncatedGaussian&) const = default;
};

struct HalfNormal {
  double sigma = 1.0;
  bool operator==(const HalfNormal&) const = default;
};

struct Uniform {
  double lo = 0.0;
  double hi = 1.0;
  bool operator==(const Uniform&) const = default;
};

struct PointMass {
  double value = 0.0;
  bool operator==(const PointMass&) const = default;
};

struct CategoricalDist {
  std::vector<double> probabilities;
  bool operator==(const CategoricalDist&) const = default;
};

}  // namespace dist

using Distribution =
    std::variant<dist::Gaussian, dist::TruncatedGaussian, dist::HalfNormal,
                 dist::Uniform, dist::PointMass, dist::CategoricalDist>;

// Empty string when the parameters are admissible.
std::string distribution_problem(const Distribution& d);

// ---------------------------------------------------------------------------
// Mechanisms
// ---------------------------------------------------------------------------

// Key into a conditional table: one value index per categorical parent.
using TableKey = std::vector<std::uint32_t>;

namespace mech {

struct PhysicsFormula {
  physics::Formula formula{};
  std::vector<NodeId> parents;     // in formula role order
  std::vector<double> constants;   // in formula constant order
  std::optional<Distribution> noise;
  bool operator==(const PhysicsFormula&) const = default;
};

struct GaussianParams {
  double mu = 0.0;
  double sigma = 1.0;
  bool operator==(const GaussianParams&) const = default;
};

struct ConditionalGaussian {
  std::vector<NodeId> parents;
  std::map<TableKey, GaussianParams> table;
  std::optional<double> lower;  // truncation bound
  bool operator==(const ConditionalGaussian&) const = default;
};

struct ConditionalCategorical {
  std::vector<NodeId> parents;
  std::map<TableKey, std::vector<double>> table;
  bool operator==(const ConditionalCategorical&) const = default;
};

// Deterministic lookup, e.g. a tolerance limit per product type.
struct ConditionalValue {
  std::vector<NodeId> parents;
  std::map<TableKey, double> table;
  bool operator==(const ConditionalValue&) const = default;
};

struct ToleranceCheck {
  NodeId monitored = 0;
  NodeId ltl = 0;
  NodeId utl = 0;
  bool operator==(const ToleranceCheck&) const = default;
};

struct LogicalAnd {
  std::vector<NodeId> inputs;
  bool operator==(const LogicalAnd&) const = default;
};

struct Sum {
  std::vector<NodeId> inputs;
  bool operator==(const Sum&) const = default;
};

struct Max {
  std::vector<NodeId> inputs;
  bool operator==(const Max&) const = default;
};

struct Relu {
  NodeId input = 0;
  bool operator==(const Relu&) const = default;
};

struct ExogenousNoise {
  Distribution distribution;
  bool operator==(const ExogenousNoise&) const = default;
};

// beta * hi + (1 - beta) * lo
struct AffineMix {
  double beta = 0.5;
  NodeId hi = 0;
  NodeId lo = 0;
  bool operator==(const AffineMix&) const = default;
};

}  // namespace mech

using Mechanism =
    std::variant<mech::PhysicsFormula, mech::ConditionalGaussian,
                 mech::ConditionalCategorical, mech::ConditionalValue,
                 mech::ToleranceCheck, mech::LogicalAnd, mech::Sum, mech::Max,
                 mech::Relu, mech::ExogenousNoise, mech::AffineMix>;

// Parents in role order.
std::vector<NodeId> mechanism_parents(const Mechanism& m);
std::string mechanism_kind(const Mechanism& m);

// ---------------------------------------------------------------------------
// Graph
// ---------------------------------------------------------------------------

struct NodeSpec {
  NodeId id = 0;
  std::string name;
  Domain domain;
  Visibility visibility = Visibility::Observable;
  Mechanism mechanism;
  // Batch-level parameter (product type, supplier lot, machine setting):
  // held constant within a batch.
  bool batch_parameter = false;
  bool operator==(const NodeSpec&) const = default;
};

class ScmGraph {
 public:
  ScmGraph() = default;
  explicit ScmGraph(std::string name, std::string version = "1");

  // Parents may reference ids that are added later; validate() checks them.
  NodeId add_node(std::string name, Domain domain, Visibility visibility,
                  Mechanism mechanism, bool batch_parameter = false);

  const NodeSpec& node(NodeId id) const;
  const std::vector<NodeSpec>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  bool contains(NodeId id) const { return id < nodes_.size(); }

  std::optional<NodeId> find(std::string_view name) const;
  // Throws ConfigError for unknown names.
  NodeId id_of(std::string_view name) const;

  // Replaces the mechanism of an existing node.
  void set_mechanism(NodeId id, Mechanism mechanism);
  void set_visibility(NodeId id, Visibility visibility);

  // parent -> child pairs, ordered by child id then parent role.
  std::vector<std::pair<NodeId, NodeId>> edges() const;
  std::size_t edge_count() const;

  const std::string& name() const { return name_; }
  const std::string& version() const { return version_; }

  bool operator==(const ScmGraph& other) const {
    return name_ == other.name_ && version_ == other.version_ &&
           nodes_ == other.nodes_;
  }

 private:
  std::string name_;
  std::string version_ = "1";
  std::vector<NodeSpec> nodes_;
  std::unordered_map<std::string, NodeId> index_;
};

// ---------------------------------------------------------------------------
// Validation and structure
// ---------------------------------------------------------------------------

enum class IssueKind {
  DuplicateName,
  InvalidName,
  BadDomain,
  UnknownParent,
  ParentDomain,
  MechanismDomain,
  IncompleteTable,
  BadProbabilities,
  BadDistribution,
  BadFormula,
  ParameterParents,
  Cycle,
};

struct ValidationIssue {
  IssueKind kind{};
  std::vector<NodeId> nodes;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
  bool has(IssueKind kind) const;
  std::string summary() const;
};

ValidationReport validate(const ScmGraph& graph);
// Throws ConfigError carrying the summary when validation fails.
void require_valid(const ScmGraph& graph);

// Kahn order with ascending-id tie break. Throws ConfigError on cycles.
std::vector<NodeId> topological_order(const ScmGraph& graph);

// Throws ConfigError for unknown ids.
std::vector<NodeId> parents(const ScmGraph& graph, NodeId node);

// ---------------------------------------------------------------------------
// Interventions
// ---------------------------------------------------------------------------

struct HardIntervention {
  double value = 0.0;
  bool operator==(const HardIntervention&) const = default;
};

struct SoftIntervention {
  Mechanism mechanism;
  bool operator==(const SoftIntervention&) const = default;
};

struct Intervention {
  NodeId target = 0;
  std::variant<HardIntervention, SoftIntervention> kind;

  static Intervention hard(NodeId target, double value) {
    return {target, HardIntervention{value}};
  }
  static Intervention soft(NodeId target, Mechanism mechanism) {
    return {target, SoftIntervention{std::move(mechanism)}};
  }
  bool is_hard() const { return std::holds_alternative<HardIntervention>(kind); }
  bool operator==(const Intervention&) const = default;
};

// Returns the post-intervention graph. Visibility is unchanged, so latent
// targets stay latent. Throws ConfigError on unknown target or a value
// outside the target's domain.
ScmGraph intervene(const ScmGraph& graph, const Intervention& intervention);

std::string describe(const ScmGraph& graph, const Intervention& intervention);

}  // namespace causalman
