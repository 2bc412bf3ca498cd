#include "causalman/scm.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include "causalman/errors.hpp"

namespace causalman {

// ---------------------------------------------------------------------------
// Domains
// ---------------------------------------------------------------------------

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool is_integer(double v) { return std::isfinite(v) && std::floor(v) == v; }

std::optional<double> parse_double(std::string_view text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || !std::isfinite(v)) return std::nullopt;
  return v;
}

}  // namespace

std::size_t cardinality(const Domain& d) {
  return std::visit(overloaded{
                        [](const domain::Continuous&) -> std::size_t { return 0; },
                        [](const domain::Boolean&) -> std::size_t { return 2; },
                        [](const domain::Discrete& x) -> std::size_t { return x.cardinality; },
                        [](const domain::Categorical& x) -> std::size_t { return x.labels.size(); },
                    },
                    d);
}

bool in_domain(const Domain& d, double value) {
  if (std::holds_alternative<domain::Continuous>(d)) return std::isfinite(value);
  return is_integer(value) && value >= 0.0 &&
         value < static_cast<double>(cardinality(d));
}

double parse_value(const Domain& d, std::string_view text) {
  auto fail = [&]() -> double {
    throw ConfigError("value '" + std::string(text) + "' is not in domain " +
                      domain_kind(d));
  };
  return std::visit(
      overloaded{
          [&](const domain::Continuous&) -> double {
            auto v = parse_double(text);
            return v ? *v : fail();
          },
          [&](const domain::Boolean&) -> double {
            if (text == "true" || text == "True" || text == "1") return 1.0;
            if (text == "false" || text == "False" || text == "0") return 0.0;
            return fail();
          },
          [&](const domain::Discrete& x) -> double {
            auto v = parse_double(text);
            if (!v || !is_integer(*v) || *v < 0.0 || *v >= x.cardinality) return fail();
            return *v;
          },
          [&](const domain::Categorical& x) -> double {
            auto it = std::find(x.labels.begin(), x.labels.end(), text);
            if (it == x.labels.end()) return fail();
            return static_cast<double>(it - x.labels.begin());
          },
      },
      d);
}

std::string format_value(const Domain& d, double value) {
  return std::visit(
      overloaded{
          [&](const domain::Continuous&) -> std::string {
            char buf[64];
            auto [ptr, ec] =
                std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
            return std::string(buf, ptr);
          },
          [&](const domain::Boolean&) -> std::string {
            return value != 0.0 ? "true" : "false";
          },
          [&](const domain::Discrete&) -> std::string {
            return std::to_string(static_cast<long long>(value));
          },
          [&](const domain::Categorical& x) -> std::string {
            const auto i = static_cast<std::size_t>(value);
            if (!in_domain(d, value)) throw ConfigError("label index out of range");
            return x.labels[i];
          },
      },
      d);
}

std::string domain_kind(const Domain& d) {
  return std::visit(overloaded{
                        [](const domain::Continuous&) { return std::string("continuous"); },
                        [](const domain::Boolean&) { return std::string("boolean"); },
                        [](const domain::Discrete&) { return std::string("discrete"); },
                        [](const domain::Categorical&) { return std::string("categorical"); },
                    },
                    d);
}

// ---------------------------------------------------------------------------
// Distributions and mechanisms
// ---------------------------------------------------------------------------

namespace {

std::string probability_problem(const std::vector<double>& p) {
  if (p.empty()) return "empty probability vector";
  double total = 0.0;
  for (double x : p) {
    if (!std::isfinite(x) || x < 0.0) return "negative or non-finite probability";
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-9) return "probabilities sum to " + std::to_string(total);
  return {};
}

bool finite_all(std::initializer_list<double> xs) {
  return std::all_of(xs.begin(), xs.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

std::string distribution_problem(const Distribution& d) {
  return std::visit(
      overloaded{
          [](const dist::Gaussian& g) -> std::string {
            if (!finite_all({g.mu, g.sigma}) || !(g.sigma > 0.0)) return "gaussian needs sigma > 0";
            return {};
          },
          [](const dist::TruncatedGaussian& g) -> std::string {
            if (!finite_all({g.mu, g.sigma, g.lower}) || !(g.sigma > 0.0)) {
              return "truncated gaussian needs sigma > 0";
            }
            return {};
          },
          [](const dist::HalfNormal& h) -> std::string {
            if (!std::isfinite(h.sigma) || !(h.sigma > 0.0)) return "half-normal needs sigma > 0";
            return {};
          },
          [](const dist::Uniform& u) -> std::string {
            if (!finite_all({u.lo, u.hi}) || !(u.lo < u.hi)) return "uniform needs lo < hi";
            return {};
          },
          [](const dist::PointMass& p) -> std::string {
            if (!std::isfinite(p.value)) return "point mass must be finite";
            return {};
          },
          [](const dist::CategoricalDist& c) -> std::string {
            return probability_problem(c.probabilities);
          },
      },
      d);
}

std::vector<NodeId> mechanism_parents(const Mechanism& m) {
  return std::visit(
      overloaded{
          [](const mech::PhysicsFormula& x) { return x.parents; },
          [](const mech::ConditionalGaussian& x) { return x.parents; },
          [](const mech::ConditionalCategorical& x) { return x.parents; },
          [](const mech::ConditionalValue& x) { return x.parents; },
          [](const mech::ToleranceCheck& x) {
            return std::vector<NodeId>{x.monitored, x.ltl, x.utl};
          },
          [](const mech::LogicalAnd& x) { return x.inputs; },
          [](const mech::Sum& x) { return x.inputs; },
          [](const mech::Max& x) { return x.inputs; },
          [](const mech::Relu& x) { return std::vector<NodeId>{x.input}; },
          [](const mech::ExogenousNoise&) { return std::vector<NodeId>{}; },
          [](const mech::AffineMix& x) { return std::vector<NodeId>{x.hi, x.lo}; },
      },
      m);
}

std::string mechanism_kind(const Mechanism& m) {
  static const char* const kinds[] = {
      "physics_formula", "conditional_gaussian", "conditional_categorical",
      "conditional_value", "tolerance_check", "logical_and",
      "sum", "max", "relu", "exogenous_noise", "affine_mix"};
  return kinds[m.index()];
}

// ---------------------------------------------------------------------------
// ScmGraph
// ---------------------------------------------------------------------------

ScmGraph::ScmGraph(std::string name, std::string version)
    : name_(std::move(name)), version_(std::move(version)) {}

NodeId ScmGraph::add_node(std::string name, Domain domain, Visibility visibility,
                          Mechanism mechanism, bool batch_parameter) {
  const auto id = static_cast<NodeId>(nodes_.size());
  index_.try_emplace(name, id);
  nodes_.push_back(NodeSpec{id, std::move(name), std::move(domain), visibility,
                            std::move(mechanism), batch_parameter});
  return id;
}

const NodeSpec& ScmGraph::node(NodeId id) const {
  if (!contains(id)) throw ConfigError("unknown node id " + std::to_string(id));
  return nodes_[id];
}

std::optional<NodeId> ScmGraph::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

NodeId ScmGraph::id_of(std::string_view name) const {
  if (auto id = find(name)) return *id;
  throw ConfigError("unknown node '" + std::string(name) + "'");
}

void ScmGraph::set_mechanism(NodeId id, Mechanism mechanism) {
  if (!contains(id)) throw ConfigError("unknown node id " + std::to_string(id));
  nodes_[id].mechanism = std::move(mechanism);
}

void ScmGraph::set_visibility(NodeId id, Visibility visibility) {
  if (!contains(id)) throw ConfigError("unknown node id " + std::to_string(id));
  nodes_[id].visibility = visibility;
}

namespace {

// Role-ordered parents with repeats removed.
std::vector<NodeId> distinct_parents(const Mechanism& m) {
  std::vector<NodeId> out;
  for (NodeId p : mechanism_parents(m)) {
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  }
  return out;
}

}  // namespace

std::vector<std::pair<NodeId, NodeId>> ScmGraph::edges() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  for (const auto& n : nodes_) {
    for (NodeId p : distinct_parents(n.mechanism)) out.emplace_back(p, n.id);
  }
  return out;
}

std::size_t ScmGraph::edge_count() const {
  std::size_t count = 0;
  for (const auto& n : nodes_) count += distinct_parents(n.mechanism).size();
  return count;
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

bool ValidationReport::has(IssueKind kind) const {
  return std::any_of(issues.begin(), issues.end(),
                     [&](const ValidationIssue& i) { return i.kind == kind; });
}

std::string ValidationReport::summary() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < issues.size(); ++i) {
    if (i) out << "; ";
    out << issues[i].message;
  }
  return out.str();
}

namespace {

bool valid_name(const std::string& name) {
  if (name.empty()) return false;
  if (std::isdigit(static_cast<unsigned char>(name.front()))) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

class Validator {
 public:
  explicit Validator(const ScmGraph& g) : g_(g) {}

  ValidationReport run() {
    check_names();
    for (const auto& n : g_.nodes()) {
      check_domain(n);
      check_mechanism(n);
    }
    if (report_.ok() || !report_.has(IssueKind::UnknownParent)) check_cycles();
    return std::move(report_);
  }

 private:
  void issue(IssueKind kind, std::vector<NodeId> nodes, std::string msg) {
    report_.issues.push_back({kind, std::move(nodes), std::move(msg)});
  }

  std::string label(NodeId id) const {
    return g_.contains(id) ? g_.node(id).name : "#" + std::to_string(id);
  }

  void check_names() {
    std::set<std::string> seen;
    for (const auto& n : g_.nodes()) {
      if (!valid_name(n.name)) {
        issue(IssueKind::InvalidName, {n.id}, "invalid node name '" + n.name + "'");
      }
      if (!seen.insert(n.name).second) {
        issue(IssueKind::DuplicateName, {n.id}, "duplicate node name '" + n.name + "'");
      }
    }
  }

  void check_domain(const NodeSpec& n) {
    if (auto* c = std::get_if<domain::Categorical>(&n.domain)) {
      if (c->labels.empty()) {
        issue(IssueKind::BadDomain, {n.id}, n.name + ": categorical without labels");
      }
      std::set<std::string> labels(c->labels.begin(), c->labels.end());
      if (labels.size() != c->labels.size()) {
        issue(IssueKind::BadDomain, {n.id}, n.name + ": duplicate categorical labels");
      }
    }
    if (auto* d = std::get_if<domain::Discrete>(&n.domain); d && d->cardinality == 0) {
      issue(IssueKind::BadDomain, {n.id}, n.name + ": discrete cardinality must be positive");
    }
  }

  bool is_continuous(NodeId id) const {
    return std::holds_alternative<domain::Continuous>(g_.node(id).domain);
  }
  bool is_boolean(NodeId id) const {
    return std::holds_alternative<domain::Boolean>(g_.node(id).domain);
  }

  // Returns false when some parent is unknown.
  bool check_parents_exist(const NodeSpec& n, const std::vector<NodeId>& ps) {
    bool ok = true;
    for (NodeId p : ps) {
      if (!g_.contains(p)) {
        issue(IssueKind::UnknownParent, {n.id},
              n.name + ": unknown parent id " + std::to_string(p));
        ok = false;
      }
    }
    return ok;
  }

  void require_node_domain(const NodeSpec& n, bool ok, const char* expected) {
    if (!ok) {
      issue(IssueKind::MechanismDomain, {n.id},
            n.name + ": " + mechanism_kind(n.mechanism) + " requires a " + expected +
                " node, got " + domain_kind(n.domain));
    }
  }

  void require_parents(const NodeSpec& n, const std::vector<NodeId>& ps, auto pred,
                       const char* expected) {
    for (NodeId p : ps) {
      if (!pred(p)) {
        issue(IssueKind::ParentDomain, {n.id, p},
              n.name + ": parent " + label(p) + " must be " + expected);
      }
    }
  }

  // Table keys must cover the Cartesian product of parent values exactly.
  template <class Table>
  void check_table(const NodeSpec& n, const std::vector<NodeId>& ps, const Table& table) {
    require_parents(n, ps, [&](NodeId p) { return is_finite(g_.node(p).domain); },
                    "finite-valued");
    std::size_t expected = 1;
    for (NodeId p : ps) {
      const auto card = cardinality(g_.node(p).domain);
      expected *= card == 0 ? 1 : card;
    }
    std::size_t good = 0;
    for (const auto& [key, value] : table) {
      bool key_ok = key.size() == ps.size();
      for (std::size_t i = 0; key_ok && i < ps.size(); ++i) {
        key_ok = key[i] < cardinality(g_.node(ps[i]).domain);
      }
      if (!key_ok) {
        issue(IssueKind::IncompleteTable, {n.id}, n.name + ": table key out of range");
      } else {
        ++good;
      }
    }
    if (good != expected) {
      issue(IssueKind::IncompleteTable, {n.id},
            n.name + ": incomplete table (" + std::to_string(good) + " of " +
                std::to_string(expected) + " parent combinations)");
    }
  }

  void check_mechanism(const NodeSpec& n) {
    const auto ps = mechanism_parents(n.mechanism);
    if (!check_parents_exist(n, ps)) return;
    if (n.batch_parameter) {
      for (NodeId p : ps) {
        if (!g_.node(p).batch_parameter) {
          issue(IssueKind::ParameterParents, {n.id, p},
                n.name + ": batch parameter depends on per-row node " + label(p));
        }
      }
    }
    const bool continuous = std::holds_alternative<domain::Continuous>(n.domain);
    auto cont = [&](NodeId p) { return is_continuous(p); };
    auto numeric = [&](NodeId p) {
      return !std::holds_alternative<domain::Categorical>(g_.node(p).domain);
    };

    std::visit(
        overloaded{
            [&](const mech::PhysicsFormula& m) {
              require_node_domain(n, continuous, "continuous");
              require_parents(n, ps, cont, "continuous");
              const auto& info = physics::formula_info(m.formula);
              if (m.parents.size() != info.parent_roles.size() ||
                  m.constants.size() != info.constants.size()) {
                issue(IssueKind::BadFormula, {n.id},
                      n.name + ": " + std::string(info.name) + " arity mismatch");
              }
              if (info.needs_noise && !m.noise) {
                issue(IssueKind::BadFormula, {n.id},
                      n.name + ": " + std::string(info.name) + " requires a noise binding");
              }
              for (double c : m.constants) {
                if (!std::isfinite(c)) {
                  issue(IssueKind::BadFormula, {n.id}, n.name + ": non-finite constant");
                }
              }
              if (m.noise) check_continuous_distribution(n, *m.noise);
            },
            [&](const mech::ConditionalGaussian& m) {
              require_node_domain(n, continuous, "continuous");
              check_table(n, ps, m.table);
              for (const auto& [key, g] : m.table) {
                if (!finite_all({g.mu, g.sigma}) || !(g.sigma > 0.0)) {
                  issue(IssueKind::BadDistribution, {n.id}, n.name + ": table sigma must be > 0");
                }
              }
              if (m.lower && !std::isfinite(*m.lower)) {
                issue(IssueKind::BadDistribution, {n.id}, n.name + ": non-finite truncation");
              }
            },
            [&](const mech::ConditionalCategorical& m) {
              require_node_domain(n, is_finite(n.domain), "finite-valued");
              check_table(n, ps, m.table);
              for (const auto& [key, p] : m.table) {
                auto problem = probability_problem(p);
                if (problem.empty() && p.size() != cardinality(n.domain)) {
                  problem = "probability vector length differs from cardinality";
                }
                if (!problem.empty()) {
                  issue(IssueKind::BadProbabilities, {n.id}, n.name + ": " + problem);
                }
              }
            },
            [&](const mech::ConditionalValue& m) {
              require_node_domain(n, !std::holds_alternative<domain::Categorical>(n.domain),
                                  "numeric");
              check_table(n, ps, m.table);
              for (const auto& [key, v] : m.table) {
                if (!in_domain(n.domain, v)) {
                  issue(IssueKind::MechanismDomain, {n.id},
                        n.name + ": table value outside the node domain");
                }
              }
            },
            [&](const mech::ToleranceCheck&) {
              require_node_domain(n, std::holds_alternative<domain::Boolean>(n.domain),
                                  "boolean");
              require_parents(n, ps, numeric, "numeric");
            },
            [&](const mech::LogicalAnd& m) {
              require_node_domain(n, std::holds_alternative<domain::Boolean>(n.domain),
                                  "boolean");
              require_parents(n, ps, [&](NodeId p) { return is_boolean(p); }, "boolean");
              if (m.inputs.empty()) {
                issue(IssueKind::MechanismDomain, {n.id}, n.name + ": logical_and needs inputs");
              }
            },
            [&](const mech::Sum&) {
              require_node_domain(n, continuous, "continuous");
              require_parents(n, ps, cont, "continuous");
            },
            [&](const mech::Max& m) {
              require_node_domain(n, continuous, "continuous");
              require_parents(n, ps, cont, "continuous");
              if (m.inputs.empty()) {
                issue(IssueKind::MechanismDomain, {n.id}, n.name + ": max needs inputs");
              }
            },
            [&](const mech::Relu&) {
              require_node_domain(n, continuous, "continuous");
              require_parents(n, ps, cont, "continuous");
            },
            [&](const mech::ExogenousNoise& m) { check_node_distribution(n, m.distribution); },
            [&](const mech::AffineMix& m) {
              require_node_domain(n, continuous, "continuous");
              require_parents(n, ps, cont, "continuous");
              if (!(m.beta >= 0.0 && m.beta <= 1.0)) {
                issue(IssueKind::MechanismDomain, {n.id}, n.name + ": beta outside [0, 1]");
              }
            },
        },
        n.mechanism);
  }

  void check_continuous_distribution(const NodeSpec& n, const Distribution& d) {
    if (auto problem = distribution_problem(d); !problem.empty()) {
      issue(IssueKind::BadDistribution, {n.id}, n.name + ": " + problem);
    }
    if (std::holds_alternative<dist::CategoricalDist>(d)) {
      issue(IssueKind::BadDistribution, {n.id},
            n.name + ": categorical noise bound to a continuous formula");
    }
  }

  void check_node_distribution(const NodeSpec& n, const Distribution& d) {
    if (auto problem = distribution_problem(d); !problem.empty()) {
      issue(IssueKind::BadDistribution, {n.id}, n.name + ": " + problem);
      return;
    }
    if (auto* pm = std::get_if<dist::PointMass>(&d)) {
      if (!in_domain(n.domain, pm->value)) {
        issue(IssueKind::MechanismDomain, {n.id}, n.name + ": point mass outside the domain");
      }
      return;
    }
    const bool categorical = std::holds_alternative<dist::CategoricalDist>(d);
    if (is_finite(n.domain)) {
      if (!categorical) {
        issue(IssueKind::MechanismDomain, {n.id},
              n.name + ": finite-valued node needs categorical noise");
      } else if (std::get<dist::CategoricalDist>(d).probabilities.size() !=
                 cardinality(n.domain)) {
        issue(IssueKind::BadProbabilities, {n.id},
              n.name + ": probability vector length differs from cardinality");
      }
    } else if (categorical) {
      issue(IssueKind::MechanismDomain, {n.id},
            n.name + ": continuous node with categorical noise");
    }
  }

  void check_cycles() {
    const auto n = g_.size();
    std::vector<std::vector<NodeId>> parent_lists(n);
    std::vector<std::size_t> indegree(n, 0);
    std::vector<std::vector<NodeId>> children(n);
    for (const auto& node : g_.nodes()) {
      parent_lists[node.id] = distinct_parents(node.mechanism);
      for (NodeId p : parent_lists[node.id]) {
        if (p >= n) continue;
        children[p].push_back(node.id);
        ++indegree[node.id];
      }
    }
    std::queue<NodeId> ready;
    for (NodeId i = 0; i < n; ++i) {
      if (indegree[i] == 0) ready.push(i);
    }
    std::vector<bool> done(n, false);
    while (!ready.empty()) {
      NodeId v = ready.front();
      ready.pop();
      done[v] = true;
      for (NodeId c : children[v]) {
        if (--indegree[c] == 0) ready.push(c);
      }
    }
    std::vector<bool> reported(n, false);
    for (NodeId start = 0; start < n; ++start) {
      if (done[start] || reported[start]) continue;
      // Every unfinished node keeps an unfinished parent; walking parents
      // must revisit a node.
      std::vector<NodeId> walk;
      std::vector<int> pos(n, -1);
      NodeId v = start;
      while (pos[v] < 0) {
        pos[v] = static_cast<int>(walk.size());
        walk.push_back(v);
        NodeId next = v;
        for (NodeId p : parent_lists[v]) {
          if (p < n && !done[p]) {
            next = p;
            break;
          }
        }
        v = next;
      }
      std::vector<NodeId> cycle(walk.begin() + pos[v], walk.end());
      std::reverse(cycle.begin(), cycle.end());  // parent -> child order
      auto smallest = std::min_element(cycle.begin(), cycle.end());
      std::rotate(cycle.begin(), smallest, cycle.end());
      bool seen = false;
      for (NodeId c : cycle) seen = seen || reported[c];
      for (NodeId c : cycle) reported[c] = true;
      if (seen) continue;
      std::string msg = "cycle: [";
      for (std::size_t i = 0; i < cycle.size(); ++i) {
        msg += (i ? "," : "") + label(cycle[i]);
      }
      issue(IssueKind::Cycle, cycle, msg + "]");
    }
  }

  const ScmGraph& g_;
  ValidationReport report_;
};

}  // namespace

ValidationReport validate(const ScmGraph& graph) { return Validator(graph).run(); }

void require_valid(const ScmGraph& graph) {
  auto report = validate(graph);
  if (!report.ok()) throw ConfigError("invalid graph: " + report.summary());
}

std::vector<NodeId> topological_order(const ScmGraph& graph) {
  const auto n = graph.size();
  std::vector<std::size_t> indegree(n, 0);
  std::vector<std::vector<NodeId>> children(n);
  for (const auto& [p, c] : graph.edges()) {
    if (p >= n) throw ConfigError("unknown parent id " + std::to_string(p));
    children[p].push_back(c);
    ++indegree[c];
  }
  std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
  for (NodeId i = 0; i < n; ++i) {
    if (indegree[i] == 0) ready.push(i);
  }
  std::vector<NodeId> order;
  order.reserve(n);
  while (!ready.empty()) {
    NodeId v = ready.top();
    ready.pop();
    order.push_back(v);
    for (NodeId c : children[v]) {
      if (--indegree[c] == 0) ready.push(c);
    }
  }
  if (order.size() != n) throw ConfigError("graph contains a cycle");
  return order;
}

std::vector<NodeId> parents(const ScmGraph& graph, NodeId node) {
  return mechanism_parents(graph.node(node).mechanism);
}

// ---------------------------------------------------------------------------
// Interventions
// ---------------------------------------------------------------------------

ScmGraph intervene(const ScmGraph& graph, const Intervention& intervention) {
  if (!graph.contains(intervention.target)) {
    throw ConfigError("intervention on unknown node id " +
                      std::to_string(intervention.target));
  }
  const auto& target = graph.node(intervention.target);
  ScmGraph out = graph;
  if (const auto* hard = std::get_if<HardIntervention>(&intervention.kind)) {
    if (!in_domain(target.domain, hard->value)) {
      throw ConfigError("do(" + target.name + "=" + std::to_string(hard->value) +
                        "): value outside domain " + domain_kind(target.domain));
    }
    out.set_mechanism(target.id, mech::ExogenousNoise{dist::PointMass{hard->value}});
    return out;
  }
  out.set_mechanism(target.id, std::get<SoftIntervention>(intervention.kind).mechanism);
  auto after = validate(out);
  if (!after.ok() && validate(graph).ok()) {
    throw ConfigError("soft intervention on " + target.name +
                      " yields an invalid graph: " + after.summary());
  }
  return out;
}

std::string describe(const ScmGraph& graph, const Intervention& intervention) {
  const auto& target = graph.node(intervention.target);
  if (const auto* hard = std::get_if<HardIntervention>(&intervention.kind)) {
    return "do(" + target.name + "=" + format_value(target.domain, hard->value) + ")";
  }
  return "soft(" + target.name + ":" +
         mechanism_kind(std::get<SoftIntervention>(intervention.kind).mechanism) + ")";
}

}  // namespace causalman
