#include "causalman/io.hpp"

#include <charconv>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "causalman/errors.hpp"

namespace causalman::io {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const char* visibility_name(Visibility v) {
  return v == Visibility::Observable ? "observable" : "latent";
}

Visibility parse_visibility(std::string_view s) {
  if (s == "observable") return Visibility::Observable;
  if (s == "latent") return Visibility::Latent;
  throw ConfigError("unknown visibility '" + std::string(s) + "'");
}

Json domain_to_json(const Domain& d) {
  return std::visit(overloaded{
                        [](const domain::Continuous& c) {
                          return Json{{"kind", "continuous"}, {"unit", c.unit}};
                        },
                        [](const domain::Boolean&) { return Json{{"kind", "boolean"}}; },
                        [](const domain::Discrete& x) {
                          return Json{{"kind", "discrete"}, {"cardinality", x.cardinality}};
                        },
                        [](const domain::Categorical& x) {
                          return Json{{"kind", "categorical"}, {"labels", x.labels}};
                        },
                    },
                    d);
}

Domain domain_from_json(const Json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "continuous") return domain::Continuous{j.value("unit", std::string())};
  if (kind == "boolean") return domain::Boolean{};
  if (kind == "discrete") return domain::Discrete{j.at("cardinality").get<std::uint32_t>()};
  if (kind == "categorical") {
    return domain::Categorical{j.at("labels").get<std::vector<std::string>>()};
  }
  throw ConfigError("unknown domain kind '" + kind + "'");
}

// Runs `f`, turning JSON type and key errors into ConfigError.
template <class F>
auto guarded(const std::string& what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(what + ": " + e.what());
  }
}

class MechanismCodec {
 public:
  MechanismCodec(const std::vector<std::string>& names, const std::vector<Domain>& domains)
      : names_(names), domains_(domains) {}

  Json encode(const Mechanism& m) const {
    Json j;
    j["kind"] = mechanism_kind(m);
    std::visit(
        overloaded{
            [&](const mech::PhysicsFormula& f) {
              j["formula"] = std::string(physics::formula_info(f.formula).name);
              j["parents"] = names(f.parents);
              j["constants"] = f.constants;
              if (f.noise) j["noise"] = distribution_to_json(*f.noise);
            },
            [&](const mech::ConditionalGaussian& c) {
              j["parents"] = names(c.parents);
              Json rows = Json::array();
              for (const auto& [key, g] : c.table) {
                rows.push_back({{"key", key_labels(c.parents, key)}, {"mu", g.mu}, {"sigma", g.sigma}});
              }
              j["table"] = rows;
              if (c.lower) j["lower"] = *c.lower;
            },
            [&](const mech::ConditionalCategorical& c) {
              j["parents"] = names(c.parents);
              Json rows = Json::array();
              for (const auto& [key, p] : c.table) {
                rows.push_back({{"key", key_labels(c.parents, key)}, {"probabilities", p}});
              }
              j["table"] = rows;
            },
            [&](const mech::ConditionalValue& c) {
              j["parents"] = names(c.parents);
              Json rows = Json::array();
              for (const auto& [key, v] : c.table) {
                rows.push_back({{"key", key_labels(c.parents, key)}, {"value", v}});
              }
              j["table"] = rows;
            },
            [&](const mech::ToleranceCheck& t) {
              j["monitored"] = name(t.monitored);
              j["ltl"] = name(t.ltl);
              j["utl"] = name(t.utl);
            },
            [&](const mech::LogicalAnd& a) { j["inputs"] = names(a.inputs); },
            [&](const mech::Sum& a) { j["inputs"] = names(a.inputs); },
            [&](const mech::Max& a) { j["inputs"] = names(a.inputs); },
            [&](const mech::Relu& r) { j["input"] = name(r.input); },
            [&](const mech::ExogenousNoise& e) {
              j["distribution"] = distribution_to_json(e.distribution);
            },
            [&](const mech::AffineMix& a) {
              j["beta"] = a.beta;
              j["hi"] = name(a.hi);
              j["lo"] = name(a.lo);
            },
        },
        m);
    return j;
  }

  Mechanism decode(const Json& j) const {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "physics_formula") {
      const auto fname = j.at("formula").get<std::string>();
      const auto f = physics::formula_from_name(fname);
      if (!f) throw ConfigError("unknown formula '" + fname + "'");
      mech::PhysicsFormula m{*f, ids(j.at("parents")),
                             j.value("constants", std::vector<double>{}), std::nullopt};
      if (j.contains("noise")) m.noise = distribution_from_json(j.at("noise"));
      return m;
    }
    if (kind == "conditional_gaussian") {
      mech::ConditionalGaussian m;
      m.parents = ids(j.at("parents"));
      for (const auto& row : j.at("table")) {
        m.table[key(m.parents, row.at("key"))] = {row.at("mu").get<double>(),
                                                  row.at("sigma").get<double>()};
      }
      if (j.contains("lower")) m.lower = j.at("lower").get<double>();
      return m;
    }
    if (kind == "conditional_categorical") {
      mech::ConditionalCategorical m;
      m.parents = ids(j.at("parents"));
      for (const auto& row : j.at("table")) {
        m.table[key(m.parents, row.at("key"))] =
            row.at("probabilities").get<std::vector<double>>();
      }
      return m;
    }
    if (kind == "conditional_value") {
      mech::ConditionalValue m;
      m.parents = ids(j.at("parents"));
      for (const auto& row : j.at("table")) {
        m.table[key(m.parents, row.at("key"))] = row.at("value").get<double>();
      }
      return m;
    }
    if (kind == "tolerance_check") {
      return mech::ToleranceCheck{id(j.at("monitored")), id(j.at("ltl")), id(j.at("utl"))};
    }
    if (kind == "logical_and") return mech::LogicalAnd{ids(j.at("inputs"))};
    if (kind == "sum") return mech::Sum{ids(j.at("inputs"))};
    if (kind == "max") return mech::Max{ids(j.at("inputs"))};
    if (kind == "relu") return mech::Relu{id(j.at("input"))};
    if (kind == "exogenous_noise") {
      return mech::ExogenousNoise{distribution_from_json(j.at("distribution"))};
    }
    if (kind == "affine_mix") {
      return mech::AffineMix{j.at("beta").get<double>(), id(j.at("hi")), id(j.at("lo"))};
    }
    throw ConfigError("unknown mechanism kind '" + kind + "'");
  }

 private:
  std::string name(NodeId n) const {
    if (n >= names_.size()) throw ConfigError("mechanism refers to unknown node id " + std::to_string(n));
    return names_[n];
  }
  Json names(const std::vector<NodeId>& ns) const {
    Json out = Json::array();
    for (NodeId n : ns) out.push_back(name(n));
    return out;
  }
  Json key_labels(const std::vector<NodeId>& parents, const TableKey& key) const {
    Json out = Json::array();
    for (std::size_t i = 0; i < key.size() && i < parents.size(); ++i) {
      out.push_back(format_value(domains_.at(parents[i]), key[i]));
    }
    return out;
  }
  NodeId id(const Json& j) const {
    const auto n = j.get<std::string>();
    const auto it = std::find(names_.begin(), names_.end(), n);
    if (it == names_.end()) throw ConfigError("unknown parent '" + n + "'");
    return static_cast<NodeId>(it - names_.begin());
  }
  std::vector<NodeId> ids(const Json& j) const {
    std::vector<NodeId> out;
    for (const auto& x : j) out.push_back(id(x));
    return out;
  }
  TableKey key(const std::vector<NodeId>& parents, const Json& labels) const {
    if (labels.size() != parents.size()) throw ConfigError("table key length mismatch");
    TableKey k;
    for (std::size_t i = 0; i < parents.size(); ++i) {
      k.push_back(static_cast<std::uint32_t>(
          parse_value(domains_[parents[i]], labels[i].get<std::string>())));
    }
    return k;
  }

  const std::vector<std::string>& names_;
  const std::vector<Domain>& domains_;
};

// Value given as a JSON string (parsed per domain), number or boolean.
double value_from_json(const Domain& d, const Json& v, const std::string& node) {
  double x;
  if (v.is_string()) return parse_value(d, v.get<std::string>());
  if (v.is_boolean()) {
    x = v.get<bool>() ? 1.0 : 0.0;
  } else if (v.is_number()) {
    x = v.get<double>();
  } else {
    throw ConfigError("value for " + node + " must be a string, number or boolean");
  }
  if (std::holds_alternative<domain::Categorical>(d)) {
    // Numbers name labels too, e.g. product type 921.
    return parse_value(d, v.dump());
  }
  if (!in_domain(d, x)) throw ConfigError("value " + v.dump() + " outside the domain of " + node);
  return x;
}

}  // namespace

// ---------------------------------------------------------------------------
// Distributions and graphs
// ---------------------------------------------------------------------------

Json distribution_to_json(const Distribution& d) {
  return std::visit(
      overloaded{
          [](const dist::Gaussian& g) {
            return Json{{"kind", "gaussian"}, {"mu", g.mu}, {"sigma", g.sigma}};
          },
          [](const dist::TruncatedGaussian& g) {
            return Json{{"kind", "truncated_gaussian"}, {"mu", g.mu}, {"sigma", g.sigma},
                        {"lower", g.lower}};
          },
          [](const dist::HalfNormal& g) { return Json{{"kind", "half_normal"}, {"sigma", g.sigma}}; },
          [](const dist::Uniform& u) { return Json{{"kind", "uniform"}, {"lo", u.lo}, {"hi", u.hi}}; },
          [](const dist::PointMass& p) { return Json{{"kind", "point_mass"}, {"value", p.value}}; },
          [](const dist::CategoricalDist& c) {
            return Json{{"kind", "categorical"}, {"probabilities", c.probabilities}};
          },
      },
      d);
}

Distribution distribution_from_json(const Json& j) {
  return guarded("distribution", [&]() -> Distribution {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "gaussian") return dist::Gaussian{j.at("mu").get<double>(), j.at("sigma").get<double>()};
    if (kind == "truncated_gaussian") {
      return dist::TruncatedGaussian{j.at("mu").get<double>(), j.at("sigma").get<double>(),
                                     j.at("lower").get<double>()};
    }
    if (kind == "half_normal") return dist::HalfNormal{j.at("sigma").get<double>()};
    if (kind == "uniform") return dist::Uniform{j.at("lo").get<double>(), j.at("hi").get<double>()};
    if (kind == "point_mass") return dist::PointMass{j.at("value").get<double>()};
    if (kind == "categorical") {
      return dist::CategoricalDist{j.at("probabilities").get<std::vector<double>>()};
    }
    throw ConfigError("unknown distribution kind '" + kind + "'");
  });
}

Json graph_to_json(const ScmGraph& graph) {
  std::vector<std::string> names;
  std::vector<Domain> domains;
  for (const auto& n : graph.nodes()) {
    names.push_back(n.name);
    domains.push_back(n.domain);
  }
  const MechanismCodec codec(names, domains);
  Json nodes = Json::array();
  for (const auto& n : graph.nodes()) {
    nodes.push_back({{"name", n.name},
                     {"domain", domain_to_json(n.domain)},
                     {"visibility", visibility_name(n.visibility)},
                     {"batch_parameter", n.batch_parameter},
                     {"mechanism", codec.encode(n.mechanism)}});
  }
  return Json{{"format", "causalman-graph"},
              {"name", graph.name()},
              {"version", graph.version()},
              {"nodes", nodes}};
}

ScmGraph graph_from_json(const Json& doc) {
  return guarded("graph document", [&] {
    if (!doc.is_object() || !doc.contains("nodes")) {
      throw ConfigError("graph document: missing 'nodes'");
    }
    std::vector<std::string> names;
    std::vector<Domain> domains;
    for (const auto& n : doc.at("nodes")) {
      names.push_back(n.at("name").get<std::string>());
      domains.push_back(domain_from_json(n.at("domain")));
    }
    const MechanismCodec codec(names, domains);
    ScmGraph g(doc.value("name", std::string("graph")), doc.value("version", std::string("1")));
    std::size_t i = 0;
    for (const auto& n : doc.at("nodes")) {
      g.add_node(names[i], domains[i], parse_visibility(n.at("visibility").get<std::string>()),
                 codec.decode(n.at("mechanism")), n.value("batch_parameter", false));
      ++i;
    }
    return g;
  });
}

// ---------------------------------------------------------------------------
// Line configs
// ---------------------------------------------------------------------------

namespace {

Json machine_to_json(const physics::MachineParams& m) {
  return Json{{"k_stiff_machine", m.k_stiff_machine},
              {"k_stiff_pf_ref", m.k_stiff_pf_ref},
              {"k_stiff_pf_dd_ref", m.k_stiff_pf_dd_ref},
              {"k_stiff_pf_e_ref", m.k_stiff_pf_e_ref},
              {"beta_asym", m.beta_asym},
              {"leak_tol_0", m.leak_tol_0},
              {"leak_tol_ref", m.leak_tol_ref},
              {"d_force_ref", m.d_force_ref},
              {"f_lim", m.f_lim},
              {"s0", m.s0},
              {"trigger_stop_sigma", m.trigger_stop_sigma}};
}

physics::MachineParams machine_from_json(const Json& j) {
  physics::MachineParams m;
  m.k_stiff_machine = j.at("k_stiff_machine").get<double>();
  m.k_stiff_pf_ref = j.at("k_stiff_pf_ref").get<double>();
  m.k_stiff_pf_dd_ref = j.at("k_stiff_pf_dd_ref").get<double>();
  m.k_stiff_pf_e_ref = j.at("k_stiff_pf_e_ref").get<double>();
  m.beta_asym = j.at("beta_asym").get<double>();
  m.leak_tol_0 = j.at("leak_tol_0").get<double>();
  m.leak_tol_ref = j.at("leak_tol_ref").get<double>();
  m.d_force_ref = j.at("d_force_ref").get<double>();
  m.f_lim = j.at("f_lim").get<double>();
  m.s0 = j.at("s0").get<double>();
  m.trigger_stop_sigma = j.at("trigger_stop_sigma").get<double>();
  return m;
}

Json monitors_to_json(const std::vector<Monitor>& ms) {
  Json out = Json::array();
  for (const auto& m : ms) {
    Json windows = Json::array();
    for (const auto& w : m.windows) windows.push_back({w.ltl, w.utl});
    out.push_back({{"attribute", role_info(m.attribute).key}, {"windows", windows}});
  }
  return out;
}

std::vector<Monitor> monitors_from_json(const Json& j) {
  std::vector<Monitor> out;
  for (const auto& m : j) {
    const auto key = m.at("attribute").get<std::string>();
    const auto role = role_from_key(key);
    if (!role) throw ConfigError("unknown monitor attribute '" + key + "'");
    Monitor mon{*role, {}};
    for (const auto& w : m.at("windows")) {
      mon.windows.push_back({w.at(0).get<double>(), w.at(1).get<double>()});
    }
    out.push_back(std::move(mon));
  }
  return out;
}

}  // namespace

Json config_to_json(const LineConfig& c) {
  Json tables = Json::object();
  for (const auto& [name, t] : c.tables) {
    Json entries = Json::array();
    for (const auto& g : t.entries) entries.push_back({{"mu", g.mu}, {"sigma", g.sigma}});
    Json jt{{"by_supplier", t.by_supplier}, {"entries", entries}};
    if (t.lower) jt["lower"] = *t.lower;
    tables[name] = jt;
  }
  Json machines = Json::array();
  for (const auto& m : c.machines) machines.push_back(machine_to_json(m));
  Json visibility = Json::object();
  for (const auto& [role, v] : c.visibility) visibility[role_info(role).key] = visibility_name(v);
  return Json{{"format", "causalman-line-config"},
              {"name", c.name},
              {"sections", c.sections},
              {"n_machines_per_section", c.n_machines_per_section},
              {"bores_per_chamber", c.bores_per_chamber},
              {"suppliers", {{"labels", c.suppliers}, {"weights", c.supplier_weights}}},
              {"product_types", {{"labels", c.product_types}, {"weights", c.type_weights}}},
              {"tables", tables},
              {"e_bore_spread", c.e_bore_spread},
              {"machines", machines},
              {"bore_monitors", monitors_to_json(c.bore_monitors)},
              {"chamber_monitors", monitors_to_json(c.chamber_monitors)},
              {"visibility", visibility}};
}

LineConfig config_from_json(const Json& j) {
  return guarded("line config", [&] {
    LineConfig c;
    c.name = j.value("name", std::string("line"));
    c.sections = j.at("sections").get<std::vector<std::string>>();
    c.n_machines_per_section = j.at("n_machines_per_section").get<std::size_t>();
    c.bores_per_chamber = j.at("bores_per_chamber").get<std::vector<std::size_t>>();
    c.suppliers = j.at("suppliers").at("labels").get<std::vector<std::string>>();
    c.supplier_weights = j.at("suppliers").at("weights").get<std::vector<double>>();
    c.product_types = j.at("product_types").at("labels").get<std::vector<std::string>>();
    c.type_weights = j.at("product_types").at("weights").get<std::vector<double>>();
    for (const auto& [name, jt] : j.at("tables").items()) {
      ParameterTable t;
      t.by_supplier = jt.at("by_supplier").get<bool>();
      for (const auto& e : jt.at("entries")) {
        t.entries.push_back({e.at("mu").get<double>(), e.at("sigma").get<double>()});
      }
      if (jt.contains("lower")) t.lower = jt.at("lower").get<double>();
      c.tables[name] = t;
    }
    c.e_bore_spread = j.at("e_bore_spread").get<double>();
    c.machines.clear();
    for (const auto& m : j.at("machines")) c.machines.push_back(machine_from_json(m));
    c.bore_monitors = monitors_from_json(j.value("bore_monitors", Json::array()));
    c.chamber_monitors = monitors_from_json(j.value("chamber_monitors", Json::array()));
    const Json vis = j.value("visibility", Json::object());
    for (const auto& [key, v] : vis.items()) {
      const auto role = role_from_key(key);
      if (!role) throw ConfigError("unknown role '" + key + "' in visibility policy");
      c.visibility[*role] = parse_visibility(v.get<std::string>());
    }
    check(c);
    return c;
  });
}

// ---------------------------------------------------------------------------
// Schedules
// ---------------------------------------------------------------------------

Json schedule_to_json(const ScmGraph& graph, const std::vector<BatchConfig>& schedule) {
  std::vector<std::string> names;
  std::vector<Domain> domains;
  for (const auto& n : graph.nodes()) {
    names.push_back(n.name);
    domains.push_back(n.domain);
  }
  const MechanismCodec codec(names, domains);
  Json batches = Json::array();
  for (const auto& b : schedule) {
    Json params = Json::object();
    for (const auto& [id, v] : b.parametrization) {
      params[graph.node(id).name] = format_value(graph.node(id).domain, v);
    }
    Json ivs = Json::array();
    for (const auto& iv : b.interventions) {
      const auto& target = graph.node(iv.target);
      if (iv.is_hard()) {
        ivs.push_back({{"node", target.name},
                       {"value", format_value(target.domain,
                                              std::get<HardIntervention>(iv.kind).value)}});
      } else {
        ivs.push_back({{"node", target.name},
                       {"mechanism", codec.encode(std::get<SoftIntervention>(iv.kind).mechanism)}});
      }
    }
    batches.push_back({{"batch_id", b.batch_id},
                       {"n_samples", b.n_samples},
                       {"parametrization", params},
                       {"interventions", ivs}});
  }
  return Json{{"batches", batches}};
}

std::vector<BatchConfig> schedule_from_json(const ScmGraph& graph, const Json& doc) {
  return guarded("schedule", [&] {
    std::vector<std::string> names;
    std::vector<Domain> domains;
    for (const auto& n : graph.nodes()) {
      names.push_back(n.name);
      domains.push_back(n.domain);
    }
    const MechanismCodec codec(names, domains);
    const Json& list = doc.is_array() ? doc : doc.at("batches");
    std::vector<BatchConfig> out;
    for (const auto& jb : list) {
      BatchConfig b;
      b.batch_id = jb.value("batch_id", static_cast<std::int64_t>(out.size()));
      const auto n = jb.at("n_samples").get<std::int64_t>();
      if (n < 1) throw ConfigError("schedule: n_samples must be >= 1");
      b.n_samples = static_cast<std::size_t>(n);
      const Json params = jb.value("parametrization", Json::object());
      for (const auto& [node, v] : params.items()) {
        const NodeId id = graph.id_of(node);
        b.parametrization[id] = value_from_json(graph.node(id).domain, v, node);
      }
      for (const auto& jv : jb.value("interventions", Json::array())) {
        const auto node = jv.at("node").get<std::string>();
        const NodeId id = graph.id_of(node);
        if (jv.contains("mechanism")) {
          b.interventions.push_back(Intervention::soft(id, codec.decode(jv.at("mechanism"))));
        } else {
          b.interventions.push_back(
              Intervention::hard(id, value_from_json(graph.node(id).domain, jv.at("value"), node)));
        }
      }
      out.push_back(std::move(b));
    }
    return out;
  });
}

// ---------------------------------------------------------------------------
// Hashes
// ---------------------------------------------------------------------------

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string fingerprint(const ScmGraph& graph) { return fnv1a_hex(graph_to_json(graph).dump()); }

std::string schedule_digest(const ScmGraph& graph, const std::vector<BatchConfig>& schedule) {
  return fnv1a_hex(schedule_to_json(graph, schedule).dump());
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

void write_csv(std::ostream& out, const Dataset& d) {
  std::string buf;
  for (const auto& c : d.columns) {
    buf += c.name;
    buf += ',';
  }
  buf += "batch_id\n";
  // Finite domains are rendered from a per-column label cache.
  std::vector<std::vector<std::string>> labels(d.n_cols());
  for (std::size_t c = 0; c < d.n_cols(); ++c) {
    const auto card = cardinality(d.columns[c].domain);
    for (std::size_t v = 0; v < card; ++v) {
      labels[c].push_back(format_value(d.columns[c].domain, static_cast<double>(v)));
    }
  }
  char num[64];
  for (std::size_t r = 0; r < d.n_rows(); ++r) {
    for (std::size_t c = 0; c < d.n_cols(); ++c) {
      const double v = d.at(r, c);
      if (labels[c].empty()) {
        const auto res = std::to_chars(num, num + sizeof num, v, std::chars_format::general, 17);
        buf.append(num, res.ptr);
      } else {
        buf += labels[c].at(static_cast<std::size_t>(v));
      }
      buf += ',';
    }
    const auto res = std::to_chars(num, num + sizeof num, d.batch_ids[r]);
    buf.append(num, res.ptr);
    buf += '\n';
    if (buf.size() > (1u << 20)) {
      out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
      buf.clear();
    }
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw IoError("failed to write CSV");
}

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace

Dataset read_csv(std::istream& in, const ScmGraph& graph) {
  Dataset d;
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("CSV: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split(line, ',');
  if (header.empty() || header.back() != "batch_id") {
    throw ConfigError("CSV: last column must be batch_id");
  }
  for (std::size_t c = 0; c + 1 < header.size(); ++c) {
    const auto& spec = graph.node(graph.id_of(header[c]));
    d.columns.push_back({spec.name, spec.domain, spec.visibility});
  }
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != header.size()) {
      throw ConfigError("CSV line " + std::to_string(lineno) + ": expected " +
                        std::to_string(header.size()) + " cells");
    }
    for (std::size_t c = 0; c < d.n_cols(); ++c) {
      d.values.push_back(parse_value(d.columns[c].domain, cells[c]));
    }
    std::int64_t b = 0;
    const auto last = cells.back();
    const auto res = std::from_chars(last.data(), last.data() + last.size(), b);
    if (res.ec != std::errc() || res.ptr != last.data() + last.size()) {
      throw ConfigError("CSV line " + std::to_string(lineno) + ": bad batch_id");
    }
    d.batch_ids.push_back(b);
  }
  d.graph_fingerprint = fingerprint(graph);
  return d;
}

// ---------------------------------------------------------------------------
// Edge lists
// ---------------------------------------------------------------------------

std::string domain_token(const Domain& d) {
  return std::visit(overloaded{
                        [](const domain::Continuous& c) {
                          return c.unit.empty() ? std::string("continuous")
                                                : "continuous:" + c.unit;
                        },
                        [](const domain::Boolean&) { return std::string("boolean"); },
                        [](const domain::Discrete& x) {
                          return "discrete:" + std::to_string(x.cardinality);
                        },
                        [](const domain::Categorical& x) {
                          std::string s = "categorical:";
                          for (std::size_t i = 0; i < x.labels.size(); ++i) {
                            if (i) s += '|';
                            s += x.labels[i];
                          }
                          return s;
                        },
                    },
                    d);
}

Domain parse_domain_token(std::string_view token) {
  const auto colon = token.find(':');
  const auto kind = token.substr(0, colon);
  const auto arg = colon == std::string_view::npos ? std::string_view() : token.substr(colon + 1);
  if (kind == "continuous") return domain::Continuous{std::string(arg)};
  if (kind == "boolean") return domain::Boolean{};
  if (kind == "discrete") {
    std::uint32_t n = 0;
    const auto res = std::from_chars(arg.data(), arg.data() + arg.size(), n);
    if (res.ec != std::errc() || n == 0) throw ConfigError("bad discrete domain '" + std::string(token) + "'");
    return domain::Discrete{n};
  }
  if (kind == "categorical") {
    domain::Categorical c;
    for (auto l : split(arg, '|')) c.labels.emplace_back(l);
    return c;
  }
  throw ConfigError("unknown domain token '" + std::string(token) + "'");
}

std::string graph_text(const ScmGraph& graph) {
  std::ostringstream out;
  for (const auto& n : graph.nodes()) {
    out << "node " << n.name << ' ' << domain_token(n.domain) << ' '
        << visibility_name(n.visibility) << '\n';
  }
  for (const auto& [p, c] : graph.edges()) {
    out << "edge " << graph.node(p).name << " -> " << graph.node(c).name << '\n';
  }
  return out.str();
}

std::string admg_text(const Admg& admg, const ScmGraph& source) {
  std::ostringstream out;
  for (std::size_t i = 0; i < admg.nodes.size(); ++i) {
    const auto& n = source.node(admg.source_ids[i]);
    out << "node " << n.name << ' ' << domain_token(n.domain) << ' '
        << visibility_name(n.visibility) << '\n';
  }
  for (const auto& [a, b] : admg.directed) {
    out << "edge " << admg.nodes[a] << " -> " << admg.nodes[b] << '\n';
  }
  for (const auto& [a, b] : admg.bidirected) {
    out << "edge " << admg.nodes[a] << " <-> " << admg.nodes[b] << '\n';
  }
  return out.str();
}

EdgeList parse_edge_list(std::istream& in) {
  EdgeList out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream words(line);
    std::string tag;
    if (!(words >> tag) || tag[0] == '#') continue;
    const auto where = "edge list line " + std::to_string(lineno);
    if (tag == "node") {
      std::string name, dom, vis;
      if (!(words >> name)) throw ConfigError(where + ": node needs a name");
      out.nodes.push_back(name);
    } else if (tag == "edge") {
      std::string a, arrow, b;
      if (!(words >> a >> arrow >> b)) throw ConfigError(where + ": malformed edge");
      if (arrow == "->") {
        out.directed.emplace_back(a, b);
      } else if (arrow == "<->") {
        out.bidirected.emplace_back(a, b);
      } else {
        throw ConfigError(where + ": unknown edge tag '" + arrow + "'");
      }
    } else {
      throw ConfigError(where + ": unknown record '" + tag + "'");
    }
  }
  // Nodes named only in edges are added in order of appearance.
  auto ensure = [&](const std::string& n) {
    if (std::find(out.nodes.begin(), out.nodes.end(), n) == out.nodes.end()) out.nodes.push_back(n);
  };
  for (const auto& [a, b] : out.directed) ensure(a), ensure(b);
  for (const auto& [a, b] : out.bidirected) ensure(a), ensure(b);
  return out;
}

// ---------------------------------------------------------------------------
// Manifest and files
// ---------------------------------------------------------------------------

Json manifest_to_json(const Manifest& m) {
  Json batches = Json::array();
  for (const auto& b : m.batches) {
    batches.push_back({{"batch_id", b.batch_id},
                       {"n_samples", b.n_samples},
                       {"interventions", b.interventions}});
  }
  return Json{{"command", m.command},
              {"tool_version", kToolVersion},
              {"graph", m.graph_name},
              {"graph_fingerprint", m.graph_fingerprint},
              {"seed", m.seed},
              {"schedule_digest", m.schedule_digest},
              {"rows", m.rows},
              {"columns", m.columns},
              {"observable_only", m.observable_only},
              {"interventional_batches", batches},
              {"timestamp", m.timestamp}};
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  if (in.bad()) throw IoError("failed to read '" + path + "'");
  return s.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot create '" + path + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("failed to write '" + path + "'");
}

Json read_json_file(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("'" + path + "' is not valid JSON: " + e.what());
  }
}

ScmGraph load_graph(const std::string& spec) {
  std::error_code ec;
  if (!std::filesystem::exists(spec, ec)) {
    const auto names = preset_names();
    if (std::find(names.begin(), names.end(), spec) != names.end()) return build(preset(spec));
    throw IoError("cannot open graph '" + spec + "' (not a file and not a preset)");
  }
  const Json doc = read_json_file(spec);
  if (doc.is_object() && doc.contains("nodes")) {
    ScmGraph g = graph_from_json(doc);
    require_valid(g);
    return g;
  }
  if (doc.is_object() && doc.contains("sections")) return build(config_from_json(doc));
  throw ConfigError("'" + spec + "' is neither a graph nor a line config document");
}

}  // namespace causalman::io
