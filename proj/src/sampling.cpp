#include "causalman/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>

#include "causalman/errors.hpp"
#include "causalman/io.hpp"
#include "causalman/random.hpp"

namespace causalman {

std::optional<std::size_t> Dataset::column_index(std::string_view name) const {
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].name == name) return c;
  }
  return std::nullopt;
}

std::vector<double> Dataset::column(std::string_view name) const {
  const auto c = column_index(name);
  if (!c) throw ConfigError("unknown column '" + std::string(name) + "'");
  std::vector<double> out(n_rows());
  for (std::size_t r = 0; r < out.size(); ++r) out[r] = at(r, *c);
  return out;
}

unsigned resolve_threads(const SamplerOptions& options) {
  if (options.threads > 0) return options.threads;
  if (const char* env = std::getenv("CAUSALMAN_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

// Mechanism lowered to flat arrays. Conditional tables become dense vectors
// indexed by the mixed-radix code of the parent values.
struct CompiledNode {
  NodeId id = 0;
  std::size_t kind = 0;  // Mechanism variant index
  std::vector<NodeId> parents;
  std::vector<std::uint32_t> radices;
  std::vector<mech::GaussianParams> gaussians;
  std::optional<double> lower;
  std::vector<std::vector<double>> cumulative;
  std::vector<double> table_values;
  physics::Formula formula{};
  std::vector<double> constants;
  std::optional<Distribution> noise;
  double beta = 0.0;
};

struct Program {
  std::vector<CompiledNode> nodes;  // topological order
};

std::size_t table_index(const CompiledNode& n, const double* row) {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < n.parents.size(); ++i) {
    idx = idx * n.radices[i] + static_cast<std::size_t>(row[n.parents[i]]);
  }
  return idx;
}

template <class Table, class F>
void densify(const ScmGraph& g, const std::vector<NodeId>& parents, const Table& table,
             CompiledNode& out, F&& store) {
  std::size_t total = 1;
  for (NodeId p : parents) {
    out.radices.push_back(static_cast<std::uint32_t>(cardinality(g.node(p).domain)));
    total *= out.radices.back();
  }
  for (const auto& [key, value] : table) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < key.size(); ++i) idx = idx * out.radices[i] + key[i];
    store(idx, total, value);
  }
}

Program compile(const ScmGraph& g) {
  Program prog;
  for (NodeId id : topological_order(g)) {
    const NodeSpec& spec = g.node(id);
    CompiledNode n;
    n.id = id;
    n.kind = spec.mechanism.index();
    n.parents = mechanism_parents(spec.mechanism);
    std::visit(
        [&](const auto& m) {
          using M = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<M, mech::PhysicsFormula>) {
            n.formula = m.formula;
            n.constants = m.constants;
            n.noise = m.noise;
          } else if constexpr (std::is_same_v<M, mech::ConditionalGaussian>) {
            n.lower = m.lower;
            densify(g, m.parents, m.table, n, [&](std::size_t i, std::size_t total, const auto& v) {
              n.gaussians.resize(total);
              n.gaussians[i] = v;
            });
          } else if constexpr (std::is_same_v<M, mech::ConditionalCategorical>) {
            densify(g, m.parents, m.table, n, [&](std::size_t i, std::size_t total, const auto& v) {
              n.cumulative.resize(total);
              n.cumulative[i].resize(v.size());
              std::partial_sum(v.begin(), v.end(), n.cumulative[i].begin());
            });
          } else if constexpr (std::is_same_v<M, mech::ConditionalValue>) {
            densify(g, m.parents, m.table, n, [&](std::size_t i, std::size_t total, double v) {
              n.table_values.resize(total);
              n.table_values[i] = v;
            });
          } else if constexpr (std::is_same_v<M, mech::ExogenousNoise>) {
            n.noise = m.distribution;
          } else if constexpr (std::is_same_v<M, mech::AffineMix>) {
            n.beta = m.beta;
          }
        },
        spec.mechanism);
    prog.nodes.push_back(std::move(n));
  }
  return prog;
}

double evaluate(const CompiledNode& n, const double* row, std::uint64_t key) {
  switch (n.kind) {
    case 0: {  // PhysicsFormula
      double args[8];
      for (std::size_t i = 0; i < n.parents.size(); ++i) args[i] = row[n.parents[i]];
      double eps = 0.0;
      if (n.noise) {
        NoiseStream s(key);
        eps = draw(*n.noise, s);
      }
      return physics::evaluate(n.formula, {args, n.parents.size()}, n.constants, eps);
    }
    case 1: {  // ConditionalGaussian
      const auto& g = n.gaussians[table_index(n, row)];
      NoiseStream s(key);
      if (n.lower) return draw_truncated_normal(g.mu, g.sigma, *n.lower, s);
      return g.mu + g.sigma * s.normal();
    }
    case 2: {  // ConditionalCategorical
      NoiseStream s(key);
      return draw_index(n.cumulative[table_index(n, row)], s);
    }
    case 3:  // ConditionalValue
      return n.table_values[table_index(n, row)];
    case 4: {  // ToleranceCheck; an empty window (ltl > utl) accepts nothing
      const double x = row[n.parents[0]];
      return (row[n.parents[1]] <= x && x <= row[n.parents[2]]) ? 1.0 : 0.0;
    }
    case 5:  // LogicalAnd
      for (NodeId p : n.parents) {
        if (row[p] == 0.0) return 0.0;
      }
      return 1.0;
    case 6: {  // Sum
      double s = 0.0;
      for (NodeId p : n.parents) s += row[p];
      return s;
    }
    case 7: {  // Max
      double m = row[n.parents[0]];
      for (NodeId p : n.parents) m = std::max(m, row[p]);
      return m;
    }
    case 8:  // Relu
      return std::max(0.0, row[n.parents[0]]);
    case 9: {  // ExogenousNoise
      NoiseStream s(key);
      return draw(*n.noise, s);
    }
    default:  // AffineMix
      return n.beta * row[n.parents[0]] + (1.0 - n.beta) * row[n.parents[1]];
  }
}

double evaluate_checked(const ScmGraph& g, const CompiledNode& n, const double* row,
                        std::uint64_t key) {
  double v;
  try {
    v = evaluate(n, row, key);
  } catch (const PhysicsError& e) {
    throw PhysicsError(g.node(n.id).name + ": " + e.what());
  }
  if (!std::isfinite(v)) {
    throw PhysicsError(g.node(n.id).name + ": non-finite value");
  }
  return v;
}

struct PreparedBatch {
  const BatchConfig* config = nullptr;
  std::shared_ptr<const ScmGraph> graph;
  std::shared_ptr<const Program> program;
  std::vector<char> pinned;        // per node
  std::vector<double> pin_values;  // per node
  std::size_t first_row = 0;
};

void check_batch(const ScmGraph& g, const BatchConfig& b) {
  const std::string where = "batch " + std::to_string(b.batch_id) + ": ";
  if (b.n_samples < 1) throw ConfigError(where + "n_samples must be >= 1");
  for (const auto& [id, value] : b.parametrization) {
    if (!g.contains(id)) throw ConfigError(where + "unknown parametrization node " + std::to_string(id));
    const NodeSpec& spec = g.node(id);
    if (!spec.batch_parameter) {
      throw ConfigError(where + spec.name + " is not a parameter node");
    }
    if (!in_domain(spec.domain, value)) {
      throw ConfigError(where + "value " + std::to_string(value) + " outside the domain of " +
                        spec.name);
    }
  }
}

}  // namespace

Dataset sample_schedule(const ScmGraph& graph, const std::vector<BatchConfig>& batches,
                        std::uint64_t master_seed, const SamplerOptions& options) {
  require_valid(graph);
  {
    std::set<std::int64_t> seen;
    for (const auto& b : batches) {
      if (!seen.insert(b.batch_id).second) {
        throw ConfigError("duplicate batch id " + std::to_string(b.batch_id));
      }
    }
  }

  Dataset out;
  out.seed = master_seed;
  out.graph_fingerprint = io::fingerprint(graph);
  for (const auto& spec : graph.nodes()) {
    out.columns.push_back({spec.name, spec.domain, spec.visibility});
  }

  // Batches sharing an intervention list share one compiled program.
  std::vector<PreparedBatch> prepared;
  prepared.reserve(batches.size());
  std::shared_ptr<const ScmGraph> last_graph;
  std::shared_ptr<const Program> last_program;
  const std::vector<Intervention>* last_interventions = nullptr;
  std::size_t total_rows = 0;
  for (const auto& b : batches) {
    check_batch(graph, b);
    PreparedBatch pb;
    pb.config = &b;
    if (last_interventions && *last_interventions == b.interventions) {
      pb.graph = last_graph;
      pb.program = last_program;
    } else {
      ScmGraph g = graph;
      for (const auto& iv : b.interventions) g = intervene(g, iv);
      pb.graph = std::make_shared<const ScmGraph>(std::move(g));
      pb.program = std::make_shared<const Program>(compile(*pb.graph));
      last_graph = pb.graph;
      last_program = pb.program;
      last_interventions = &b.interventions;
    }

    BatchRecord rec{b.batch_id, b.n_samples, {}};
    for (const auto& iv : b.interventions) rec.interventions.push_back(describe(graph, iv));
    out.batches.push_back(std::move(rec));

    // Batch-level pass: parameter nodes are pinned, or drawn once from the
    // (seed, batch, kBatchRow, node) stream. Intervened targets keep their
    // replacement mechanism.
    const std::size_t n = graph.size();
    pb.pinned.assign(n, 0);
    pb.pin_values.assign(n, 0.0);
    std::vector<char> intervened(n, 0);
    for (const auto& iv : b.interventions) intervened[iv.target] = 1;
    for (const auto& cn : pb.program->nodes) {
      if (!graph.node(cn.id).batch_parameter) continue;
      const auto it = b.parametrization.find(cn.id);
      double v;
      if (it != b.parametrization.end() && !intervened[cn.id]) {
        v = it->second;
      } else {
        v = evaluate_checked(*pb.graph, cn, pb.pin_values.data(),
                             stream_key(master_seed, b.batch_id, kBatchRow, cn.id));
      }
      pb.pinned[cn.id] = 1;
      pb.pin_values[cn.id] = v;
    }

    pb.first_row = total_rows;
    total_rows += b.n_samples;
    prepared.push_back(std::move(pb));
  }

  const std::size_t width = graph.size();
  out.values.assign(total_rows * width, 0.0);
  out.batch_ids.resize(total_rows);

  auto run_rows = [&](std::size_t begin, std::size_t end) {
    // Locate the batch holding `begin`.
    auto it = std::upper_bound(prepared.begin(), prepared.end(), begin,
                               [](std::size_t r, const PreparedBatch& pb) { return r < pb.first_row; });
    std::size_t bi = static_cast<std::size_t>(it - prepared.begin()) - 1;
    for (std::size_t r = begin; r < end; ++r) {
      while (r >= prepared[bi].first_row + prepared[bi].config->n_samples) ++bi;
      const PreparedBatch& pb = prepared[bi];
      const std::int64_t batch_id = pb.config->batch_id;
      const std::uint64_t local = r - pb.first_row;
      double* row = out.values.data() + r * width;
      for (const auto& cn : pb.program->nodes) {
        row[cn.id] = pb.pinned[cn.id]
                         ? pb.pin_values[cn.id]
                         : evaluate_checked(*pb.graph, cn, row,
                                            stream_key(master_seed, batch_id, local, cn.id));
      }
      out.batch_ids[r] = batch_id;
    }
  };

  const unsigned threads =
      static_cast<unsigned>(std::min<std::size_t>(resolve_threads(options), std::max<std::size_t>(1, total_rows / 256)));
  if (threads <= 1 || total_rows == 0) {
    if (total_rows > 0) run_rows(0, total_rows);
    return out;
  }
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const std::size_t chunk = (total_rows + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t begin = t * chunk;
    const std::size_t end = std::min(total_rows, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end] {
      try {
        run_rows(begin, end);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

Dataset sample_batch(const ScmGraph& graph, const BatchConfig& batch,
                     std::uint64_t master_seed, const SamplerOptions& options) {
  return sample_schedule(graph, {batch}, master_seed, options);
}

Dataset observe(const Dataset& dataset) {
  Dataset out;
  out.seed = dataset.seed;
  out.graph_fingerprint = dataset.graph_fingerprint;
  out.batches = dataset.batches;
  out.batch_ids = dataset.batch_ids;
  std::vector<std::size_t> keep;
  for (std::size_t c = 0; c < dataset.n_cols(); ++c) {
    if (dataset.columns[c].visibility == Visibility::Observable) {
      keep.push_back(c);
      out.columns.push_back(dataset.columns[c]);
    }
  }
  out.values.reserve(keep.size() * dataset.n_rows());
  for (std::size_t r = 0; r < dataset.n_rows(); ++r) {
    for (std::size_t c : keep) out.values.push_back(dataset.at(r, c));
  }
  return out;
}

std::vector<double> empirical_distribution(const Dataset& dataset, std::string_view column,
                                           std::optional<std::size_t> bins) {
  const auto c = dataset.column_index(column);
  if (!c) throw ConfigError("unknown column '" + std::string(column) + "'");
  if (dataset.n_rows() == 0) throw ConfigError("empirical_distribution: empty dataset");
  const Domain& d = dataset.columns[*c].domain;
  const auto n = static_cast<double>(dataset.n_rows());

  std::vector<double> counts;
  if (is_finite(d)) {
    counts.assign(cardinality(d), 0.0);
    for (std::size_t r = 0; r < dataset.n_rows(); ++r) {
      counts[static_cast<std::size_t>(dataset.at(r, *c))] += 1.0;
    }
  } else {
    if (!bins || *bins == 0) {
      throw ConfigError("empirical_distribution: bins required for continuous column " +
                        std::string(column));
    }
    const auto xs = dataset.column(column);
    const auto [lo_it, hi_it] = std::minmax_element(xs.begin(), xs.end());
    const double lo = *lo_it;
    const double width = (*hi_it - lo) / static_cast<double>(*bins);
    counts.assign(*bins, 0.0);
    for (double x : xs) {
      std::size_t b = 0;
      if (width > 0.0) {
        // Right-closed bins: x in (lo + (b-1)w, lo + bw] goes to b-1.
        const double pos = (x - lo) / width;
        const double k = std::ceil(pos) - 1.0;
        b = k < 0.0 ? 0 : std::min(*bins - 1, static_cast<std::size_t>(k));
      }
      counts[b] += 1.0;
    }
  }
  for (double& v : counts) v /= n;
  return counts;
}

}  // namespace causalman
