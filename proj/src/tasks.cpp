#include "causalman/tasks.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "causalman/errors.hpp"
#include "causalman/metrics.hpp"
#include "causalman/random.hpp"

namespace causalman {

std::string task_name(TaskId id) {
  switch (id) {
    case TaskId::T1: return "T1";
    case TaskId::T2: return "T2";
    case TaskId::T3: return "T3";
    case TaskId::T4: return "T4";
    case TaskId::Additional: return "ADDITIONAL";
  }
  return "?";
}

TaskId task_from_name(std::string_view name) {
  for (TaskId id : builtin_task_ids()) {
    if (task_name(id) == name) return id;
  }
  throw ConfigError("unknown task id '" + std::string(name) +
                    "' (expected T1, T2, T3, T4 or ADDITIONAL)");
}

std::vector<TaskId> builtin_task_ids() {
  return {TaskId::T1, TaskId::T2, TaskId::T3, TaskId::T4, TaskId::Additional};
}

TaskSpec builtin_task(TaskId id) {
  TaskSpec t;
  t.id = id;
  t.outcome = "Sec_C2_Machine1_ProcessResult";
  switch (id) {
    case TaskId::T1:
    case TaskId::T3:
      t.treatment = {"PF_M1_T1_Force_LTL", "18000"};
      t.control = {"PF_M1_T1_Force_LTL", "15000"};
      break;
    case TaskId::T2:
    case TaskId::T4:
      t.treatment = {"PF_M1_T1_Force", "30000"};
      t.control = {"PF_M1_T1_Force", "16000"};
      break;
    case TaskId::Additional:
      t.treatment = {"PF_M1_T1_Force_MpGood", "0"};
      t.control = {"PF_M1_T1_Force_MpGood", "1"};
      break;
  }
  if (id == TaskId::T3 || id == TaskId::T4) {
    t.conditioning = Conditioning{"HU_HU_Block_Type_ID_num", "921"};
  }
  return t;
}

Intervention resolve(const ScmGraph& graph, const NamedIntervention& iv) {
  const NodeId id = graph.id_of(iv.node);
  return Intervention::hard(id, parse_value(graph.node(id).domain, iv.value));
}

Dataset sample_arm(const ScmGraph& graph, const NamedIntervention& iv, std::size_t n,
                   std::uint64_t seed, int arm, const SamplerOptions& options) {
  if (n == 0) throw ConfigError("ground truth: n_per_arm must be >= 1");
  const Intervention intervention = resolve(graph, iv);
  std::vector<BatchConfig> schedule(n);
  for (std::size_t i = 0; i < n; ++i) {
    schedule[i].batch_id = static_cast<std::int64_t>(i);
    schedule[i].n_samples = 1;
    schedule[i].interventions = {intervention};
  }
  return sample_schedule(graph, schedule, combine(seed, static_cast<std::uint64_t>(arm)),
                         options);
}

namespace {

double mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double variance(const std::vector<double>& v, double m) {
  if (v.size() < 2) return 0.0;
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

std::vector<double> stratum(const Dataset& d, const std::string& outcome,
                            const std::optional<Conditioning>& cond, const ScmGraph& graph) {
  const auto y = d.column(outcome);
  if (!cond) return y;
  const NodeId cid = graph.id_of(cond->node);
  const double value = parse_value(graph.node(cid).domain, cond->value);
  const auto x = d.column(cond->node);
  std::vector<double> out;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (x[i] == value) out.push_back(y[i]);
  }
  return out;
}

}  // namespace

EffectEstimate ground_truth_effect(const ScmGraph& graph, const TaskSpec& task,
                                   std::size_t n_per_arm, std::uint64_t seed,
                                   const SamplerOptions& options) {
  graph.id_of(task.outcome);
  if (task.conditioning) graph.id_of(task.conditioning->node);
  const Dataset treated = sample_arm(graph, task.treatment, n_per_arm, seed, 0, options);
  const Dataset control = sample_arm(graph, task.control, n_per_arm, seed, 1, options);
  const auto yt = stratum(treated, task.outcome, task.conditioning, graph);
  const auto yc = stratum(control, task.outcome, task.conditioning, graph);
  if (yt.empty() || yc.empty()) {
    throw ConfigError("ground truth: empty conditioning stratum " + task.conditioning->node +
                      "=" + task.conditioning->value);
  }
  EffectEstimate e;
  e.n_treated = yt.size();
  e.n_control = yc.size();
  e.effect = ate(yt, yc);
  e.mean_treated = mean(yt);
  e.mean_control = mean(yc);
  e.se = std::sqrt(variance(yt, e.mean_treated) / static_cast<double>(yt.size()) +
                   variance(yc, e.mean_control) / static_cast<double>(yc.size()));
  return e;
}

OrdinalEncoding ordinal_encode(const std::vector<std::string>& column) {
  OrdinalEncoding enc;
  enc.labels = column;
  std::sort(enc.labels.begin(), enc.labels.end());
  enc.labels.erase(std::unique(enc.labels.begin(), enc.labels.end()), enc.labels.end());
  enc.codes.reserve(column.size());
  for (const auto& v : column) {
    enc.codes.push_back(static_cast<std::size_t>(
        std::lower_bound(enc.labels.begin(), enc.labels.end(), v) - enc.labels.begin()));
  }
  return enc;
}

std::vector<double> minmax_normalize(const std::vector<double>& column) {
  if (column.empty()) throw ConfigError("minmax_normalize: empty column");
  const auto [lo, hi] = std::minmax_element(column.begin(), column.end());
  const double min = *lo, range = *hi - *lo;
  std::vector<double> out(column.size(), 0.0);
  if (range > 0.0) {
    for (std::size_t i = 0; i < column.size(); ++i) {
      out[i] = 2.0 * (column[i] - min) / range - 1.0;
    }
  }
  return out;
}

std::vector<std::size_t> uniform_quantize(const std::vector<double>& column, std::size_t k) {
  if (k < 2) throw ConfigError("uniform_quantize: k must be >= 2");
  std::vector<std::size_t> out(column.size(), 0);
  if (column.empty()) return out;
  const auto [lo, hi] = std::minmax_element(column.begin(), column.end());
  const double min = *lo, range = *hi - *lo;
  if (range <= 0.0) return out;
  for (std::size_t i = 0; i < column.size(); ++i) {
    const double pos = std::floor((column[i] - min) / range * static_cast<double>(k));
    out[i] = std::min(k - 1, static_cast<std::size_t>(std::max(0.0, pos)));
  }
  return out;
}

}  // namespace causalman
