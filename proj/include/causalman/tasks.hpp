#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "causalman/sampling.hpp"
#include "causalman/scm.hpp"

namespace causalman {

enum class TaskId { T1, T2, T3, T4, Additional };

std::string task_name(TaskId id);
// Accepts T1..T4 and ADDITIONAL; throws ConfigError otherwise.
TaskId task_from_name(std::string_view name);

// Hard intervention addressed by node name and value text.
struct NamedIntervention {
  std::string node;
  std::string value;
  bool operator==(const NamedIntervention&) const = default;
};

struct Conditioning {
  std::string node;
  std::string value;
  bool operator==(const Conditioning&) const = default;
};

struct TaskSpec {
  TaskId id = TaskId::T1;
  std::string outcome;
  NamedIntervention treatment;
  NamedIntervention control;
  std::optional<Conditioning> conditioning;
  bool operator==(const TaskSpec&) const = default;
};

TaskSpec builtin_task(TaskId id);
std::vector<TaskId> builtin_task_ids();

Intervention resolve(const ScmGraph& graph, const NamedIntervention& iv);

struct EffectEstimate {
  double effect = 0.0;
  double se = 0.0;
  double mean_treated = 0.0;
  double mean_control = 0.0;
  std::size_t n_treated = 0;  // rows used (after conditioning)
  std::size_t n_control = 0;
};

// Samples each arm as n_per_arm single-row interventional batches, so batch
// parameters are redrawn for every row. The arms use independent seeds
// derived from (seed, arm). Boolean outcomes average as 1/0.
EffectEstimate ground_truth_effect(const ScmGraph& graph, const TaskSpec& task,
                                   std::size_t n_per_arm, std::uint64_t seed,
                                   const SamplerOptions& options = {});

// Arm sample behind ground_truth_effect; arm 0 is treated, 1 is control.
Dataset sample_arm(const ScmGraph& graph, const NamedIntervention& iv, std::size_t n,
                   std::uint64_t seed, int arm, const SamplerOptions& options = {});

// Preprocessing.

struct OrdinalEncoding {
  std::vector<std::size_t> codes;
  std::vector<std::string> labels;  // code -> label, sorted
};

OrdinalEncoding ordinal_encode(const std::vector<std::string>& column);
std::vector<double> minmax_normalize(const std::vector<double>& column);
std::vector<std::size_t> uniform_quantize(const std::vector<double>& column, std::size_t k);

}  // namespace causalman
