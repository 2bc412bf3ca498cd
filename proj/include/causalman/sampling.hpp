#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "causalman/scm.hpp"

namespace causalman {

// One batch of a sampling schedule. An empty intervention list makes an
// observational batch.
struct BatchConfig {
  std::int64_t batch_id = 0;
  // Parameter node -> value held fixed for the whole batch. Parameter nodes
  // left out are drawn once per batch from their own mechanism.
  std::map<NodeId, double> parametrization;
  std::size_t n_samples = 1;
  std::vector<Intervention> interventions;

  bool operator==(const BatchConfig&) const = default;
};

struct Column {
  std::string name;
  Domain domain;
  Visibility visibility = Visibility::Observable;
  bool operator==(const Column&) const = default;
};

struct BatchRecord {
  std::int64_t batch_id = 0;
  std::size_t n_samples = 0;
  std::vector<std::string> interventions;  // e.g. "do(PF_M1_T1_Force=30000)"
  bool operator==(const BatchRecord&) const = default;
};

// Column-typed sample table. Values are stored row-major as doubles:
// booleans as 0/1, discrete values as integers, categoricals as label index.
struct Dataset {
  std::vector<Column> columns;
  std::vector<double> values;
  std::vector<std::int64_t> batch_ids;
  std::uint64_t seed = 0;
  std::string graph_fingerprint;
  std::vector<BatchRecord> batches;

  std::size_t n_rows() const { return batch_ids.size(); }
  std::size_t n_cols() const { return columns.size(); }
  double at(std::size_t row, std::size_t col) const { return values[row * n_cols() + col]; }
  std::optional<std::size_t> column_index(std::string_view name) const;
  // Throws ConfigError for unknown columns.
  std::vector<double> column(std::string_view name) const;

  bool operator==(const Dataset&) const = default;
};

struct SamplerOptions {
  // 0 selects CAUSALMAN_THREADS, falling back to the hardware concurrency.
  unsigned threads = 0;
};

unsigned resolve_threads(const SamplerOptions& options);

// Ancestral sampling of one batch. The output holds every node, latents
// included, in node-id order. Noise for cell (row, node) is drawn from the
// stream keyed by (master_seed, batch_id, row, node).
Dataset sample_batch(const ScmGraph& graph, const BatchConfig& batch,
                     std::uint64_t master_seed, const SamplerOptions& options = {});

// Concatenation of per-batch samples in schedule order. A batch's rows do
// not depend on which other batches are in the schedule.
Dataset sample_schedule(const ScmGraph& graph, const std::vector<BatchConfig>& batches,
                        std::uint64_t master_seed, const SamplerOptions& options = {});

// Drops latent columns.
Dataset observe(const Dataset& dataset);

// Normalised histogram of a column. Finite domains yield one entry per
// value; continuous columns need `bins` and use equal-width bins over the
// observed range, right-closed ([min, e1], (e1, e2], ...).
std::vector<double> empirical_distribution(const Dataset& dataset, std::string_view column,
                                           std::optional<std::size_t> bins = std::nullopt);

}  // namespace causalman
