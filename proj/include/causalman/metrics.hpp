#pragma once

#include <cstdint>
#include <vector>

namespace causalman {

// Directed adjacency over n nodes, zero diagonal.
class AdjacencyMatrix {
 public:
  explicit AdjacencyMatrix(std::size_t n = 0) : n_(n), entries_(n * n, 0) {}

  std::size_t size() const { return n_; }
  bool at(std::size_t i, std::size_t j) const { return entries_[i * n_ + j] != 0; }
  // Throws ConfigError on self-loops or out-of-range indices.
  void set(std::size_t i, std::size_t j, bool value = true);
  std::size_t edge_count() const;

  bool operator==(const AdjacencyMatrix&) const = default;

 private:
  std::size_t n_;
  std::vector<char> entries_;
};

// Number of differing directed entries; a reversed edge costs 2.
std::size_t shd(const AdjacencyMatrix& a, const AdjacencyMatrix& a_star);

struct PrecisionRecall {
  double precision = 0.0;
  double recall = 0.0;
  // Set when the ratio was 0/0 and reported as 0.
  bool precision_undefined = false;
  bool recall_undefined = false;
};

PrecisionRecall precision_recall(const AdjacencyMatrix& a, const AdjacencyMatrix& a_star);

// Base-2 Jensen-Shannon divergence, in [0, 1].
double jsd(const std::vector<double>& p, const std::vector<double>& q);

using SampleMatrix = std::vector<std::vector<double>>;  // one row per sample

// Biased (V-statistic) MMD^2 with RBF kernel exp(-d^2 / (2 s^2)); s is the
// median pairwise distance over x and y together, 1.0 when that is zero.
double mmd(const SampleMatrix& x, const SampleMatrix& y);
double median_bandwidth(const SampleMatrix& x, const SampleMatrix& y);

double mse(const std::vector<double>& u, const std::vector<double>& v);

double ate(const std::vector<double>& y_treated, const std::vector<double>& y_control);

// ate over the rows whose covariate equals `value`; throws ConfigError when
// either stratum is empty.
double cate(const std::vector<double>& y_treated, const std::vector<double>& x_treated,
            const std::vector<double>& y_control, const std::vector<double>& x_control,
            double value);

// Upper-triangular Erdos-Renyi DAG under the identity ordering.
AdjacencyMatrix random_er_dag(std::size_t n, double p, std::uint64_t seed);

}  // namespace causalman
