#include "causalman/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "causalman/errors.hpp"
#include "causalman/random.hpp"

namespace causalman {

void AdjacencyMatrix::set(std::size_t i, std::size_t j, bool value) {
  if (i >= n_ || j >= n_) throw ConfigError("adjacency index out of range");
  if (i == j && value) throw ConfigError("adjacency matrix: self-loop at " + std::to_string(i));
  entries_[i * n_ + j] = value ? 1 : 0;
}

std::size_t AdjacencyMatrix::edge_count() const {
  return static_cast<std::size_t>(std::count(entries_.begin(), entries_.end(), 1));
}

namespace {

void same_size(const AdjacencyMatrix& a, const AdjacencyMatrix& b) {
  if (a.size() != b.size()) {
    throw ConfigError("adjacency size mismatch: " + std::to_string(a.size()) + " vs " +
                      std::to_string(b.size()));
  }
}

// Neumaier summation.
class Accumulator {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      c_ += (sum_ - t) + x;
    } else {
      c_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + c_; }

 private:
  double sum_ = 0.0;
  double c_ = 0.0;
};

double mean(const std::vector<double>& v) {
  Accumulator acc;
  for (double x : v) acc.add(x);
  return acc.value() / static_cast<double>(v.size());
}

void check_distribution(const std::vector<double>& p, const char* name) {
  double total = 0.0;
  for (double x : p) {
    if (!std::isfinite(x) || x < 0.0) {
      throw ConfigError(std::string("jsd: ") + name + " has a negative or non-finite entry");
    }
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw ConfigError(std::string("jsd: ") + name + " does not sum to 1");
  }
}

double squared_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) d += (a[k] - b[k]) * (a[k] - b[k]);
  return d;
}

void check_samples(const SampleMatrix& x, const SampleMatrix& y) {
  if (x.empty() || y.empty()) throw ConfigError("mmd: empty sample set");
  const std::size_t d = x.front().size();
  for (const auto* s : {&x, &y}) {
    for (const auto& row : *s) {
      if (row.size() != d) throw ConfigError("mmd: column count mismatch");
    }
  }
}

}  // namespace

std::size_t shd(const AdjacencyMatrix& a, const AdjacencyMatrix& a_star) {
  same_size(a, a_star);
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) d += a.at(i, j) != a_star.at(i, j);
  }
  return d;
}

PrecisionRecall precision_recall(const AdjacencyMatrix& a, const AdjacencyMatrix& a_star) {
  same_size(a, a_star);
  std::size_t tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      const bool p = a.at(i, j), t = a_star.at(i, j);
      tp += p && t;
      fp += p && !t;
      fn += !p && t;
    }
  }
  PrecisionRecall r;
  if (tp + fp == 0) {
    r.precision_undefined = true;
  } else {
    r.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
  }
  if (tp + fn == 0) {
    r.recall_undefined = true;
  } else {
    r.recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
  }
  return r;
}

double jsd(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw ConfigError("jsd: length mismatch");
  check_distribution(p, "p");
  check_distribution(q, "q");
  Accumulator acc;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double m = 0.5 * (p[i] + q[i]);
    if (p[i] > 0.0) acc.add(0.5 * p[i] * std::log2(p[i] / m));
    if (q[i] > 0.0) acc.add(0.5 * q[i] * std::log2(q[i] / m));
  }
  return std::clamp(acc.value(), 0.0, 1.0);
}

double median_bandwidth(const SampleMatrix& x, const SampleMatrix& y) {
  check_samples(x, y);
  std::vector<const std::vector<double>*> all;
  for (const auto& r : x) all.push_back(&r);
  for (const auto& r : y) all.push_back(&r);
  std::vector<double> d;
  d.reserve(all.size() * (all.size() - 1) / 2);
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      d.push_back(std::sqrt(squared_distance(*all[i], *all[j])));
    }
  }
  if (d.empty()) return 1.0;
  const std::size_t mid = d.size() / 2;
  std::nth_element(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(mid), d.end());
  double median = d[mid];
  if (d.size() % 2 == 0) {
    median = 0.5 * (median + *std::max_element(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(mid)));
  }
  return median > 0.0 ? median : 1.0;
}

double mmd(const SampleMatrix& x, const SampleMatrix& y) {
  const double s = median_bandwidth(x, y);
  const double gamma = 1.0 / (2.0 * s * s);
  auto mean_kernel = [&](const SampleMatrix& a, const SampleMatrix& b) {
    Accumulator acc;
    for (const auto& u : a) {
      for (const auto& v : b) acc.add(std::exp(-gamma * squared_distance(u, v)));
    }
    return acc.value() / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
  };
  const double v = mean_kernel(x, x) + mean_kernel(y, y) - 2.0 * mean_kernel(x, y);
  return std::max(0.0, v);
}

double mse(const std::vector<double>& u, const std::vector<double>& v) {
  if (u.size() != v.size()) throw ConfigError("mse: length mismatch");
  if (u.empty()) throw ConfigError("mse: empty input");
  Accumulator acc;
  for (std::size_t i = 0; i < u.size(); ++i) acc.add((u[i] - v[i]) * (u[i] - v[i]));
  return acc.value() / static_cast<double>(u.size());
}

double ate(const std::vector<double>& y_treated, const std::vector<double>& y_control) {
  if (y_treated.empty() || y_control.empty()) throw ConfigError("ate: empty population");
  return mean(y_treated) - mean(y_control);
}

double cate(const std::vector<double>& y_treated, const std::vector<double>& x_treated,
            const std::vector<double>& y_control, const std::vector<double>& x_control,
            double value) {
  if (y_treated.size() != x_treated.size() || y_control.size() != x_control.size()) {
    throw ConfigError("cate: outcome and covariate lengths differ");
  }
  auto stratum = [&](const std::vector<double>& y, const std::vector<double>& x) {
    std::vector<double> out;
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (x[i] == value) out.push_back(y[i]);
    }
    return out;
  };
  const auto t = stratum(y_treated, x_treated);
  const auto c = stratum(y_control, x_control);
  if (t.empty() || c.empty()) throw ConfigError("cate: empty conditioning stratum");
  return ate(t, c);
}

AdjacencyMatrix random_er_dag(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("random_er_dag: p must lie in [0, 1]");
  AdjacencyMatrix a(n);
  NoiseStream stream(combine(mix64(seed), 0x45525f444147ULL));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (stream.uniform() < p) a.set(i, j);
    }
  }
  return a;
}

}  // namespace causalman
