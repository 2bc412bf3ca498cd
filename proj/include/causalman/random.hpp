#pragma once

#include <cstdint>

#include "causalman/scm.hpp"

namespace causalman {

// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t combine(std::uint64_t a, std::uint64_t b) {
  return mix64(a ^ mix64(b + 0x632be59bd9b4e019ULL));
}

// Key of the noise stream for one (seed, batch, row, node) cell.
constexpr std::uint64_t stream_key(std::uint64_t seed, std::int64_t batch,
                                   std::uint64_t row, std::uint64_t node) {
  return combine(combine(combine(mix64(seed), static_cast<std::uint64_t>(batch)), row),
                 node);
}

// Row index reserved for batch-level draws of parameter nodes.
inline constexpr std::uint64_t kBatchRow = ~std::uint64_t{0};

// Counter-based stream: the n-th draw depends only on (key, n), so cells can
// be evaluated in any order or on any thread.
class NoiseStream {
 public:
  explicit NoiseStream(std::uint64_t key) : key_(key) {}

  std::uint64_t next_u64() { return combine(key_, counter_++); }
  // Uniform on the open interval (0, 1).
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }
  double normal();

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

double draw(const Distribution& d, NoiseStream& stream);
double draw_truncated_normal(double mu, double sigma, double lower, NoiseStream& stream);
// Index drawn by inverse CDF over `probabilities`.
std::uint32_t draw_index(const std::vector<double>& cumulative, NoiseStream& stream);

}  // namespace causalman
