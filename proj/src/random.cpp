#include "causalman/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace causalman {

double NoiseStream::normal() {
  // Box-Muller, one variate per pair of uniforms.
  const double u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double draw_truncated_normal(double mu, double sigma, double lower, NoiseStream& stream) {
  const double a = (lower - mu) / sigma;
  if (a < 0.5) {
    // Acceptance probability is at least ~0.3.
    for (;;) {
      const double z = stream.normal();
      if (z >= a) return mu + sigma * z;
    }
  }
  // Exponential proposal for the tail (Robert, 1995).
  const double alpha = 0.5 * (a + std::sqrt(a * a + 4.0));
  for (;;) {
    const double z = a - std::log(stream.uniform()) / alpha;
    const double rho = std::exp(-0.5 * (z - alpha) * (z - alpha));
    if (stream.uniform() <= rho) return mu + sigma * z;
  }
}

std::uint32_t draw_index(const std::vector<double>& cumulative, NoiseStream& stream) {
  const double u = stream.uniform() * cumulative.back();
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  if (it == cumulative.end()) --it;
  return static_cast<std::uint32_t>(it - cumulative.begin());
}

double draw(const Distribution& d, NoiseStream& stream) {
  switch (d.index()) {
    case 0: {
      const auto& g = std::get<dist::Gaussian>(d);
      return g.mu + g.sigma * stream.normal();
    }
    case 1: {
      const auto& g = std::get<dist::TruncatedGaussian>(d);
      return draw_truncated_normal(g.mu, g.sigma, g.lower, stream);
    }
    case 2:
      return std::get<dist::HalfNormal>(d).sigma * std::abs(stream.normal());
    case 3: {
      const auto& u = std::get<dist::Uniform>(d);
      return u.lo + (u.hi - u.lo) * stream.uniform();
    }
    case 4:
      return std::get<dist::PointMass>(d).value;
    default: {
      const auto& p = std::get<dist::CategoricalDist>(d).probabilities;
      std::vector<double> cumulative(p.size());
      std::partial_sum(p.begin(), p.end(), cumulative.begin());
      return draw_index(cumulative, stream);
    }
  }
}

}  // namespace causalman
