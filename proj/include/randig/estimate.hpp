#pragma once

#include <cmath>
#include <cstdint>

namespace randig {

/// A probability with its Monte Carlo standard error; exact values carry
/// std_error = 0 and n_samples = 0.
struct EstimateWithError {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t n_samples = 0;

  bool is_exact() const noexcept { return n_samples == 0; }

  static EstimateWithError exact(double v) { return {v, 0.0, 0}; }
  /// Bernoulli proportion hits/n with SE sqrt(v(1-v)/n).
  static EstimateWithError proportion(std::uint64_t hits, std::uint64_t n) {
    const double v = static_cast<double>(hits) / static_cast<double>(n);
    return {v, std::sqrt(v * (1.0 - v) / static_cast<double>(n)), n};
  }
};

}  // namespace randig
