#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "circum/types.hpp"

namespace circum {

/// Seeded random stream with platform-independent draws. std::mt19937_64 has
/// a fixed portable output sequence; the distribution mappings below avoid
/// the implementation-defined std:: distributions so identical seeds give
/// identical samples everywhere.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed = 0) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n).
  std::uint64_t uniform_index(std::uint64_t n) {
    // Rejection sampling keeps the map unbiased.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  /// Standard normal via Box-Muller.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double mag = std::sqrt(-2.0 * std::log(u1));
    constexpr double two_pi = 6.283185307179586476925286766559;
    spare_ = mag * std::sin(two_pi * u2);
    have_spare_ = true;
    return mag * std::cos(two_pi * u2);
  }

  Vector normal_vector(Index dim) {
    Vector v(dim);
    for (Index i = 0; i < dim; ++i) v[i] = normal();
    return v;
  }

  Vector uniform_vector(Index dim, double lo, double hi) {
    Vector v(dim);
    for (Index i = 0; i < dim; ++i) v[i] = uniform(lo, hi);
    return v;
  }

  /// Derives an independent stream; useful for giving sub-searches their own
  /// reproducible seeds.
  std::uint64_t derive_seed() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace circum
