#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>

namespace saff {

/// SplitMix64 (Steele, Lea, Flood 2014): a counter-based generator, output
/// i is mix(seed + i * golden). Identical on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Independent stream for replica `index` of a run seeded with `seed`.
  static SplitMix64 stream(std::uint64_t seed, std::uint64_t index) { return SplitMix64(mix(seed ^ mix(index + 1))); }

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n), n >= 1 (rejection, no modulo bias).
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return x % n;
  }

  /// Index drawn from the cumulative distribution `cdf` (last entry 1).
  int categorical(std::span<const double> cdf) {
    const double u = uniform();
    for (std::size_t i = 0; i + 1 < cdf.size(); ++i) {
      if (u < cdf[i]) return static_cast<int>(i);
    }
    return static_cast<int>(cdf.size()) - 1;
  }

  /// Standard normal via Box-Muller (one output per call).
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * uniform());
  }

 private:
  std::uint64_t state_;
};

}  // namespace saff
