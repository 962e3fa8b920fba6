#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace vqelab {

/// Counter-based splittable random stream (SplitMix64 in counter mode).
///
/// Every consumer derives its own child stream from structured keys, e.g.
/// experiment seed -> run index -> evaluation index, so results are
/// reproducible regardless of thread scheduling. Distribution helpers are
/// hand-rolled so sequences are identical across standard libraries.
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed = 0) : key_(mix(seed + kGolden)) {}

  /// Child stream keyed by (a, b); independent of this stream's position.
  RngStream derive(std::uint64_t a, std::uint64_t b = 0) const {
    RngStream child;
    child.key_ = mix(key_ ^ mix(a + kGolden) ^ rotl(mix(b + kGamma), 32));
    child.counter_ = 0;
    return child;
  }

  std::uint64_t next_u64() { return mix(key_ + (++counter_) * kGolden); }

  /// Uniform double in [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double next_uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  /// Standard normal via Box-Muller (two uniforms per draw, no caching).
  double next_normal() {
    double u1 = next_double();
    while (u1 <= 0.0) u1 = next_double();
    const double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

  /// Standard Cauchy draw.
  double next_cauchy() { return std::tan(kPi * (next_double() - 0.5)); }

  /// Uniform integer in [0, bound); bound must be positive.
  std::uint64_t next_below(std::uint64_t bound) {
    // Multiply-shift; bias is negligible for bound << 2^64.
    const unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * bound;
    return static_cast<std::uint64_t>(m >> 64);
  }

  // UniformRandomBitGenerator interface (std::shuffle et al.).
  std::uint64_t operator()() { return next_u64(); }
  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() { return std::numeric_limits<std::uint64_t>::max(); }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
  static constexpr std::uint64_t kGamma = 0xBF58476D1CE4E5B9ull;
  static constexpr double kPi = 3.14159265358979323846;

  static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
};

}  // namespace vqelab
