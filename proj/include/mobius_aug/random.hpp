#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "mobius_aug/mobius.hpp"

namespace mobius_aug {

/// Seeded random source with bit-reproducible draws.
///
/// Only the engine comes from <random>; the conversions to reals and bounded integers
/// are done here because the standard distributions differ between library vendors.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  /// Independent stream `index` of a root seed. Workers each take their own stream.
  static Rng stream(std::uint64_t root_seed, std::uint64_t index) {
    return Rng(splitmix64(splitmix64(root_seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1).
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [lo, hi] (inclusive); rejection removes modulo bias.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(engine_());
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return lo + static_cast<std::int64_t>(x % span);
  }

  bool bernoulli(double p) { return uniform01() < p; }

  /// Uniform point in the disk |z - center| < radius.
  Complex in_disk(Complex center, double radius) {
    const double r = radius * std::sqrt(uniform01());
    const double theta = 2.0 * std::numbers::pi * uniform01();
    return center + Complex(r * std::cos(theta), r * std::sin(theta));
  }

  static std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mobius_aug
