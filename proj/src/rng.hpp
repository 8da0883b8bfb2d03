#pragma once

#include <cstdint>
#include <random>

namespace nyprox::detail {

/// mt19937_64 with hand-rolled bounded draws: the standard distributions are
/// implementation-defined, which would make seeded outputs differ across
/// standard libraries.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform in [0, bound) by rejection; bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return x % bound;
  }

private:
  std::mt19937_64 engine_;
};

}  // namespace nyprox::detail
