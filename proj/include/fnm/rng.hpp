#pragma once

#include <cmath>
#include <cstdint>

namespace fnm {

// Counter-based generator: every draw is a pure function of
// (seed, stream, counter), so any (cell, draw) pair produces the same value
// whether the cells are visited serially or in parallel.
class CounterRng {
public:
  CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : base_(mix(seed + 0x9E3779B97F4A7C15ull) ^ mix(stream * 0xBF58476D1CE4E5B9ull + 0x94D049BB133111EBull)) {}

  std::uint64_t next_u64() {
    ++counter_;
    return mix(base_ + counter_ * 0x9E3779B97F4A7C15ull);
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Box-Muller; the spare is cached so draws stay counter-deterministic.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform(), u2 = uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * M_PI * u2);
    has_spare_ = true;
    return r * std::cos(2.0 * M_PI * u2);
  }

private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t base_ = 0;
  std::uint64_t counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

} // namespace fnm
