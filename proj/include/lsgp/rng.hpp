#pragma once

#include <cassert>
#include <cstdint>
#include <random>

namespace lsgp {

// Deterministic random source. std::mt19937_64 produces a sequence fixed by
// the standard; the draw helpers below replace std::uniform_*_distribution,
// whose output is implementation-defined, so the same seed gives the same
// run on every platform and compiler.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) {
    assert(n > 0);
    // rejection keeps the draw unbiased for every n
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t r = engine_();
      if (r >= threshold) return r % n;
    }
  }

  std::size_t index(std::size_t n) { return static_cast<std::size_t>(below(n)); }

  // Uniform in [0, 1) with 53-bit resolution.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi).
  double range(double lo, double hi) { return lo + (hi - lo) * unit(); }

  bool chance(double p) { return unit() < p; }

private:
  std::mt19937_64 engine_;
};

}  // namespace lsgp
