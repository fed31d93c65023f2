#pragma once

#include <cstdint>
#include <random>

namespace loopforge {

std::uint64_t splitmix64(std::uint64_t x);

// mt19937_64 with a portable 53-bit conversion to [0, 1).
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  // Independent stream for sample `index` of a run seeded with `seed`.
  static Rng stream(std::uint64_t seed, std::uint64_t index) { return Rng(splitmix64(seed + index)); }

  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  std::uint64_t next() { return eng_(); }

private:
  std::mt19937_64 eng_;
};

}  // namespace loopforge
