#pragma once

#include <cstdint>
#include <random>

namespace okayplan {

/// Source of uniform(0,1) draws. Concrete engines and test stubs both
/// implement this so update rules can be exercised with pinned draws.
struct RandomSource {
  virtual ~RandomSource() = default;
  virtual double uniform01() = 0;
};

// Deterministic stream used everywhere. Conversion from raw bits is spelled
// out so results do not depend on the standard library's distribution code.
class Rng final : public RandomSource {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform01() override { return (eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) {
    if (lo > hi) std::swap(lo, hi);
    return lo + (hi - lo) * uniform01();
  }

  std::uint64_t next_u64() { return eng_(); }

  // splitmix64-style mixing; derives independent child streams from a
  // master seed plus a few coordinates (group index, tick, ...).
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t a,
                              std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t z = seed;
    for (std::uint64_t salt : {a + 0x9e3779b97f4a7c15ULL, b + 0xbf58476d1ce4e5b9ULL,
                               c + 0x94d049bb133111ebULL}) {
      z += salt;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      z = z ^ (z >> 31);
    }
    return z;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace okayplan
