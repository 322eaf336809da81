#pragma once

#include <cstdint>
#include <random>

namespace superint {

/// Deterministic RNG: mt19937_64 plus an explicit bits->double mapping, so
/// streams are reproducible across standard libraries (std distributions are
/// implementation-defined).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform01() {
        return double(eng_() >> 11) * 0x1.0p-53;  // 53 mantissa bits in [0,1)
    }
    double uniform(double a, double b) { return a + (b - a) * uniform01(); }
    std::uint64_t bits() { return eng_(); }

  private:
    std::mt19937_64 eng_;
};

}  // namespace superint
