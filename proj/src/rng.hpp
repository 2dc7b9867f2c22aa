#pragma once

#include <cstdint>
#include <random>

namespace swing {

// Seeded uniform generator with a fixed draw algorithm. std::mt19937_64 output
// is specified bit-for-bit by the standard, and the [0,1) mapping below uses the
// top 53 bits directly, so sequences are identical across platforms and standard
// libraries (std::uniform_real_distribution makes no such guarantee).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // Uniform in [0, 1), 53 random bits.
    double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    // Uniform integer in [0, bound) by rejection-free modulo of a fresh 64-bit
    // draw; bias is negligible for the small bounds used here (graph sizes).
    std::uint64_t index(std::uint64_t bound) { return eng_() % bound; }

    std::uint64_t raw() { return eng_(); }

private:
    std::mt19937_64 eng_;
};

}  // namespace swing
