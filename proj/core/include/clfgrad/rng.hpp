#ifndef CLFGRAD_RNG_HPP
#define CLFGRAD_RNG_HPP

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>

namespace clfgrad {

// Deterministic uniform source. mt19937_64 is fully specified by the
// standard and every draw goes through the 53-bit mantissa path below,
// so a seed yields the same sequence on any platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform on [0, 1).
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform on [lo, hi).
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

    // Uniform integer in {0, ..., n-1}; rejection sampling, no modulo bias.
    std::uint64_t uniform_index(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("uniform_index: n must be positive");
        const std::uint64_t rem = (0 - n) % n;  // 2^64 mod n
        std::uint64_t draw = engine_();
        while (rem != 0 && draw > std::numeric_limits<std::uint64_t>::max() - rem) {
            draw = engine_();
        }
        return draw % n;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace clfgrad

#endif
