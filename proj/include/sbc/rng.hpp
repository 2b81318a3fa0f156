// rng.hpp — seeded deterministic random numbers for scenario initial states
#pragma once

#include "sbc/bloch.hpp"

#include <cstdint>
#include <random>

namespace sbc::rng {

class Engine {
public:
    explicit Engine(std::uint64_t seed) : gen_(seed) {}

    // Uniform in [0, 1) with the full 53-bit mantissa.
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Uniform over the solid Bloch ball by rejection from the bounding cube.
    BlochVector bloch_ball() {
        for (;;) {
            BlochVector v{uniform(-1.0, 1.0), uniform(-1.0, 1.0), uniform(-1.0, 1.0)};
            if (norm(v) <= 1.0) return v;
        }
    }

private:
    std::mt19937_64 gen_;
};

} // namespace sbc::rng
