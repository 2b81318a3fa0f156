// sbc/bloch.hpp — Bloch-vector value type shared by the dynamics and
// steady-state modules
#pragma once

#include <cmath>

namespace sbc {

struct BlochVector {
    double v1 = 0.0;
    double v2 = 0.0;
    double v3 = 0.0;
};

inline double norm(const BlochVector& v) {
    return std::sqrt(v.v1 * v.v1 + v.v2 * v.v2 + v.v3 * v.v3);
}

} // namespace sbc
