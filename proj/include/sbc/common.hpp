// sbc/common.hpp — shared error types and small helpers
#pragma once

#include <stdexcept>
#include <string>

namespace sbc {

// Thrown when a numerical routine cannot reach the requested accuracy.
// Carries the best estimate obtained so far and an error estimate.
class NumericError : public std::runtime_error {
public:
    NumericError(const std::string& what, double best, double err)
        : std::runtime_error(what), best_estimate(best), error_estimate(err) {}
    double best_estimate;
    double error_estimate;
};

inline void require(bool cond, const char* msg) {
    if (!cond) throw std::domain_error(msg);
}

} // namespace sbc
