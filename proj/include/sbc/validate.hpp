// validate.hpp — self-contained oracle suite behind the `validate` subcommand
#pragma once

#include "json.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace sbc::validate {

// Tolerances are injectable so tests can force a named failure.
struct ValidateOptions {
    double quad_rel_tol = 1e-9;
    double pv_excision_tol = 1e-5;
    double cubic_rel_tol = 1e-6;
    double kernel_rel_tol = 1e-8;
    double kms_tol = 1e-8;
    double rwa_sum_tol = 1e-8;
    double nullity_tol = 1e-6;
    double dephasing_tol = 1e-6;
    double structure_tol = 1e-10;
    std::uint64_t seed = 20240817;
};

struct CheckResult {
    std::string name;
    bool passed = false;
    double residual = 0.0;  // measured worst deviation
    double tolerance = 0.0; // tolerance it was held against
    std::string detail;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    bool all_passed() const;
};

ValidationReport run_validation(const ValidateOptions& opts = {});

nlohmann::json report_json(const ValidationReport& report);
std::string report_text(const ValidationReport& report);

} // namespace sbc::validate
