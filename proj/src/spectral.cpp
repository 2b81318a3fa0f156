// spectral.cpp — Ohmic-family densities and the resonance condition
#include "sbc/spectral.hpp"
#include "sbc/common.hpp"
#include "sbc/special.hpp"

#include <cmath>

namespace sbc::spectral {

void validate(const SpectralParams& p) {
    require(p.lambda > 0.0, "spectral: lambda must be > 0");
    require(p.cutoff > 0.0, "spectral: cutoff must be > 0");
    require(p.ohmicity > 0.0, "spectral: ohmicity must be > 0");
}

void validate(const BathSpec& b) {
    validate(b.spectral);
    require(b.temperature >= 0.0, "spectral: temperature must be >= 0");
}

void validate(const SystemSpec& s) {
    require(s.omega0 > 0.0, "spectral: omega0 must be > 0");
}

std::vector<std::string> coupling_warnings(const BathSpec& b, double omega0) {
    std::vector<std::string> out;
    if (b.spectral.lambda >= 0.1 * omega0)
        out.push_back("coupling strength lambda = " + std::to_string(b.spectral.lambda) +
                      " is not small against omega0; second-order results are unreliable");
    return out;
}

double density(double omega, const SpectralParams& p) {
    validate(p);
    require(omega >= 0.0, "density: omega must be >= 0");
    if (omega == 0.0) return 0.0;
    return p.lambda * std::pow(omega, p.ohmicity) *
           std::pow(p.cutoff, 1.0 - p.ohmicity) * std::exp(-omega / p.cutoff);
}

double effective_density(double omega, const BathSpec& b) {
    validate(b);
    require(omega >= 0.0, "effective_density: omega must be >= 0");
    const double T = b.temperature;
    if (T == 0.0) return density(omega, b.spectral);
    if (omega == 0.0) {
        const double s = b.spectral.ohmicity;
        if (s > 1.0) return 0.0;
        if (s == 1.0) return 2.0 * b.spectral.lambda * T;
        throw std::domain_error(
            "effective_density: omega -> 0 limit diverges for sub-Ohmic baths at T > 0");
    }
    return density(omega, b.spectral) * special::coth(omega / (2.0 * T));
}

double effective_density_slope(double omega, const BathSpec& b) {
    validate(b);
    require(omega > 0.0, "effective_density_slope: omega must be > 0");
    const double s = b.spectral.ohmicity;
    const double log_slope_vac = s / omega - 1.0 / b.spectral.cutoff;
    if (b.temperature == 0.0)
        return density(omega, b.spectral) * log_slope_vac;
    const double T = b.temperature;
    return effective_density(omega, b) *
           (log_slope_vac - special::csch(omega / T) / T);
}

double resonance_cutoff(double T, double omega0) {
    require(T > 0.0, "resonance_cutoff: T must be > 0");
    require(omega0 > 0.0, "resonance_cutoff: omega0 must be > 0");
    const double denom = 1.0 / omega0 - special::csch(omega0 / T) / T;
    require(denom > 0.0, "resonance_cutoff: stationarity condition has no solution");
    return 1.0 / denom;
}

std::optional<double> resonance_cutoff_generic(double s, double T, double omega0) {
    require(s > 0.0, "resonance_cutoff_generic: s must be > 0");
    require(T > 0.0, "resonance_cutoff_generic: T must be > 0");
    require(omega0 > 0.0, "resonance_cutoff_generic: omega0 must be > 0");
    const double rhs = s / omega0 - special::csch(omega0 / T) / T;
    if (rhs <= 0.0) return std::nullopt;
    // The stationarity residual s/omega0 - 1/Omega - csch(omega0/T)/T is
    // monotone in Omega; bisect it.
    auto g = [&](double om) { return s / omega0 - 1.0 / om - special::csch(omega0 / T) / T; };
    double lo = 1e-8, hi = 2.0 / rhs;
    while (g(hi) <= 0.0) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) > 0.0 ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace sbc::spectral
