// sbc/spectral.hpp — Ohmic-family spectral density, its thermal dressing, and
// the cutoff resonance condition
#pragma once

#include <optional>
#include <string>
#include <vector>

namespace sbc::spectral {

struct SpectralParams {
    double lambda = 0.01; // dimensionless coupling strength, > 0
    double cutoff = 1.0;  // cutoff frequency Omega in units of omega0, > 0
    double ohmicity = 1.0; // s > 0: sub-Ohmic < 1, Ohmic = 1, super-Ohmic > 1
};

struct BathSpec {
    SpectralParams spectral;
    double temperature = 0.0; // T >= 0 in units of omega0; 0 is the exact limit
};

struct SystemSpec {
    double omega0 = 1.0; // level splitting, the frequency unit
};

void validate(const SpectralParams& p);
void validate(const BathSpec& b);
void validate(const SystemSpec& s);

// Non-fatal guard: collects warnings such as the weak-coupling check
// (lambda >= 0.1 omega0 makes the second-order treatment unreliable).
std::vector<std::string> coupling_warnings(const BathSpec& b, double omega0 = 1.0);

// J(omega) = lambda * omega^s / Omega^(s-1) * exp(-omega/Omega)
double density(double omega, const SpectralParams& p);

// J_eff(omega, T) = J(omega) * coth(omega / 2T); T = 0 gives J itself.
// omega = 0 is evaluated by the analytic series limit: finite 2*lambda*T for
// s = 1, zero for s > 1, and divergent for s < 1 with T > 0 (domain error).
double effective_density(double omega, const BathSpec& b);

// Cutoff at which d/domega J_eff vanishes at omega0, for the Ohmic case s = 1:
// Omega_res = 1 / (1/omega0 - csch(omega0/T)/T).
double resonance_cutoff(double T, double omega0);

// Same stationarity condition for general s, solved by bisection. Returns
// nullopt when the condition has no positive solution (s/omega0 <= csch/T).
std::optional<double> resonance_cutoff_generic(double s, double T, double omega0);

// Residual d/domega J_eff at omega0 for a given cutoff (diagnostic used to
// verify the returned resonance cutoff).
double effective_density_slope(double omega, const BathSpec& b);

} // namespace sbc::spectral
