// sbc/steady.hpp — long-time generator coefficients (principal-value
// integrals), analytic steady states, and coherence maximization over f2
#pragma once

#include "sbc/bloch.hpp"
#include "sbc/spectral.hpp"

#include <utility>
#include <vector>

namespace sbc::steady {

// Long-time limit coefficients of the Bloch generator. For model 1, delta1 and
// delta2 are the combined-denominator integrals
//   delta1 = -2 int J_eff [PV 1/(w+w0) - PV 1/(w-w0)] dw,
//   delta2 = -2 int J     [PV 1/(w+w0) + PV 1/(w-w0)] dw;
// for model 2 they are the single-pole pieces
//   delta1 = PV int J_eff/(w-w0) dw,  delta2 = PV int J/(w-w0) dw.
struct LongTimeCoeffs {
    double delta1 = 0.0;
    double delta2 = 0.0;
    double j_at_omega0 = 0.0;     // J(w0)
    double jeff_at_omega0 = 0.0;  // J_eff(w0, T) >= J(w0)
    double gamma2_inf = 0.0;      // -4 lambda Omega Gamma(s)
    double pv_residual = 0.0;     // worst residual estimate of the PV quadratures
};

struct SteadyReport {
    BlochVector v;
    double coherence = 0.0;     // C = sqrt(v1^2 + v2^2)
    double theta = 0.0;         // arctan(C / |v3|), in [0, pi/2)
    double pv_residual = 0.0;
};

struct CoherenceOptimum {
    double f2_opt = 0.0;
    double cmax_over_f1 = 0.0;
    bool numeric_fallback = false;  // true when the closed-form branch was unavailable
};

struct SweepPoint {
    double temperature = 0.0;
    double f2_opt = 0.0;
    double cmax_over_f1 = 0.0;
    double v3 = 0.0;
    double theta = 0.0;
    bool numeric_fallback = false;
};

// model is 1 (composite coupling) or 2 (number-conserving coupling).
// T = 0 is the exact vacuum branch.
LongTimeCoeffs longtime_coeffs(int model, const spectral::BathSpec& bath, double omega0);

// Closed-form {delta1, delta2} of model 1 for the cubic (s = 3), T = 0 bath,
// expressed through exponential integrals; quadrature-free reference used to
// validate the principal-value assembly.
std::pair<double, double> delta_closed_cubic_vacuum(double lambda, double Omega,
                                                    double omega0);

// v1 = f1 f2 [delta1 tanh(w0/2T) + 4 lambda Omega Gamma(s) + delta2] / (w0 + f2^2 delta1),
// v2 = 0, v3 = -tanh(w0/2T). Throws on a vanishing denominator.
SteadyReport steady_state_model1(double f1, double f2, const spectral::BathSpec& bath,
                                 double omega0);

// v1,2 = 2 f1 f2 alpha {Re, Im}[1 / ((w0 + f2^2 delta1) - i pi f2^2 J_eff(w0,T))],
// alpha = delta1 tanh(w0/2T) + delta2 + lambda Omega Gamma(s); v3 = -tanh(w0/2T).
SteadyReport steady_state_model2(double f1, double f2, const spectral::BathSpec& bath,
                                 double omega0);

// Maximize C over f2 at fixed f1. Model 1 with delta1 > 0 uses the closed form
// f2_opt = sqrt(w0/delta1); otherwise (and always for model 2) golden-section
// search on log f2 in [1e-3, 1], flagged as numeric_fallback for model 1.
// force_numeric runs the search even when the closed form applies (oracle).
CoherenceOptimum max_coherence_over_f2(int model, double f1,
                                       const spectral::BathSpec& bath, double omega0,
                                       bool force_numeric = false);

// Per-temperature optimum along T_grid (positive, increasing); parallel over
// grid points, output ordered by grid index.
std::vector<SweepPoint> temperature_sweep(int model, const spectral::SpectralParams& spectral,
                                          const std::vector<double>& T_grid, double f1,
                                          double omega0);

} // namespace sbc::steady
