// sbc/kernels.hpp — real-time bath correlation kernels, their occupation-number
// split, and the imaginary-time correlation
#pragma once

#include "sbc/spectral.hpp"

namespace sbc::kernels {

// How a kernel value is computed. `automatic` uses direct quadrature at small
// dimensionless times and switches to the exact closed form once the
// oscillatory integrand would dominate the quadrature cost. `quadrature` and
// `closed` force one path (the disagreement between the two is a test oracle).
enum class Method { automatic, quadrature, closed };

// Noise and dissipation kernel pair at one time separation.
struct KernelEval {
    double d1 = 0.0;   // noise kernel 2 * int J_eff(w,T) cos(w tau) dw
    double d2 = 0.0;   // dissipation kernel 2 * int J(w) sin(w tau) dw
    double time = 0.0;
};

// Occupation-number-weighted correlation pair: d1 + i d2 = 2 int J nbar e^{i w tau},
// d1_tilde + i d2_tilde = 2 int J (1 + nbar) e^{i w tau}.
struct RwaCorrelations {
    double d1 = 0.0;
    double d2 = 0.0;
    double d1_tilde = 0.0;
    double d2_tilde = 0.0;
};

// Mean thermal occupation (e^{omega/T} - 1)^{-1}; 0 at T = 0 for omega > 0.
double nbar(double omega, double T);

// D1(tau) = 2 int_0^inf J_eff(w,T) cos(w tau) dw. Even in tau.
double noise_kernel(double tau, const spectral::BathSpec& bath,
                    Method method = Method::automatic);

// D2(tau) = 2 int_0^inf J(w) sin(w tau) dw. Odd in tau, temperature-free.
double dissipation_kernel(double tau, const spectral::SpectralParams& p,
                          Method method = Method::automatic);

// Temperature-free part of D1: 2 int J cos. Equals noise_kernel at T = 0.
double vacuum_noise_kernel(double tau, const spectral::SpectralParams& p,
                           Method method = Method::automatic);

// Thermally dressed sine transform 2 int J_eff sin; equals dissipation_kernel
// at T = 0. Completes the kernel quartet needed for the occupation split.
double thermal_dissipation_kernel(double tau, const spectral::BathSpec& bath,
                                  Method method = Method::automatic);

// {D1, D2} at tau.
KernelEval kernel_eval(double tau, const spectral::BathSpec& bath,
                       Method method = Method::automatic);

// All four kernels at tau from the closed forms, sharing the polar and
// Hurwitz-zeta intermediates (the hot path of table builders).
struct KernelQuartet {
    double d1 = 0.0;      // noise kernel
    double d2 = 0.0;      // dissipation kernel
    double d1_vac = 0.0;  // vacuum noise kernel
    double e1 = 0.0;      // thermal sine kernel
};
KernelQuartet kernel_quartet_closed(double tau, const spectral::BathSpec& bath);

// The nbar/(1+nbar) split of the correlation function. The production path
// assembles it from the kernel quartet via the identities
//   d1 = (D1 - D1_vac)/2,  d2 = (E1 - D2)/2,
//   d1_tilde = (D1 + D1_vac)/2,  d2_tilde = (E1 + D2)/2;
// Method::quadrature instead integrates the nbar-weighted definitions
// directly (independent route, used for cross-checks).
RwaCorrelations rwa_correlations(double tau, const spectral::BathSpec& bath,
                                 Method method = Method::automatic);

// Imaginary-time correlation at separation beta*u, 0 <= u <= 1:
//   C(u) = int_0^inf J(w) [e^{-beta w (1-u)} + e^{-beta w u}] / (1 - e^{-beta w}) dw.
// Always assembled in this combined form (the split cosh/sinh pieces are
// term-wise divergent). C(0) = D1(0)/2; KMS symmetry C(u) = C(1-u).
// Errors: T = 0 or u outside [0,1] -> domain error.
double matsubara_correlation(double u, const spectral::BathSpec& bath);

} // namespace sbc::kernels
