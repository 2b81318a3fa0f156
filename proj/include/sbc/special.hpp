// sbc/special.hpp — special functions: Hurwitz zeta, exponential integrals, stable coth
#pragma once

#include <complex>

namespace sbc::special {

// Hurwitz zeta  zeta(sigma, z) = sum_{k>=0} (z+k)^(-sigma)
// for real sigma > 1 and complex z with Re z >= 0.5 (no pole crossings).
// Euler–Maclaurin with enough leading terms that the asymptotic tail converges
// to double precision.
std::complex<double> hurwitz_zeta(double sigma, std::complex<double> z);

// Exponential integrals (real argument). ei(x) = Ei(x), x != 0.
// e1(x) = E_1(x) = -Ei(-x) for x > 0.
double ei(double x);
double e1(double x);

// coth(x) for x > 0 without overflow (saturates to 1 for large x).
double coth(double x);

// csch(x) = 1/sinh(x), exponentially small for large x (underflows to 0).
double csch(double x);

} // namespace sbc::special
