// special.cpp — Hurwitz zeta via Euler–Maclaurin; thin wrappers over <cmath>
#include "sbc/special.hpp"
#include "sbc/common.hpp"

#include <cmath>

namespace sbc::special {

namespace {
// B_{2j} for j = 1..10
constexpr double kBernoulli[] = {
    1.0 / 6.0,      -1.0 / 30.0,     1.0 / 42.0,      -1.0 / 30.0,
    5.0 / 66.0,     -691.0 / 2730.0, 7.0 / 6.0,       -3617.0 / 510.0,
    43867.0 / 798.0, -174611.0 / 330.0};
constexpr int kBernoulliTerms = 10;
} // namespace

std::complex<double> hurwitz_zeta(double sigma, std::complex<double> z) {
    require(sigma > 1.0, "hurwitz_zeta: order must exceed 1");
    require(z.real() >= 0.5, "hurwitz_zeta: Re z must be >= 0.5");

    // Shift z forward until |z + n| is large enough for the asymptotic tail.
    const double need = 18.0 + sigma;
    int n = 0;
    if (std::abs(z) < need) n = static_cast<int>(std::ceil(need - z.real())) + 1;

    std::complex<double> sum = 0.0;
    for (int k = 0; k < n; ++k) sum += std::pow(z + double(k), -sigma);

    const std::complex<double> zn = z + double(n);
    const std::complex<double> zn_ms = std::pow(zn, -sigma);
    sum += zn * zn_ms / (sigma - 1.0); // (z+n)^(1-sigma)/(sigma-1)
    sum += 0.5 * zn_ms;

    // Asymptotic correction: sum_j B_{2j}/(2j)! * rising(sigma, 2j-1) * (z+n)^(-sigma-2j+1)
    const std::complex<double> inv2 = 1.0 / (zn * zn);
    std::complex<double> pw = zn_ms / zn;            // (z+n)^(-sigma-1)
    double rising = sigma;                           // (sigma)_{2j-1}, j = 1
    double fact = 2.0;                               // (2j)!
    for (int j = 1; j <= kBernoulliTerms; ++j) {
        sum += kBernoulli[j - 1] / fact * rising * pw;
        rising *= (sigma + 2.0 * j - 1.0) * (sigma + 2.0 * j);
        pw *= inv2;
        fact *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
    }
    return sum;
}

double ei(double x) {
    require(x != 0.0, "ei: argument must be nonzero");
    return std::expint(x);
}

double e1(double x) {
    require(x > 0.0, "e1: argument must be positive");
    return -std::expint(-x);
}

double coth(double x) {
    require(x > 0.0, "coth: argument must be positive");
    if (x > 20.0) return 1.0 + 2.0 * std::exp(-2.0 * x); // avoids cosh overflow
    return 1.0 / std::tanh(x);
}

double csch(double x) {
    require(x > 0.0, "csch: argument must be positive");
    if (x > 710.0) return 0.0; // sinh overflows; true value underflows anyway
    return 1.0 / std::sinh(x);
}

} // namespace sbc::special
