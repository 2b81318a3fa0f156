// kernels.cpp — bath correlation kernels: closed forms, quadrature routes,
// occupation split, imaginary-time correlation
#include "sbc/kernels.hpp"
#include "sbc/common.hpp"
#include "sbc/quad.hpp"
#include "sbc/special.hpp"

#include <cmath>
#include <complex>
#include <limits>

namespace sbc::kernels {
namespace {

// Above this |Omega*tau| the automatic method prefers the closed forms: the
// cosine/sine integrands then oscillate too many times across the exponential
// tail for panel-adaptive quadrature to be economical.
constexpr double kAutoSwitch = 32.0;

// Phase budget per quadrature window (radians of w*tau across one window).
constexpr double kWindowPhase = 40.0;

quad::QuadConfig bath_config(const spectral::SpectralParams& p, bool thermal_origin) {
    quad::QuadConfig cfg;
    cfg.scale = p.cutoff;
    // J_eff and the nbar-weighted integrands behave like w^(s-1) at the
    // origin; only s < 1 needs the power-endpoint treatment.
    if (thermal_origin && p.ohmicity < 1.0) cfg.endpoint_power = p.ohmicity - 1.0;
    return cfg;
}

// Integrate f over [0, tail_cut*scale] in windows short enough that each holds
// a bounded number of oscillation periods of e^{i w tau}.
double windowed_integral(const quad::Fn1& f, double tau, const quad::QuadConfig& cfg) {
    const double cut = cfg.tail_cut * cfg.scale;
    const int nwin = 1 + static_cast<int>(cut * std::abs(tau) / kWindowPhase);
    const double w = cut / nwin;
    double total = quad::integrate(f, 0.0, w, cfg);
    quad::QuadConfig plain = cfg;
    plain.endpoint_power = 0.0;
    for (int k = 1; k < nwin; ++k)
        total += quad::integrate(f, k * w, (k + 1) * w, plain);
    return total;
}

// Vacuum transforms: 2 int J {cos,sin}(w tau) dw in closed form,
//   2 lambda Omega^2 Gamma(s+1) {cos,sin}((s+1) atan(Omega tau)) / (1+(Omega tau)^2)^((s+1)/2).
void vacuum_closed(double tau, const spectral::SpectralParams& p,
                   double& cos_part, double& sin_part) {
    const double s = p.ohmicity;
    const double x = p.cutoff * tau;
    const double amp = 2.0 * p.lambda * p.cutoff * p.cutoff * std::tgamma(s + 1.0) *
                       std::pow(1.0 + x * x, -0.5 * (s + 1.0));
    const double phi = (s + 1.0) * std::atan(x);
    cos_part = amp * std::cos(phi);
    sin_part = amp * std::sin(phi);
}

// Thermal correction to the vacuum transforms:
//   4 int J nbar {cos,sin}(w tau) dw
//     = 4 lambda Omega^2 Gamma(s+1) (T/Omega)^(s+1) {Re,Im} zeta_H(s+1, 1 + T/Omega - i T tau).
void thermal_closed(double tau, const spectral::BathSpec& b,
                    double& cos_part, double& sin_part) {
    const double s = b.spectral.ohmicity;
    const double Om = b.spectral.cutoff;
    const double T = b.temperature;
    if (T == 0.0) {
        cos_part = sin_part = 0.0;
        return;
    }
    const std::complex<double> z(1.0 + T / Om, -T * tau);
    const std::complex<double> zeta = special::hurwitz_zeta(s + 1.0, z);
    const double amp = 4.0 * b.spectral.lambda * Om * Om * std::tgamma(s + 1.0) *
                       std::pow(T / Om, s + 1.0);
    cos_part = amp * zeta.real();
    sin_part = amp * zeta.imag();
}

bool use_closed(double tau, const spectral::SpectralParams& p, Method m) {
    if (m == Method::closed) return true;
    if (m == Method::quadrature) return false;
    return std::abs(tau) * p.cutoff > kAutoSwitch;
}

} // namespace

double nbar(double omega, double T) {
    require(omega > 0.0, "nbar: omega must be > 0");
    require(T >= 0.0, "nbar: T must be >= 0");
    if (T == 0.0) return 0.0;
    return 1.0 / std::expm1(omega / T);
}

double noise_kernel(double tau, const spectral::BathSpec& bath, Method method) {
    spectral::validate(bath);
    if (use_closed(tau, bath.spectral, method)) {
        double c, sv, ct, st;
        vacuum_closed(tau, bath.spectral, c, sv);
        thermal_closed(tau, bath, ct, st);
        return c + ct;
    }
    const double at = std::abs(tau);
    auto f = [&](double w) { return 2.0 * spectral::effective_density(w, bath) * std::cos(w * at); };
    return windowed_integral(f, at, bath_config(bath.spectral, bath.temperature > 0.0));
}

double dissipation_kernel(double tau, const spectral::SpectralParams& p, Method method) {
    spectral::validate(p);
    if (use_closed(tau, p, method)) {
        double c, sv;
        vacuum_closed(tau, p, c, sv);
        return sv;
    }
    const double sign = tau < 0.0 ? -1.0 : 1.0;
    const double at = std::abs(tau);
    auto f = [&](double w) { return 2.0 * spectral::density(w, p) * std::sin(w * at); };
    return sign * windowed_integral(f, at, bath_config(p, false));
}

double vacuum_noise_kernel(double tau, const spectral::SpectralParams& p, Method method) {
    spectral::validate(p);
    if (use_closed(tau, p, method)) {
        double c, sv;
        vacuum_closed(tau, p, c, sv);
        return c;
    }
    const double at = std::abs(tau);
    auto f = [&](double w) { return 2.0 * spectral::density(w, p) * std::cos(w * at); };
    return windowed_integral(f, at, bath_config(p, false));
}

double thermal_dissipation_kernel(double tau, const spectral::BathSpec& bath, Method method) {
    spectral::validate(bath);
    if (use_closed(tau, bath.spectral, method)) {
        double c, sv, ct, st;
        vacuum_closed(tau, bath.spectral, c, sv);
        thermal_closed(tau, bath, ct, st);
        return sv + st;
    }
    const double sign = tau < 0.0 ? -1.0 : 1.0;
    const double at = std::abs(tau);
    auto f = [&](double w) { return 2.0 * spectral::effective_density(w, bath) * std::sin(w * at); };
    return sign * windowed_integral(f, at, bath_config(bath.spectral, bath.temperature > 0.0));
}

KernelEval kernel_eval(double tau, const spectral::BathSpec& bath, Method method) {
    KernelEval out;
    out.d1 = noise_kernel(tau, bath, method);
    out.d2 = dissipation_kernel(tau, bath.spectral, method);
    out.time = tau;
    return out;
}

KernelQuartet kernel_quartet_closed(double tau, const spectral::BathSpec& bath) {
    spectral::validate(bath);
    KernelQuartet q;
    double ct, st;
    vacuum_closed(tau, bath.spectral, q.d1_vac, q.d2);
    thermal_closed(tau, bath, ct, st);
    q.d1 = q.d1_vac + ct;
    q.e1 = q.d2 + st;
    return q;
}

RwaCorrelations rwa_correlations(double tau, const spectral::BathSpec& bath, Method method) {
    spectral::validate(bath);
    RwaCorrelations out;
    if (method == Method::quadrature) {
        const double T = bath.temperature;
        const double at = std::abs(tau);
        const double sign = tau < 0.0 ? -1.0 : 1.0;
        const quad::QuadConfig cfg = bath_config(bath.spectral, T > 0.0);
        if (T > 0.0) {
            auto jn = [&](double w) { return 2.0 * spectral::density(w, bath.spectral) * nbar(w, T); };
            out.d1 = windowed_integral([&](double w) { return jn(w) * std::cos(w * at); }, at, cfg);
            out.d2 = sign * windowed_integral([&](double w) { return jn(w) * std::sin(w * at); }, at, cfg);
        }
        auto jp = [&](double w) {
            return 2.0 * spectral::density(w, bath.spectral) * (1.0 + nbar(w, T));
        };
        quad::QuadConfig plain = bath_config(bath.spectral, false);
        out.d1_tilde = windowed_integral([&](double w) { return jp(w) * std::cos(w * at); }, at,
                                         T > 0.0 ? cfg : plain);
        out.d2_tilde = sign * windowed_integral([&](double w) { return jp(w) * std::sin(w * at); },
                                                at, T > 0.0 ? cfg : plain);
        return out;
    }
    // Identity route: halve the sum/difference of the thermal and vacuum kernels.
    const double D1 = noise_kernel(tau, bath, method);
    const double D1v = vacuum_noise_kernel(tau, bath.spectral, method);
    const double D2 = dissipation_kernel(tau, bath.spectral, method);
    const double E1 = thermal_dissipation_kernel(tau, bath, method);
    out.d1 = 0.5 * (D1 - D1v);
    out.d2 = 0.5 * (E1 - D2);
    out.d1_tilde = 0.5 * (D1 + D1v);
    out.d2_tilde = 0.5 * (E1 + D2);
    return out;
}

double matsubara_correlation(double u, const spectral::BathSpec& bath) {
    spectral::validate(bath);
    require(bath.temperature > 0.0, "matsubara_correlation: requires T > 0");
    require(u >= 0.0 && u <= 1.0, "matsubara_correlation: u must lie in [0, 1]");
    const double beta = 1.0 / bath.temperature;
    auto f = [&](double w) {
        const double bw = beta * w;
        // (e^{-bw(1-u)} + e^{-bw u}) / (1 - e^{-bw}); combined form stays
        // finite for every u in [0,1] even though the cosh/sinh split does not.
        return spectral::density(w, bath.spectral) *
               (std::exp(-bw * (1.0 - u)) + std::exp(-bw * u)) / (-std::expm1(-bw));
    };
    return quad::integrate(f, 0.0, std::numeric_limits<double>::infinity(),
                           bath_config(bath.spectral, true));
}

} // namespace sbc::kernels
