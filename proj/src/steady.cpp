// steady.cpp — principal-value long-time coefficients and analytic steady states
#include "sbc/steady.hpp"
#include "sbc/common.hpp"
#include "sbc/quad.hpp"
#include "sbc/special.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <exception>
#include <limits>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace sbc::steady {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

quad::QuadConfig pv_config(const spectral::BathSpec& bath, double omega0, bool thermal) {
    quad::QuadConfig cfg;
    // Keep the truncation point well past both the cutoff tail and the pole.
    cfg.scale = std::max(bath.spectral.cutoff, 0.25 * omega0);
    if (thermal && bath.temperature > 0.0 && bath.spectral.ohmicity < 1.0)
        cfg.endpoint_power = bath.spectral.ohmicity - 1.0;
    return cfg;
}

double tanh_half(double omega0, double T) {
    return T > 0.0 ? std::tanh(0.5 * omega0 / T) : 1.0;
}

struct PvPieces {
    double pole_eff = 0.0;   // PV int J_eff/(w - w0)
    double pole_plain = 0.0; // PV int J/(w - w0)
    double reg_eff = 0.0;    // int J_eff/(w + w0)
    double reg_plain = 0.0;  // int J/(w + w0)
    double residual = 0.0;
};

PvPieces pv_pieces(const spectral::BathSpec& bath, double omega0) {
    PvPieces out;
    const quad::QuadConfig cfg_eff = pv_config(bath, omega0, true);
    const quad::QuadConfig cfg_plain = pv_config(bath, omega0, false);
    auto jeff = [&](double w) { return spectral::effective_density(w, bath); };
    auto jpl = [&](double w) { return spectral::density(w, bath.spectral); };

    const quad::PVResult pe = quad::principal_value(jeff, omega0, 0.0, kInf, cfg_eff);
    const quad::PVResult pp = quad::principal_value(jpl, omega0, 0.0, kInf, cfg_plain);
    out.pole_eff = pe.value;
    out.pole_plain = pp.value;
    out.reg_eff = quad::integrate([&](double w) { return jeff(w) / (w + omega0); }, 0.0, kInf,
                                  cfg_eff);
    out.reg_plain = quad::integrate([&](double w) { return jpl(w) / (w + omega0); }, 0.0, kInf,
                                    cfg_plain);
    out.residual = std::max(pe.residual_estimate, pp.residual_estimate);
    return out;
}

// Golden-section maximization of g on [lo, hi], tolerance in the argument.
double golden_max(const std::function<double(double)>& g, double lo, double hi, double tol) {
    const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double gc = g(c), gd = g(d);
    while (b - a > tol) {
        if (gc > gd) {
            b = d;
            d = c;
            gd = gc;
            c = b - invphi * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + invphi * (b - a);
            gd = g(d);
        }
    }
    return 0.5 * (a + b);
}

SteadyReport finish_report(double v1, double v2, double v3, double residual) {
    SteadyReport r;
    r.v = {v1, v2, v3};
    r.coherence = std::hypot(v1, v2);
    r.theta = std::atan2(r.coherence, std::abs(v3));
    r.pv_residual = residual;
    return r;
}

} // namespace

LongTimeCoeffs longtime_coeffs(int model, const spectral::BathSpec& bath, double omega0) {
    require(model == 1 || model == 2, "longtime_coeffs: model must be 1 or 2");
    spectral::validate(bath);
    require(omega0 > 0.0, "longtime_coeffs: omega0 must be > 0");
    const PvPieces p = pv_pieces(bath, omega0);
    LongTimeCoeffs c;
    if (model == 1) {
        c.delta1 = 2.0 * (p.pole_eff - p.reg_eff);
        c.delta2 = -2.0 * (p.pole_plain + p.reg_plain);
    } else {
        c.delta1 = p.pole_eff;
        c.delta2 = p.pole_plain;
    }
    c.j_at_omega0 = spectral::density(omega0, bath.spectral);
    c.jeff_at_omega0 = spectral::effective_density(omega0, bath);
    c.gamma2_inf = -4.0 * bath.spectral.lambda * bath.spectral.cutoff *
                   std::tgamma(bath.spectral.ohmicity);
    c.pv_residual = p.residual;
    return c;
}

std::pair<double, double> delta_closed_cubic_vacuum(double lambda, double Omega,
                                                    double omega0) {
    require(lambda > 0.0 && Omega > 0.0 && omega0 > 0.0,
            "delta_closed_cubic_vacuum: parameters must be > 0");
    const double x = omega0 / Omega;
    const double w3 = omega0 * omega0 * omega0;
    // Exponential-integral pair from the two pole positions of the cubic bath.
    const double ei_sym = std::exp(-x) * special::ei(x);
    const double e1_sym = std::exp(x) * special::e1(x);
    const double pref = 2.0 * lambda / (Omega * Omega);
    const double d1 = pref * (2.0 * omega0 * Omega * Omega + w3 * (e1_sym - ei_sym));
    const double d2 = -pref * (4.0 * Omega * Omega * Omega + 2.0 * omega0 * omega0 * Omega -
                               w3 * (ei_sym + e1_sym));
    return {d1, d2};
}

SteadyReport steady_state_model1(double f1, double f2, const spectral::BathSpec& bath,
                                 double omega0) {
    const LongTimeCoeffs c = longtime_coeffs(1, bath, omega0);
    const double th = tanh_half(omega0, bath.temperature);
    const double den = omega0 + f2 * f2 * c.delta1;
    require(std::abs(den) > 1e-12 * omega0,
            "steady_state_model1: singular parameter point (omega0 + f2^2 delta1 = 0)");
    const double v1 = f1 * f2 * (c.delta1 * th - c.gamma2_inf + c.delta2) / den;
    return finish_report(v1, 0.0, -th, c.pv_residual);
}

SteadyReport steady_state_model2(double f1, double f2, const spectral::BathSpec& bath,
                                 double omega0) {
    const LongTimeCoeffs c = longtime_coeffs(2, bath, omega0);
    const double th = tanh_half(omega0, bath.temperature);
    const double alpha = c.delta1 * th + c.delta2 +
                         bath.spectral.lambda * bath.spectral.cutoff *
                             std::tgamma(bath.spectral.ohmicity);
    const std::complex<double> den(omega0 + f2 * f2 * c.delta1,
                                   -M_PI * f2 * f2 * c.jeff_at_omega0);
    require(std::norm(den) > 0.0, "steady_state_model2: singular parameter point");
    const std::complex<double> w = 2.0 * f1 * f2 * alpha / den;
    return finish_report(w.real(), w.imag(), -th, c.pv_residual);
}

CoherenceOptimum max_coherence_over_f2(int model, double f1, const spectral::BathSpec& bath,
                                       double omega0, bool force_numeric) {
    require(model == 1 || model == 2, "max_coherence_over_f2: model must be 1 or 2");
    const LongTimeCoeffs c = longtime_coeffs(model, bath, omega0);
    const double th = tanh_half(omega0, bath.temperature);
    CoherenceOptimum out;
    if (model == 1 && c.delta1 > 0.0 && !force_numeric) {
        out.f2_opt = std::sqrt(omega0 / c.delta1);
        out.cmax_over_f1 = std::abs(c.delta1 * th - c.gamma2_inf + c.delta2) /
                           (2.0 * std::sqrt(omega0 * c.delta1));
        return out;
    }
    // Coherence per unit f1 as a function of f2 (both models are linear in f1).
    auto c_of_f2 = [&](double f2) {
        if (model == 1) {
            const double den = omega0 + f2 * f2 * c.delta1;
            if (std::abs(den) < 1e-12 * omega0) return 0.0;
            return std::abs(f2 * (c.delta1 * th - c.gamma2_inf + c.delta2) / den);
        }
        const double alpha = c.delta1 * th + c.delta2 +
                             bath.spectral.lambda * bath.spectral.cutoff *
                                 std::tgamma(bath.spectral.ohmicity);
        const std::complex<double> den(omega0 + f2 * f2 * c.delta1,
                                       -M_PI * f2 * f2 * c.jeff_at_omega0);
        return std::abs(2.0 * f2 * alpha / std::abs(den));
    };
    const double u = golden_max([&](double x) { return c_of_f2(std::exp(x)); },
                                std::log(1e-3), std::log(1.0), 1e-8);
    out.f2_opt = std::exp(u);
    out.cmax_over_f1 = c_of_f2(out.f2_opt);
    out.numeric_fallback = true;
    (void)f1;
    return out;
}

std::vector<SweepPoint> temperature_sweep(int model, const spectral::SpectralParams& spectral_params,
                                          const std::vector<double>& T_grid, double f1,
                                          double omega0) {
    require(!T_grid.empty(), "temperature_sweep: empty grid");
    for (std::size_t i = 0; i < T_grid.size(); ++i) {
        require(T_grid[i] >= 0.0, "temperature_sweep: temperatures must be >= 0");
        require(i == 0 || T_grid[i] > T_grid[i - 1], "temperature_sweep: grid must increase");
    }
    std::vector<SweepPoint> out(T_grid.size());
    std::exception_ptr fail;
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(T_grid.size()); ++i) {
        try {
            spectral::BathSpec bath{spectral_params, T_grid[i]};
            const CoherenceOptimum opt = max_coherence_over_f2(model, f1, bath, omega0);
            SweepPoint pt;
            pt.temperature = T_grid[i];
            pt.f2_opt = opt.f2_opt;
            pt.cmax_over_f1 = opt.cmax_over_f1;
            pt.v3 = -tanh_half(omega0, T_grid[i]);
            pt.theta = std::atan2(std::abs(f1) * opt.cmax_over_f1, std::abs(pt.v3));
            pt.numeric_fallback = opt.numeric_fallback;
            out[i] = pt;
        } catch (...) {
#if defined(_OPENMP)
#pragma omp critical
#endif
            if (!fail) fail = std::current_exception();
        }
    }
    if (fail) std::rethrow_exception(fail);
    return out;
}

} // namespace sbc::steady
