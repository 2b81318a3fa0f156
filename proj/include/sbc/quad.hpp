// sbc/quad.hpp — adaptive Gauss–Kronrod quadrature, Cauchy principal values,
// triangle-domain double integrals, cumulative integrals
#pragma once

#include <functional>
#include <vector>

namespace sbc::quad {

struct QuadConfig {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    int max_subdivisions = 2000;
    // Semi-infinite domains are truncated at a + tail_cut*scale; `scale` is the
    // e-folding length of the integrand's exponential tail (set it to the
    // spectral cutoff for bath integrands). The discarded tail is bounded by
    // |f(cut)|*scale and folded into the convergence check.
    double tail_cut = 50.0;
    double scale = 1.0;
    // Integrands behaving like (x-a)^p with -1 < p < 0 near the lower endpoint
    // are handled by a power-weighted substitution on the first panel.
    double endpoint_power = 0.0;
    // Tensor Gauss–Legendre order for triangle_integral.
    int gl_points = 96;
};

struct PVResult {
    double value = 0.0;
    double residual_estimate = 0.0;
    double pole = 0.0;
};

using Fn1 = std::function<double(double)>;
using Fn2 = std::function<double(double, double)>;

// Integral of f over [a, b]; b may be +infinity (exponential-tail truncation).
double integrate(const Fn1& f, double a, double b, const QuadConfig& cfg = {});

// PV int_a^b f(x)/(x - pole) dx by singularity subtraction on a symmetric
// window around the pole plus ordinary quadrature outside it.
PVResult principal_value(const Fn1& f, double pole, double a, double b,
                         const QuadConfig& cfg = {});

// Test oracle: symmetric excision [a, pole-eps] + [pole+eps, b] with linear
// extrapolation eps -> 0. Slower and less accurate than principal_value.
double principal_value_excision(const Fn1& f, double pole, double a, double b,
                                const QuadConfig& cfg = {});

// int_0^1 dx int_0^x dy F(x, y) via the y = x*r substitution on a tensor
// Gauss–Legendre grid (genuinely two-dimensional integrands).
double triangle_integral(const Fn2& F, const QuadConfig& cfg = {});

// Same domain for integrands depending only on u = x - y:
// int_0^1 (1-u) g(u) du.
double triangle_integral_reduced(const Fn1& g, const QuadConfig& cfg = {});

// Table of int_0^t g(tau) dtau on a strictly increasing grid (t_grid[0] >= 0).
std::vector<double> cumulative_integral(const Fn1& g,
                                        const std::vector<double>& t_grid,
                                        const QuadConfig& cfg = {});

// Gauss–Legendre nodes and weights on [-1, 1] (Newton on the Legendre
// recurrence; deterministic).
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

} // namespace sbc::quad
