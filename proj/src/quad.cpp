// quad.cpp — G7-K15 adaptive core and the derived integral operators
#include "sbc/quad.hpp"
#include "sbc/common.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sbc::quad {

namespace {

// 15-point Kronrod nodes (nonnegative half) with embedded 7-point Gauss rule.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, error;
};

// One G7-K15 application on [a, b]; returns Kronrod value, sets QUADPACK-style
// error estimate.
double gk15(const Fn1& f, double a, double b, double& err) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * kXgk[i]);
        fv[14 - i] = f(c + h * kXgk[i]);
    }
    fv[7] = f(c);
    double resk = 0.0, resabs = 0.0;
    for (int i = 0; i < 7; ++i) {
        resk += kWgk[i] * (fv[i] + fv[14 - i]);
        resabs += kWgk[i] * (std::abs(fv[i]) + std::abs(fv[14 - i]));
    }
    resk += kWgk[7] * fv[7];
    resabs += kWgk[7] * std::abs(fv[7]);
    double resg = kWg[3] * fv[7];
    for (int i = 0; i < 3; ++i) resg += kWg[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);

    const double reskh = 0.5 * resk;
    double resasc = kWgk[7] * std::abs(fv[7] - reskh);
    for (int i = 0; i < 7; ++i)
        resasc += kWgk[i] *
                  (std::abs(fv[i] - reskh) + std::abs(fv[14 - i] - reskh));
    err = std::abs((resk - resg) * h);
    resasc *= std::abs(h);
    resabs *= std::abs(h);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps50 = 50.0 * std::numeric_limits<double>::epsilon() * resabs;
    if (eps50 > err) err = eps50;
    return resk * h;
}

// Adaptive bisection driver on a finite interval.
double adaptive(const Fn1& f, double a, double b, const QuadConfig& cfg,
                double extra_error, double& err_out) {
    std::vector<Panel> panels;
    double e0;
    double v0 = gk15(f, a, b, e0);
    panels.push_back({a, b, v0, e0});
    const double width0 = b - a;
    for (int iter = 0; iter < cfg.max_subdivisions; ++iter) {
        double total = 0.0, toterr = extra_error;
        std::size_t worst = 0;
        double worst_err = -1.0;
        for (std::size_t i = 0; i < panels.size(); ++i) {
            total += panels[i].value;
            toterr += panels[i].error;
            if (panels[i].error > worst_err &&
                panels[i].b - panels[i].a > 1e-14 * width0) {
                worst_err = panels[i].error;
                worst = i;
            }
        }
        const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total));
        if (toterr <= tol || worst_err < 0.0) {
            err_out = toterr;
            if (toterr > 10.0 * tol)
                throw NumericError("quadrature: interval too fine to refine further",
                                   total, toterr);
            return total;
        }
        Panel p = panels[worst];
        const double mid = 0.5 * (p.a + p.b);
        double e1, e2;
        const double v1 = gk15(f, p.a, mid, e1);
        const double v2 = gk15(f, mid, p.b, e2);
        panels[worst] = {p.a, mid, v1, e1};
        panels.push_back({mid, p.b, v2, e2});
    }
    double total = 0.0, toterr = extra_error;
    for (const auto& p : panels) {
        total += p.value;
        toterr += p.error;
    }
    const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total));
    if (toterr > tol)
        throw NumericError("quadrature: subdivision limit reached", total, toterr);
    err_out = toterr;
    return total;
}

// Power-weighted first panel for integrands ~ (x-a)^p, -1 < p < 0:
// substitute x = a + h*v^q with q = 1/(1+p), which makes the transformed
// integrand bounded at v = 0 (Kronrod nodes are interior, so f is never
// evaluated at the endpoint itself).
double integrate_power_panel(const Fn1& f, double a, double h, double p,
                             const QuadConfig& cfg, double& err_out) {
    const double q = 1.0 / (1.0 + p);
    auto g = [&](double v) {
        const double x = a + h * std::pow(v, q);
        return f(x) * h * q * std::pow(v, q - 1.0);
    };
    QuadConfig c = cfg;
    c.endpoint_power = 0.0;
    return adaptive(g, 0.0, 1.0, c, 0.0, err_out);
}

} // namespace

double integrate(const Fn1& f, double a, double b, const QuadConfig& cfg) {
    require(cfg.rel_tol > 0 && cfg.abs_tol > 0, "integrate: tolerances must be positive");
    require(cfg.max_subdivisions >= 1, "integrate: max_subdivisions must be >= 1");
    require(!(a != a) && b >= a, "integrate: invalid bounds");
    double tail_bound = 0.0;
    double bb = b;
    if (std::isinf(b)) {
        bb = a + cfg.tail_cut * cfg.scale;
        tail_bound = std::abs(f(bb)) * cfg.scale;
    }
    if (bb <= a) return 0.0;
    double err = 0.0;
    if (cfg.endpoint_power != 0.0) {
        require(cfg.endpoint_power > -1.0, "integrate: endpoint power must exceed -1");
        const double h = std::min(bb - a, cfg.scale);
        double e1 = 0.0, e2 = 0.0;
        double v = integrate_power_panel(f, a, h, cfg.endpoint_power, cfg, e1);
        if (a + h < bb) {
            QuadConfig c = cfg;
            c.endpoint_power = 0.0;
            // Each piece meets its own tolerance; carrying e1 into the
            // remainder budget would make the target unreachable whenever the
            // weighted panel holds most of the value.
            v += adaptive(f, a + h, bb, c, tail_bound, e2);
        }
        return v;
    }
    return adaptive(f, a, bb, cfg, tail_bound, err);
}

PVResult principal_value(const Fn1& f, double pole, double a, double b,
                         const QuadConfig& cfg) {
    double bb = std::isinf(b) ? pole + cfg.tail_cut * cfg.scale : b;
    require(pole > a && pole < bb, "principal_value: pole must lie strictly inside the domain");

    const double f0 = f(pole);
    const double d = 1e-6 * std::max(1.0, std::abs(pole));
    const double df0 = (f(pole + d) - f(pole - d)) / (2.0 * d);
    const double guard = 1e-9 * std::max(1.0, std::abs(pole));
    auto sub = [&](double x) {
        if (std::abs(x - pole) < guard) return df0;
        return (f(x) - f0) / (x - pole);
    };
    // Keep a power-law endpoint singularity of f out of the subtraction
    // window; the left remainder then handles it with its weighted panel.
    const double w = cfg.endpoint_power != 0.0
                         ? std::min(0.5 * (pole - a), bb - pole)
                         : std::min(pole - a, bb - pole);
    PVResult r;
    r.pole = pole;
    double e1 = 0.0, e2 = 0.0, e3 = 0.0;
    QuadConfig c = cfg;
    c.endpoint_power = 0.0;
    // Symmetric window: the f(pole)*log term vanishes exactly.
    r.value = adaptive(sub, pole - w, pole + w, c, 0.0, e1);
    auto outer = [&](double x) { return f(x) / (x - pole); };
    if (pole - w > a) {
        const double left = integrate(outer, a, pole - w, cfg);
        r.value += left;
        e2 = cfg.abs_tol + cfg.rel_tol * std::abs(left);
    }
    if (std::isinf(b)) {
        QuadConfig ct = cfg;
        ct.endpoint_power = 0.0;
        const double cut = pole + cfg.tail_cut * cfg.scale;
        const double tail = std::abs(f(cut)) * cfg.scale / std::max(1.0, cut - pole);
        r.value += adaptive(outer, pole + w, cut, ct, tail, e3);
    } else if (bb > pole + w) {
        QuadConfig ct = cfg;
        ct.endpoint_power = 0.0;
        r.value += adaptive(outer, pole + w, bb, ct, 0.0, e3);
    }
    r.residual_estimate = e1 + e2 + e3;
    return r;
}

double principal_value_excision(const Fn1& f, double pole, double a, double b,
                                const QuadConfig& cfg) {
    double bb = std::isinf(b) ? pole + cfg.tail_cut * cfg.scale : b;
    require(pole > a && pole < bb, "principal_value_excision: pole inside domain");
    auto outer = [&](double x) { return f(x) / (x - pole); };
    auto excised = [&](double eps) {
        QuadConfig c = cfg;
        c.endpoint_power = 0.0;
        return integrate(outer, a, pole - eps, c) + integrate(outer, pole + eps, bb, c);
    };
    // Excision error is linear in eps to leading order; extrapolate from a
    // 10:1 pair.
    const double v1 = excised(1e-3), v2 = excised(1e-4);
    return (10.0 * v2 - v1) / 9.0;
}

double triangle_integral(const Fn2& F, const QuadConfig& cfg) {
    const int n = cfg.gl_points;
    require(n >= 2, "triangle_integral: need at least 2 Gauss points");
    std::vector<double> x, w;
    gauss_legendre(n, x, w);
    // Map [-1,1] -> [0,1].
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        const double xi = 0.5 * (x[i] + 1.0), wi = 0.5 * w[i];
        double inner = 0.0;
        for (int j = 0; j < n; ++j) {
            const double rj = 0.5 * (x[j] + 1.0), wj = 0.5 * w[j];
            const double v = F(xi, xi * rj);
            if (v != v)
                throw NumericError("triangle_integral: integrand produced NaN", total,
                                   std::abs(xi) + std::abs(xi * rj));
            inner += wj * v;
        }
        total += wi * xi * inner; // Jacobian of y = x*r
    }
    return total;
}

double triangle_integral_reduced(const Fn1& g, const QuadConfig& cfg) {
    return integrate([&](double u) { return (1.0 - u) * g(u); }, 0.0, 1.0, cfg);
}

std::vector<double> cumulative_integral(const Fn1& g,
                                        const std::vector<double>& t_grid,
                                        const QuadConfig& cfg) {
    require(!t_grid.empty(), "cumulative_integral: empty grid");
    require(t_grid.front() >= 0.0, "cumulative_integral: grid must start at t >= 0");
    for (std::size_t i = 1; i < t_grid.size(); ++i)
        require(t_grid[i] > t_grid[i - 1], "cumulative_integral: grid must be strictly increasing");
    std::vector<double> out(t_grid.size());
    double acc = t_grid.front() > 0.0 ? integrate(g, 0.0, t_grid.front(), cfg) : 0.0;
    out[0] = acc;
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        acc += integrate(g, t_grid[i - 1], t_grid[i], cfg);
        out[i] = acc;
    }
    return out;
}

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
}

} // namespace sbc::quad
