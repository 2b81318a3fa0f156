// tcl2.cpp — generator tables, coefficient listings, and Bloch-trajectory
// integration with a long-time constant-generator continuation
#include "sbc/tcl2.hpp"
#include "sbc/common.hpp"
#include "sbc/kernels.hpp"
#include "sbc/quad.hpp"
#include "sbc/special.hpp"
#include "sbc/steady.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace sbc::tcl2 {
namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr double kSteadyTol = 1e-8;   // stroboscopic steady-state threshold
constexpr int kDetectorPerPeriod = 8; // detector samples per free-rotation period

bool uses_bath2(const CouplingScheme& s) {
    return s.kind == SchemeKind::SplitTwoBaths ||
           (s.kind == SchemeKind::CompositePlusDephasing && s.f3 != 0.0);
}

// ---------------------------------------------------------------- table build

struct Gl {
    std::vector<double> x, w;
    Gl() { quad::gauss_legendre(15, x, w); }
};

std::array<double, 12> interval_increment(const spectral::BathSpec& bath, double omega0,
                                          double ta, double tb) {
    static const Gl gl;
    std::array<double, 12> inc{};
    const double rate = bath.spectral.cutoff + omega0 + bath.temperature;
    const int nsub = std::max(1, static_cast<int>(std::ceil((tb - ta) * rate / 1.5)));
    const double hs = (tb - ta) / nsub;
    for (int p = 0; p < nsub; ++p) {
        const double mid = ta + (p + 0.5) * hs;
        for (std::size_t k = 0; k < gl.x.size(); ++k) {
            const double tau = mid + 0.5 * hs * gl.x[k];
            const double wt = gl.w[k] * 0.5 * hs * 2.0; // the kernel-integral factor 2
            const kernels::KernelQuartet q = kernels::kernel_quartet_closed(tau, bath);
            const double c = std::cos(omega0 * tau);
            const double s = std::sin(omega0 * tau);
            inc[0] += wt * q.d1;
            inc[1] += wt * q.d1 * c;
            inc[2] += wt * q.d1 * s;
            inc[3] += wt * q.d2;
            inc[4] += wt * q.d2 * c;
            inc[5] += wt * q.d2 * s;
            inc[6] += wt * q.d1_vac;
            inc[7] += wt * q.d1_vac * c;
            inc[8] += wt * q.d1_vac * s;
            inc[9] += wt * q.e1;
            inc[10] += wt * q.e1 * c;
            inc[11] += wt * q.e1 * s;
        }
    }
    return inc;
}

std::array<std::vector<double>*, 12> columns(GammaTable& tab) {
    return {&tab.g1, &tab.g1c, &tab.g1s, &tab.g2,  &tab.g2c, &tab.g2s,
            &tab.w1, &tab.w1c, &tab.w1s, &tab.e1,  &tab.e1c, &tab.e1s};
}

std::array<const std::vector<double>*, 12> columns(const GammaTable& tab) {
    return {&tab.g1, &tab.g1c, &tab.g1s, &tab.g2,  &tab.g2c, &tab.g2s,
            &tab.w1, &tab.w1c, &tab.w1s, &tab.e1,  &tab.e1c, &tab.e1s};
}

GammaValues row(const GammaTable& tab, std::size_t i) {
    GammaValues g;
    g.g1 = tab.g1[i];
    g.g1c = tab.g1c[i];
    g.g1s = tab.g1s[i];
    g.g2 = tab.g2[i];
    g.g2c = tab.g2c[i];
    g.g2s = tab.g2s[i];
    g.w1 = tab.w1[i];
    g.w1c = tab.w1c[i];
    g.w1s = tab.w1s[i];
    g.e1 = tab.e1[i];
    g.e1c = tab.e1c[i];
    g.e1s = tab.e1s[i];
    return g;
}

// ------------------------------------------------------- generator assembly

GeneratorSample assemble_composite(double f1, double f2, double omega0,
                                   const GammaValues& g, double dephasing_extra, double t) {
    GeneratorSample out;
    out.time = t;
    const double f11 = f1 * f1, f22 = f2 * f2, f12 = f1 * f2;
    Eigen::Matrix3d& M = out.M;
    M(0, 0) = -f11 * g.g1 - dephasing_extra;
    M(0, 1) = -omega0;
    M(0, 2) = f12 * g.g1c;
    M(1, 0) = omega0 + f22 * g.g1s;
    M(1, 1) = -f11 * g.g1 - dephasing_extra - f22 * g.g1c;
    M(1, 2) = f12 * g.g1s;
    M(2, 0) = f12 * g.g1;
    M(2, 1) = 0.0;
    M(2, 2) = -f22 * g.g1c;
    out.b[0] = f12 * g.g2s;
    out.b[1] = f12 * (g.g2 - g.g2c);
    out.b[2] = -f22 * g.g2s;
    return out;
}

GeneratorSample assemble_rwa(double f1, double f2, double omega0, const GammaValues& g,
                             double t) {
    GeneratorSample out;
    out.time = t;
    const double f11 = f1 * f1, f22 = f2 * f2, f12 = f1 * f2;
    const double sc = g.g1c + g.e1s; // cosine-weighted dissipative pair
    const double ss = g.g1s - g.e1c; // sine-weighted shift pair
    Eigen::Matrix3d& M = out.M;
    M(0, 0) = -f11 * g.g1 - 0.25 * f22 * sc;
    M(1, 1) = M(0, 0);
    M(0, 1) = -omega0 - 0.25 * f22 * ss;
    M(1, 0) = -M(0, 1);
    M(0, 2) = 0.5 * f12 * sc;
    M(1, 2) = 0.5 * f12 * ss;
    M(2, 0) = 0.5 * f12 * g.g1;
    M(2, 1) = 0.5 * f12 * g.e1;
    M(2, 2) = -0.5 * f22 * sc;
    out.b[0] = 0.5 * f12 * (g.w1 + g.w1c + g.g2s);
    out.b[1] = 0.5 * f12 * (g.w1s + g.g2 - g.g2c);
    out.b[2] = -0.5 * f22 * (g.w1c + g.g2s);
    return out;
}

GeneratorSample assemble_split(double f1, const GammaValues& ga, double f2,
                               const GammaValues& gb, double omega0, double t) {
    GeneratorSample out;
    out.time = t;
    const double f11 = f1 * f1, f22 = f2 * f2;
    Eigen::Matrix3d& M = out.M;
    M(0, 0) = -f11 * ga.g1;
    M(0, 1) = -omega0;
    M(1, 0) = omega0 + f22 * gb.g1s;
    M(1, 1) = -f11 * ga.g1 - f22 * gb.g1c;
    M(2, 2) = -f22 * gb.g1c;
    out.b[2] = -f22 * gb.g2s;
    return out;
}

GammaValues end_values(const spectral::BathSpec& bath, double omega0, double t) {
    if (t == 0.0) return {};
    GammaTable tab = gamma_table(bath, omega0, {0.0, t}, false);
    return row(tab, 1);
}

// Long-time limit of the tabulated coefficients, taken from the
// principal-value integrals (constant continuation generator).
GeneratorSample frozen_generator(const CouplingScheme& s, double omega0) {
    switch (s.kind) {
        case SchemeKind::Composite:
        case SchemeKind::CompositePlusDephasing: {
            const steady::LongTimeCoeffs c = steady::longtime_coeffs(1, s.bath1, omega0);
            GammaValues g;
            g.g1c = 2.0 * M_PI * c.jeff_at_omega0;
            g.g1s = c.delta1;
            g.g2 = c.gamma2_inf;
            g.g2c = c.delta2;
            g.g2s = 2.0 * M_PI * c.j_at_omega0;
            return assemble_composite(s.f1, s.f2, omega0, g, 0.0, kNan);
        }
        case SchemeKind::SplitTwoBaths: {
            const steady::LongTimeCoeffs c = steady::longtime_coeffs(1, s.bath2, omega0);
            GammaValues gb;
            gb.g1c = 2.0 * M_PI * c.jeff_at_omega0;
            gb.g1s = c.delta1;
            gb.g2s = 2.0 * M_PI * c.j_at_omega0;
            return assemble_split(s.f1, GammaValues{}, s.f2, gb, omega0, kNan);
        }
        default:
            throw std::domain_error("integrate_bloch: no long-time limit set for this scheme");
    }
}

double auto_table_cap(const CouplingScheme& s) {
    double cap = 200.0;
    auto one = [](const spectral::BathSpec& b) {
        return b.temperature > 0.0 ? 40.0 / b.temperature : 200.0;
    };
    cap = std::max(cap, one(s.bath1));
    if (uses_bath2(s)) cap = std::max(cap, one(s.bath2));
    return std::min(cap, 2000.0);
}

// ------------------------------------------------------------ interpolation

struct InterpPos {
    std::size_t j = 0;
    double h00 = 0.0, h10 = 0.0, h01 = 0.0, h11 = 0.0, h = 0.0;
};

InterpPos locate(const std::vector<double>& t, double x) {
    require(t.size() >= 2, "interpolate: table too short");
    const double span = t.back() - t.front();
    require(x >= t.front() - 1e-9 * span && x <= t.back() + 1e-9 * span,
            "interpolate: time outside table span");
    x = std::clamp(x, t.front(), t.back());
    std::size_t j = std::upper_bound(t.begin(), t.end(), x) - t.begin();
    j = std::clamp<std::size_t>(j, 1, t.size() - 1) - 1;
    InterpPos p;
    p.j = j;
    p.h = t[j + 1] - t[j];
    const double u = (x - t[j]) / p.h;
    const double u2 = u * u, u3 = u2 * u;
    p.h00 = 2.0 * u3 - 3.0 * u2 + 1.0;
    p.h10 = u3 - 2.0 * u2 + u;
    p.h01 = -2.0 * u3 + 3.0 * u2;
    p.h11 = u3 - u2;
    return p;
}

double interp_column(const std::vector<double>& t, const std::vector<double>& y,
                     const InterpPos& p) {
    const std::size_t j = p.j, n = t.size();
    auto slope = [&](std::size_t i) {
        if (i == 0) return (y[1] - y[0]) / (t[1] - t[0]);
        if (i == n - 1) return (y[n - 1] - y[n - 2]) / (t[n - 1] - t[n - 2]);
        return (y[i + 1] - y[i - 1]) / (t[i + 1] - t[i - 1]);
    };
    return p.h00 * y[j] + p.h10 * p.h * slope(j) + p.h01 * y[j + 1] +
           p.h11 * p.h * slope(j + 1);
}

// ------------------------------------------------------------- RHS sampling

struct TableCtx {
    const CouplingScheme* scheme = nullptr;
    double omega0 = 0.0;
    const GammaTable* tab1 = nullptr;
    const GammaTable* tab2 = nullptr;
};

GeneratorSample sample_tables(const TableCtx& c, double t) {
    const CouplingScheme& s = *c.scheme;
    const GammaValues g1v = interpolate(*c.tab1, t);
    switch (s.kind) {
        case SchemeKind::Composite:
            return assemble_composite(s.f1, s.f2, c.omega0, g1v, 0.0, t);
        case SchemeKind::RWAComposite:
            return assemble_rwa(s.f1, s.f2, c.omega0, g1v, t);
        case SchemeKind::SplitTwoBaths:
            return assemble_split(s.f1, g1v, s.f2, interpolate(*c.tab2, t), c.omega0, t);
        case SchemeKind::CompositePlusDephasing: {
            const double extra =
                c.tab2 ? s.f3 * s.f3 * interpolate(*c.tab2, t).g1 : 0.0;
            return assemble_composite(s.f1, s.f2, c.omega0, g1v, extra, t);
        }
    }
    throw std::logic_error("sample_tables: unreachable");
}

// --------------------------------------------------- adaptive Runge-Kutta 5(4)

struct RkState {
    double t = 0.0;
    Eigen::Vector3d y = Eigen::Vector3d::Zero();
    double h = 0.0;
    double rel_tol = 1e-9, abs_tol = 1e-12;
};

template <typename Rhs>
void rk_advance(RkState& st, double target, const Rhs& rhs) {
    static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    const double eps = 1e-14 * std::max(1.0, std::abs(target));
    while (st.t < target - eps) {
        const double h = std::min(st.h, target - st.t);
        const Eigen::Vector3d& y = st.y;
        const Eigen::Vector3d k1 = rhs(st.t, y);
        const Eigen::Vector3d k2 = rhs(st.t + c2 * h, y + h * (k1 / 5.0));
        const Eigen::Vector3d k3 = rhs(st.t + c3 * h, y + h * (3.0 / 40 * k1 + 9.0 / 40 * k2));
        const Eigen::Vector3d k4 =
            rhs(st.t + c4 * h, y + h * (44.0 / 45 * k1 - 56.0 / 15 * k2 + 32.0 / 9 * k3));
        const Eigen::Vector3d k5 =
            rhs(st.t + c5 * h, y + h * (19372.0 / 6561 * k1 - 25360.0 / 2187 * k2 +
                                        64448.0 / 6561 * k3 - 212.0 / 729 * k4));
        const Eigen::Vector3d k6 =
            rhs(st.t + h, y + h * (9017.0 / 3168 * k1 - 355.0 / 33 * k2 + 46732.0 / 5247 * k3 +
                                   49.0 / 176 * k4 - 5103.0 / 18656 * k5));
        const Eigen::Vector3d y5 =
            y + h * (35.0 / 384 * k1 + 500.0 / 1113 * k3 + 125.0 / 192 * k4 -
                     2187.0 / 6784 * k5 + 11.0 / 84 * k6);
        const Eigen::Vector3d k7 = rhs(st.t + h, y5);
        const Eigen::Vector3d y4 =
            y + h * (5179.0 / 57600 * k1 + 7571.0 / 16695 * k3 + 393.0 / 640 * k4 -
                     92097.0 / 339200 * k5 + 187.0 / 2100 * k6 + k7 / 40.0);
        double errnorm = 0.0;
        for (int i = 0; i < 3; ++i) {
            const double sc =
                st.abs_tol + st.rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
            const double e = (y5[i] - y4[i]) / sc;
            errnorm += e * e;
        }
        errnorm = std::sqrt(errnorm / 3.0);
        const double factor =
            std::clamp(0.9 * std::pow(std::max(errnorm, 1e-12), -0.2), 0.2, 5.0);
        if (errnorm <= 1.0) {
            st.t += h;
            st.y = y5;
            if (h >= st.h) st.h = h * factor; // keep the suggestion when clipped to an event
        } else {
            st.h = h * factor;
            if (st.h < 1e-12 * std::max(1.0, std::abs(st.t)))
                throw NumericError("integrate_bloch: step size underflow (stiffness)", st.t,
                                   st.h);
        }
    }
    st.t = target;
}

} // namespace

// ------------------------------------------------------------------ factories

CouplingScheme CouplingScheme::composite(double f1, double f2,
                                         const spectral::BathSpec& bath) {
    CouplingScheme s;
    s.kind = SchemeKind::Composite;
    s.f1 = f1;
    s.f2 = f2;
    s.bath1 = bath;
    return s;
}

CouplingScheme CouplingScheme::rwa_composite(double f1, double f2,
                                             const spectral::BathSpec& bath) {
    CouplingScheme s = composite(f1, f2, bath);
    s.kind = SchemeKind::RWAComposite;
    return s;
}

CouplingScheme CouplingScheme::split_two_baths(double f1, const spectral::BathSpec& bath1,
                                               double f2, const spectral::BathSpec& bath2) {
    CouplingScheme s;
    s.kind = SchemeKind::SplitTwoBaths;
    s.f1 = f1;
    s.f2 = f2;
    s.bath1 = bath1;
    s.bath2 = bath2;
    return s;
}

CouplingScheme CouplingScheme::composite_plus_dephasing(double f1, double f2,
                                                        const spectral::BathSpec& bath1,
                                                        double f3,
                                                        const spectral::BathSpec& bath2) {
    CouplingScheme s;
    s.kind = SchemeKind::CompositePlusDephasing;
    s.f1 = f1;
    s.f2 = f2;
    s.f3 = f3;
    s.bath1 = bath1;
    s.bath2 = bath2;
    return s;
}

std::vector<std::string> coupling_warnings(const CouplingScheme& scheme, double omega0) {
    std::vector<std::string> out;
    auto check = [&](const spectral::BathSpec& bath, double f, const char* which) {
        if (bath.spectral.lambda * std::abs(f) >= 0.1 * omega0)
            out.push_back(std::string("weak-coupling guard: lambda*|") + which +
                          "| is not small against omega0; second-order results are unreliable");
    };
    check(scheme.bath1, scheme.f1, "f1");
    const bool split = scheme.kind == SchemeKind::SplitTwoBaths;
    check(split ? scheme.bath2 : scheme.bath1, scheme.f2, "f2");
    if (scheme.kind == SchemeKind::CompositePlusDephasing)
        check(scheme.bath2, scheme.f3, "f3");
    return out;
}

// ---------------------------------------------------------------- gamma_table

GammaTable gamma_table(const spectral::BathSpec& bath, double omega0,
                       const std::vector<double>& t_grid, bool parallel) {
    spectral::validate(bath);
    require(omega0 > 0.0, "gamma_table: omega0 must be > 0");
    require(!t_grid.empty(), "gamma_table: empty grid");
    require(t_grid.front() >= 0.0, "gamma_table: grid must start at t >= 0");
    for (std::size_t i = 1; i < t_grid.size(); ++i)
        require(t_grid[i] > t_grid[i - 1], "gamma_table: grid must be strictly increasing");

    std::vector<double> edges = t_grid;
    const bool leading = t_grid.front() > 0.0;
    if (leading) edges.insert(edges.begin(), 0.0);
    const std::size_t m = edges.size() - 1;

    std::vector<std::array<double, 12>> inc(m);
#if defined(_OPENMP)
#pragma omp parallel for schedule(static) if (parallel)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(m); ++i)
        inc[i] = interval_increment(bath, omega0, edges[i], edges[i + 1]);
#if !defined(_OPENMP)
    (void)parallel;
#endif

    GammaTable tab;
    tab.omega0 = omega0;
    tab.t = t_grid;
    for (auto* col : columns(tab)) col->resize(t_grid.size());
    std::array<double, 12> run{};
    std::size_t out_i = 0;
    if (!leading) {
        for (auto* col : columns(tab)) (*col)[0] = 0.0;
        out_i = 1;
    }
    auto cols = columns(tab);
    for (std::size_t k = 0; k < m; ++k) {
        for (int c = 0; c < 12; ++c) run[c] += inc[k][c];
        for (int c = 0; c < 12; ++c) (*cols[c])[out_i] = run[c];
        ++out_i;
    }
    return tab;
}

GammaValues interpolate(const GammaTable& table, double t) {
    if (table.t.size() == 1) {
        require(std::abs(t - table.t[0]) <= 1e-12 * std::max(1.0, table.t[0]),
                "interpolate: time outside table span");
        return row(table, 0);
    }
    const InterpPos p = locate(table.t, t);
    GammaValues g;
    g.g1 = interp_column(table.t, table.g1, p);
    g.g1c = interp_column(table.t, table.g1c, p);
    g.g1s = interp_column(table.t, table.g1s, p);
    g.g2 = interp_column(table.t, table.g2, p);
    g.g2c = interp_column(table.t, table.g2c, p);
    g.g2s = interp_column(table.t, table.g2s, p);
    g.w1 = interp_column(table.t, table.w1, p);
    g.w1c = interp_column(table.t, table.w1c, p);
    g.w1s = interp_column(table.t, table.w1s, p);
    g.e1 = interp_column(table.t, table.e1, p);
    g.e1c = interp_column(table.t, table.e1c, p);
    g.e1s = interp_column(table.t, table.e1s, p);
    return g;
}

// ------------------------------------------------------------- generator ops

GeneratorSample generator_model1(const CouplingScheme& scheme, double omega0, double t) {
    require(scheme.kind == SchemeKind::Composite, "generator_model1: scheme must be Composite");
    require(t >= 0.0, "generator_model1: t must be >= 0");
    return assemble_composite(scheme.f1, scheme.f2, omega0,
                              end_values(scheme.bath1, omega0, t), 0.0, t);
}

GeneratorSample generator_model2(const CouplingScheme& scheme, double omega0, double t) {
    require(scheme.kind == SchemeKind::RWAComposite,
            "generator_model2: scheme must be RWAComposite");
    require(t >= 0.0, "generator_model2: t must be >= 0");
    return assemble_rwa(scheme.f1, scheme.f2, omega0, end_values(scheme.bath1, omega0, t), t);
}

GeneratorSample generator_split(const CouplingScheme& scheme, double omega0, double t) {
    require(scheme.kind == SchemeKind::SplitTwoBaths,
            "generator_split: scheme must be SplitTwoBaths");
    require(t >= 0.0, "generator_split: t must be >= 0");
    return assemble_split(scheme.f1, end_values(scheme.bath1, omega0, t), scheme.f2,
                          end_values(scheme.bath2, omega0, t), omega0, t);
}

GeneratorSample generator_with_dephasing(const CouplingScheme& scheme, double omega0,
                                         double t) {
    require(scheme.kind == SchemeKind::CompositePlusDephasing,
            "generator_with_dephasing: scheme must be CompositePlusDephasing");
    require(t >= 0.0, "generator_with_dephasing: t must be >= 0");
    const double extra =
        scheme.f3 != 0.0 ? scheme.f3 * scheme.f3 * end_values(scheme.bath2, omega0, t).g1
                         : 0.0;
    return assemble_composite(scheme.f1, scheme.f2, omega0,
                              end_values(scheme.bath1, omega0, t), extra, t);
}

// --------------------------------------------------------- coefficient tables

CoeffTable coefficient_tables(const CouplingScheme& scheme, double omega0,
                              const std::vector<double>& t_grid) {
    require(scheme.kind == SchemeKind::Composite || scheme.kind == SchemeKind::RWAComposite,
            "coefficient_tables: scheme must be Composite or RWAComposite");
    const GammaTable tab = gamma_table(scheme.bath1, omega0, t_grid, true);
    const double f1 = scheme.f1, f2 = scheme.f2;
    const double f22 = f2 * f2, f12 = f1 * f2;
    const double r2 = std::sqrt(2.0);
    const std::complex<double> I(0.0, 1.0);

    CoeffTable out;
    out.omega0 = omega0;
    out.t = t_grid;
    out.a.resize(t_grid.size(), Eigen::Matrix3cd::Zero());
    out.h.resize(t_grid.size(), Eigen::Matrix3cd::Zero());
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        const GammaValues g = row(tab, i);
        Eigen::Matrix3cd& a = out.a[i];
        Eigen::Matrix3cd& h = out.h[i];
        if (scheme.kind == SchemeKind::Composite) {
            a(0, 0) = 0.5 * f22 * (g.g1c - g.g2s);
            a(1, 1) = 0.5 * f22 * (g.g1c + g.g2s);
            a(2, 2) = f1 * f1 * g.g1;
            a(0, 1) = 0.5 * f22 * (g.g1c - I * g.g1s);
            a(0, 2) = 0.25 * r2 * f12 *
                      ((g.g1 + g.g1c - g.g2s) - I * (g.g1s - g.g2 + g.g2c));
            a(1, 2) = 0.25 * r2 * f12 *
                      ((g.g1 + g.g1c + g.g2s) + I * (g.g1s + g.g2 - g.g2c));
            h(0, 0) = 0.25 * f22 * (g.g1s - g.g2c);
            h(1, 1) = -0.25 * f22 * (g.g1s + g.g2c);
            h(0, 2) = 0.125 * r2 * f12 *
                      ((g.g1s - g.g2 - g.g2c) - I * (g.g1 - g.g1c - g.g2s));
            h(1, 2) = -0.125 * r2 * f12 *
                      ((g.g1s + g.g2 + g.g2c) + I * (g.g1 - g.g1c + g.g2s));
        } else {
            // Occupation-split halves: p* from the nbar-weighted kernels,
            // q* from the (1+nbar)-weighted ones.
            const double p1 = 0.5 * (g.g1 - g.w1), p1c = 0.5 * (g.g1c - g.w1c),
                         p1s = 0.5 * (g.g1s - g.w1s);
            const double p2 = 0.5 * (g.e1 - g.g2), p2c = 0.5 * (g.e1c - g.g2c),
                         p2s = 0.5 * (g.e1s - g.g2s);
            const double q1 = 0.5 * (g.g1 + g.w1), q1c = 0.5 * (g.g1c + g.w1c),
                         q1s = 0.5 * (g.g1s + g.w1s);
            const double q2 = 0.5 * (g.e1 + g.g2), q2c = 0.5 * (g.e1c + g.g2c),
                         q2s = 0.5 * (g.e1s + g.g2s);
            a(0, 0) = 0.5 * f22 * (p1c + p2s);
            a(1, 1) = 0.5 * f22 * (q1c + q2s);
            a(2, 2) = f1 * f1 * g.g1;
            a(0, 1) = 0.0;
            a(0, 2) = 0.25 * r2 * f12 * ((p1 + p1c + p2s) - I * (p1s + p2 - p2c));
            a(1, 2) = 0.25 * r2 * f12 * ((q1 + q1c + q2s) + I * (q1s + q2 - q2c));
            h(0, 0) = 0.25 * f22 * (q1s - q2c);
            h(1, 1) = -0.25 * f22 * (p1s - p2c);
            h(0, 2) = 0.125 * r2 * f12 * ((q1s - q2 - q2c) - I * (q1 - q1c - q2s));
            h(1, 2) = 0.125 * r2 * f12 * ((-p1s + p2 + p2c) + I * (-p1 + p1c + p2s));
        }
        a(1, 0) = std::conj(a(0, 1));
        a(2, 0) = std::conj(a(0, 2));
        a(2, 1) = std::conj(a(1, 2));
        h(2, 0) = std::conj(h(0, 2));
        h(2, 1) = std::conj(h(1, 2));
    }
    return out;
}

GeneratorSample generator_from_coeffs(const Eigen::Matrix3cd& a, const Eigen::Matrix3cd& h,
                                      double omega0, double t) {
    const double r2 = std::sqrt(2.0);
    const std::complex<double> I(0.0, 1.0);
    const std::complex<double> f = a(0, 2) + a(2, 1) + 2.0 * I * (h(0, 2) - h(2, 1));
    const std::complex<double> l = a(0, 0) + a(1, 1) + 2.0 * a(2, 2) - 2.0 * a(0, 1) -
                                   2.0 * I * (h(0, 0) - h(1, 1) + omega0);
    const std::complex<double> r = I * (a(0, 0) + a(1, 1) + 2.0 * a(2, 2) + 2.0 * a(0, 1)) +
                                   2.0 * (h(0, 0) - h(1, 1) + omega0);
    const double m = a(0, 2).real() + a(1, 2).real() + 2.0 * h(0, 2).imag() +
                     2.0 * h(1, 2).imag();
    const double n = a(1, 2).imag() - a(0, 2).imag() + 2.0 * h(0, 2).real() -
                     2.0 * h(1, 2).real();
    GeneratorSample out;
    out.time = t;
    Eigen::Matrix3d& M = out.M;
    M(0, 0) = -0.5 * l.real();
    M(0, 1) = 0.5 * l.imag();
    M(0, 2) = m / r2;
    M(1, 0) = 0.5 * r.real();
    M(1, 1) = -0.5 * r.imag();
    M(1, 2) = n / r2;
    M(2, 0) = f.real() / r2;
    M(2, 1) = -f.imag() / r2;
    M(2, 2) = -(a(0, 0) + a(1, 1)).real();
    out.b[0] = r2 * (a(1, 2).real() - a(0, 2).real());
    out.b[1] = r2 * (a(1, 2).imag() + a(0, 2).imag());
    out.b[2] = (a(0, 0) - a(1, 1)).real();
    return out;
}

// ------------------------------------------------------------- rate helpers

double relaxation_rate(const CouplingScheme& scheme, double omega0) {
    const spectral::BathSpec& bath =
        scheme.kind == SchemeKind::SplitTwoBaths ? scheme.bath2 : scheme.bath1;
    const double j0 = spectral::density(omega0, bath.spectral);
    const double cth =
        bath.temperature > 0.0 ? special::coth(0.5 * omega0 / bath.temperature) : 1.0;
    // Only the transverse weight damps at long times: the asymptotic
    // coherence pair contracts at f2^2 pi J_eff and the population at twice
    // that, so a span heuristic built on max(f1, f2) would under-integrate
    // whenever f1 dominates.
    return 2.0 * M_PI * scheme.f2 * scheme.f2 * j0 * cth;
}

double default_time_span(const CouplingScheme& scheme, double omega0) {
    const double cap = auto_table_cap(scheme);
    const double rate = relaxation_rate(scheme, omega0);
    if (rate < 1e-300) return cap + 100.0 * 2.0 * M_PI / omega0;
    return cap + 25.0 / rate;
}

// ------------------------------------------------------------ integrate_bloch

BlochTrajectory integrate_bloch(const CouplingScheme& scheme, double omega0,
                                const BlochVector& v0, const std::vector<double>& t_out,
                                const StepControl& ctrl) {
    require(omega0 > 0.0, "integrate_bloch: omega0 must be > 0");
    require(!t_out.empty(), "integrate_bloch: no output times");
    require(t_out.front() >= 0.0, "integrate_bloch: output times must be >= 0");
    for (std::size_t i = 1; i < t_out.size(); ++i)
        require(t_out[i] > t_out[i - 1], "integrate_bloch: output times must increase");
    require(norm(v0) <= 1.0 + 1e-9, "integrate_bloch: v0 must lie in the Bloch ball");

    const double P = 2.0 * M_PI / omega0;
    const double t_end = t_out.back();

    BlochTrajectory traj;
    traj.t = t_out;
    traj.v.resize(t_out.size());
    traj.steady_time = kNan;
    traj.freeze_time = kNan;

    if (t_end == 0.0) {
        for (auto& v : traj.v) v = v0;
        return traj;
    }

    const bool can_freeze = ctrl.allow_freeze && scheme.kind != SchemeKind::RWAComposite;
    const double cap = ctrl.table_max > 0.0 ? ctrl.table_max : auto_table_cap(scheme);
    double table_end = can_freeze ? std::min(t_end, cap) : t_end;

    GammaTable tab1, tab2;
    const bool need2 = uses_bath2(scheme);
    double t_switch = table_end;
    bool flat_found = false;
    for (int pass = 0;; ++pass) {
        const int nint = std::max(1, static_cast<int>(std::ceil(table_end * 50.0 / P)));
        std::vector<double> grid(nint + 1);
        for (int i = 0; i <= nint; ++i) grid[i] = table_end * i / nint;
        tab1 = gamma_table(scheme.bath1, omega0, grid, true);
        if (need2) tab2 = gamma_table(scheme.bath2, omega0, grid, true);

        // Earliest time from which every tabulated column is flat (relative to
        // its own scale) across one free-rotation period.
        const double dt = table_end / nint;
        const int kp = std::max(1, static_cast<int>(std::lround(P / dt)));
        std::vector<const std::vector<double>*> cols;
        for (auto* c : columns(static_cast<const GammaTable&>(tab1))) cols.push_back(c);
        if (need2)
            for (auto* c : columns(static_cast<const GammaTable&>(tab2))) cols.push_back(c);
        std::vector<double> scale(cols.size(), 1e-300);
        for (std::size_t c = 0; c < cols.size(); ++c)
            for (double v : *cols[c]) scale[c] = std::max(scale[c], std::abs(v));
        flat_found = false;
        for (int i = 2 * kp; i <= nint && !flat_found; ++i) {
            bool ok = true;
            for (std::size_t c = 0; c < cols.size() && ok; ++c)
                ok = std::abs((*cols[c])[i] - (*cols[c])[i - kp]) <= ctrl.flat_tol * scale[c];
            if (ok) {
                t_switch = tab1.t[i];
                flat_found = true;
            }
        }
        if (flat_found || !can_freeze || t_end <= table_end || table_end >= 2000.0 ||
            pass >= 1)
            break;
        table_end = std::min(std::min(2.0 * table_end, t_end), 2000.0);
    }
    if (!flat_found) t_switch = table_end;
    const bool freezing = can_freeze && t_end > t_switch;
    if (!freezing) t_switch = std::min(t_end, table_end);

    TableCtx ctx;
    ctx.scheme = &scheme;
    ctx.omega0 = omega0;
    ctx.tab1 = &tab1;
    ctx.tab2 = need2 ? &tab2 : nullptr;
    auto rhs = [&](double t, const Eigen::Vector3d& y) -> Eigen::Vector3d {
        const GeneratorSample gen = sample_tables(ctx, t);
        return gen.M * y + gen.b;
    };

    // Detector cadence: kDetectorPerPeriod samples per period, global grid.
    // One-period-back comparison via a small ring buffer.
    const double d8 = P / kDetectorPerPeriod;
    std::array<Eigen::Vector3d, kDetectorPerPeriod + 1> det_ring;
    std::size_t det_count = 0;
    auto detector_push = [&](double t, const Eigen::Vector3d& v) {
        det_ring[det_count % det_ring.size()] = v;
        const std::size_t k = det_count++;
        if (traj.steady_reached || k < static_cast<std::size_t>(kDetectorPerPeriod)) return;
        const Eigen::Vector3d& prev = det_ring[(k - kDetectorPerPeriod) % det_ring.size()];
        const double num = (v - prev).cwiseAbs().maxCoeff();
        const double den = std::max(v.cwiseAbs().maxCoeff(), 1e-12);
        if (num <= kSteadyTol * den) {
            traj.steady_reached = true;
            traj.steady_time = t;
        }
    };

    RkState st;
    st.t = 0.0;
    st.y = Eigen::Vector3d(v0.v1, v0.v2, v0.v3);
    st.h = std::min(d8, t_switch) * 0.25;
    st.rel_tol = ctrl.rel_tol;
    st.abs_tol = ctrl.abs_tol;

    // Merged phase-1 event list: output times, detector times, switch point.
    std::size_t out_i = 0;
    auto record_outputs_at = [&](double t, const Eigen::Vector3d& y) {
        while (out_i < t_out.size() && t_out[out_i] <= t + 1e-12 * std::max(1.0, t)) {
            traj.v[out_i] = {y[0], y[1], y[2]};
            ++out_i;
        }
    };
    if (t_out.front() == 0.0) record_outputs_at(0.0, st.y);

    long det_k = 1;
    while (st.t < t_switch) {
        const double t_det = det_k * d8;
        const double t_next_out =
            out_i < t_out.size() ? t_out[out_i] : std::numeric_limits<double>::infinity();
        double target = std::min({t_det, t_next_out, t_switch});
        rk_advance(st, target, rhs);
        if (st.t >= t_det - 1e-12 * std::max(1.0, st.t)) {
            detector_push(st.t, st.y);
            ++det_k;
        }
        record_outputs_at(st.t, st.y);
    }

    if (freezing) {
        traj.freeze_time = t_switch;
        const GeneratorSample lim = frozen_generator(scheme, omega0);
        Eigen::Matrix4d A = Eigen::Matrix4d::Zero();
        A.topLeftCorner<3, 3>() = lim.M;
        A.topRightCorner<3, 1>() = lim.b;
        Eigen::Vector4d w;
        w << st.y[0], st.y[1], st.y[2], 1.0;

        // Outputs: exact matrix exponential per requested time.
        for (; out_i < t_out.size(); ++out_i) {
            const Eigen::Matrix4d F = (A * (t_out[out_i] - t_switch)).exp();
            const Eigen::Vector4d wt = F * w;
            traj.v[out_i] = {wt[0], wt[1], wt[2]};
        }

        // Detector: stride propagation on the global cadence until it fires.
        if (!traj.steady_reached) {
            const double t0 = det_k * d8;
            if (t0 <= t_end) {
                Eigen::Vector4d wd = ((A * (t0 - t_switch)).exp() * w).eval();
                const Eigen::Matrix4d F8 = (A * d8).exp();
                for (double td = t0; td <= t_end && !traj.steady_reached; td += d8) {
                    detector_push(td, wd.head<3>());
                    wd = F8 * wd;
                }
            }
        }
    }
    return traj;
}

} // namespace sbc::tcl2
