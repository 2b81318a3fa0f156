// equilibration.cpp — Gibbs-expansion integrals and strong-coupling reduced states
#include "sbc/equilibration.hpp"
#include "sbc/common.hpp"
#include "sbc/kernels.hpp"
#include "sbc/quad.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace sbc::equilibration {
namespace {

// Precision guard for the cosh/sinh-weighted triangle integrals: beyond this
// the exponentially large halves cancel past double precision.
constexpr double kMaxBetaOmegaZeta = 60.0;
// Overflow guard for the 2-D coherence integrand (cosh(x*beta*omega0) terms).
constexpr double kMaxBetaOmegaV1 = 700.0;

void check_thermal(const spectral::BathSpec& bath) {
    spectral::validate(bath);
    require(bath.temperature > 0.0, "equilibration: bath temperature must be > 0");
}

struct Gl96 {
    std::vector<double> x, w;
    Gl96() { quad::gauss_legendre(96, x, w); }
};

void validate_model(const StrongCouplingModel& m) {
    require(m.omega0 > 0.0, "strong-coupling model: omega0 must be > 0");
    require(m.omega1 > 0.0, "strong-coupling model: omega1 must be > 0");
    if (m.kind == ModelKind::QubitOscillator)
        require(m.fock_cutoff >= 2, "strong-coupling model: fock_cutoff must be >= 2");
}

Eigen::MatrixXd hamiltonian_at(const StrongCouplingModel& m, int na) {
    const int dim = 2 * na;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    // Qubit basis: index 0 ground (sigma_z = -1), index 1 excited (+1).
    const double sz[2] = {-1.0, 1.0};
    auto idx = [na](int q, int n) { return q * na + n; };
    if (m.kind == ModelKind::QubitOscillator) {
        for (int q = 0; q < 2; ++q)
            for (int n = 0; n < na; ++n) {
                const int i = idx(q, n);
                h(i, i) = 0.5 * m.omega0 * sz[q] + m.omega1 * (n + 0.5);
            }
        // Coupling (kappa1 sigma_x + kappa2 sigma_z) (x) (a + a^dag).
        for (int q = 0; q < 2; ++q)
            for (int n = 0; n + 1 < na; ++n) {
                const double x = std::sqrt(n + 1.0);
                h(idx(q, n), idx(q, n + 1)) += m.kappa2 * sz[q] * x;
                h(idx(q, n + 1), idx(q, n)) += m.kappa2 * sz[q] * x;
                h(idx(1 - q, n), idx(q, n + 1)) += m.kappa1 * x;
                h(idx(1 - q, n + 1), idx(q, n)) += m.kappa1 * x;
            }
    } else {
        // Second qubit in place of the oscillator; coupling through sigma_x.
        for (int q = 0; q < 2; ++q)
            for (int n = 0; n < 2; ++n) {
                const int i = idx(q, n);
                h(i, i) = 0.5 * m.omega0 * sz[q] + 0.5 * m.omega1 * sz[n];
                h(i, idx(q, 1 - n)) += m.kappa2 * sz[q];
            }
        for (int q = 0; q < 2; ++q)
            for (int n = 0; n < 2; ++n)
                h(idx(1 - q, 1 - n), idx(q, n)) += m.kappa1;
    }
    return h;
}

// Reduced qubit Gibbs state at a fixed auxiliary dimension.
Eigen::Matrix2d reduced_at(const StrongCouplingModel& m, int na, double temperature) {
    const Eigen::MatrixXd h = hamiltonian_at(m, na);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    require(es.info() == Eigen::Success, "gibbs_reduced: eigendecomposition failed");
    const Eigen::VectorXd& ev = es.eigenvalues();
    const Eigen::MatrixXd& vv = es.eigenvectors();
    const double e0 = ev.minCoeff();
    Eigen::Matrix2d rho = Eigen::Matrix2d::Zero();
    double z = 0.0;
    for (int k = 0; k < ev.size(); ++k) {
        const double w = std::exp(-(ev[k] - e0) / temperature);
        z += w;
        for (int q = 0; q < 2; ++q)
            for (int p = 0; p < 2; ++p) {
                double s = 0.0;
                for (int n = 0; n < na; ++n) s += vv(q * na + n, k) * vv(p * na + n, k);
                rho(q, p) += w * s;
            }
    }
    return rho / z;
}

} // namespace

// --------------------------------------------------------- zeta-family route

ZetaIntegrals zeta_integrals(double f1, double f2, const spectral::BathSpec& bath,
                             double omega0) {
    check_thermal(bath);
    require(omega0 > 0.0, "zeta_integrals: omega0 must be > 0");
    const double b = omega0 / bath.temperature;
    require(b <= kMaxBetaOmegaZeta,
            "zeta_integrals: beta*omega0 too large for the weighted triangle integrals");
    quad::QuadConfig cfg;
    auto corr = [&](double u) { return kernels::matsubara_correlation(u, bath); };
    ZetaIntegrals out;
    out.zeta = quad::triangle_integral_reduced(corr, cfg);
    out.zeta_c = quad::triangle_integral_reduced(
        [&](double u) { return corr(u) * std::cosh(b * u); }, cfg);
    out.zeta_s = quad::triangle_integral_reduced(
        [&](double u) { return corr(u) * std::sinh(b * u); }, cfg);
    out.b_norm = 2.0 * (f1 * f1 * out.zeta + f2 * f2 * out.zeta_c);
    return out;
}

double perturbative_v1(double f1, double f2, const spectral::BathSpec& bath,
                       double omega0) {
    check_thermal(bath);
    require(omega0 > 0.0, "perturbative_v1: omega0 must be > 0");
    const double beta = 1.0 / bath.temperature;
    const double b = beta * omega0;
    require(b <= kMaxBetaOmegaV1, "perturbative_v1: beta*omega0 overflows the integrand");
    if (f1 == 0.0 || f2 == 0.0) return 0.0;

    static const Gl96 gl;
    const double th = std::tanh(0.5 * b);
    // Triangle via y = x*r; the bracket depends on x and y separately.
    double acc = 0.0;
    for (std::size_t i = 0; i < gl.x.size(); ++i) {
        const double x = 0.5 * (gl.x[i] + 1.0);
        const double wx = 0.5 * gl.w[i] * x; // Jacobian of y = x*r
        double inner = 0.0;
        for (std::size_t j = 0; j < gl.x.size(); ++j) {
            const double r = 0.5 * (gl.x[j] + 1.0);
            const double wr = 0.5 * gl.w[j];
            const double y = x * r;
            const double bracket = -th * (std::cosh(b * y) - std::cosh(b * x)) -
                                   std::sinh(b * y) + std::sinh(b * x);
            inner += wr * kernels::matsubara_correlation(x - y, bath) * bracket;
        }
        acc += wx * inner;
    }
    return beta * beta * f1 * f2 * acc;
}

double perturbative_v2() { return 0.0; }

V3Result perturbative_v3(double f1, double f2, const spectral::BathSpec& bath,
                         double omega0) {
    const ZetaIntegrals zi = zeta_integrals(f1, f2, bath, omega0);
    const double th = std::tanh(0.5 * omega0 / bath.temperature);
    const double beta2 = 1.0 / (bath.temperature * bath.temperature);
    V3Result out;
    out.v3 = -th * (1.0 - beta2 * (f1 * f1 * zi.zeta - f2 * f2 * zi.zeta_c)) +
             beta2 * f2 * f2 * zi.zeta_s;
    out.correction = out.v3 + th;
    return out;
}

// ------------------------------------------------------- strong-coupling toys

StrongCouplingModel StrongCouplingModel::preset(ModelKind kind, double kappa,
                                                double omega0) {
    StrongCouplingModel m;
    m.kind = kind;
    m.omega0 = omega0;
    m.omega1 = omega0;
    m.kappa1 = kappa;
    m.kappa2 = kappa;
    return m;
}

Eigen::MatrixXd build_hamiltonian(const StrongCouplingModel& model) {
    validate_model(model);
    return hamiltonian_at(model,
                          model.kind == ModelKind::QubitOscillator ? model.fock_cutoff : 2);
}

HermitianOperator gibbs_reduced(const StrongCouplingModel& model, double temperature) {
    validate_model(model);
    require(temperature > 0.0, "gibbs_reduced: temperature must be > 0");
    Eigen::Matrix2d rho;
    if (model.kind == ModelKind::QubitQubit) {
        rho = reduced_at(model, 2, temperature);
    } else {
        int na = model.fock_cutoff;
        rho = reduced_at(model, na, temperature);
        bool converged = false;
        while (na <= 1280) {
            const Eigen::Matrix2d next = reduced_at(model, 2 * na, temperature);
            const double dc = std::abs(2.0 * std::abs(next(0, 1)) - 2.0 * std::abs(rho(0, 1)));
            rho = next;
            na *= 2;
            if (dc < 1e-6) {
                converged = true;
                break;
            }
        }
        if (!converged)
            throw NumericError("gibbs_reduced: Fock truncation not converged",
                               2.0 * std::abs(rho(0, 1)), 1e-6);
    }
    HermitianOperator out;
    out.dim = 2;
    out.entries = rho.cast<std::complex<double>>();
    return out;
}

std::vector<StrongPoint> strong_coupling_sweep(const StrongCouplingModel& model,
                                               const std::vector<double>& t_grid) {
    validate_model(model);
    require(!t_grid.empty(), "strong_coupling_sweep: empty temperature grid");
    for (double t : t_grid)
        require(t > 0.0, "strong_coupling_sweep: temperatures must be > 0");

    std::vector<StrongPoint> out(t_grid.size());
    std::exception_ptr err;
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(t_grid.size()); ++i) {
        try {
            const HermitianOperator rho = gibbs_reduced(model, t_grid[i]);
            StrongPoint p;
            p.temperature = t_grid[i];
            p.coherence = 2.0 * std::abs(rho.entries(0, 1));
            p.v3 = (rho.entries(1, 1) - rho.entries(0, 0)).real();
            p.theta = std::atan2(p.coherence, std::abs(p.v3));
            out[i] = p;
        } catch (...) {
#if defined(_OPENMP)
#pragma omp critical
#endif
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
    return out;
}

} // namespace sbc::equilibration
