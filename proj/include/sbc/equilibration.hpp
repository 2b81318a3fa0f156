// equilibration.hpp — imaginary-time Gibbs-expansion route to the steady state,
// plus exact reduced Gibbs states of two strong-coupling toy models
#pragma once

#include "sbc/spectral.hpp"

#include <Eigen/Dense>

#include <vector>

namespace sbc::equilibration {

// Triangle integrals of the imaginary-time bath correlation weighted by
// {1, cosh(beta*omega0*u), sinh(beta*omega0*u)}, and the trace-normalization
// term b = 2(f1^2*zeta + f2^2*zeta_c).
struct ZetaIntegrals {
    double zeta = 0.0;
    double zeta_c = 0.0;
    double zeta_s = 0.0;
    double b_norm = 0.0;
};

ZetaIntegrals zeta_integrals(double f1, double f2, const spectral::BathSpec& bath,
                             double omega0);

// Second-order reduced-Gibbs-state Bloch components for the composite model.
// v1 is the genuinely two-dimensional triangle integral; v2 vanishes
// identically; v3 comes with the coherence-induced correction to the bare
// Boltzmann value -tanh(beta*omega0/2).
double perturbative_v1(double f1, double f2, const spectral::BathSpec& bath, double omega0);

double perturbative_v2();

struct V3Result {
    double v3 = 0.0;
    double correction = 0.0; // v3 + tanh(beta*omega0/2)
};

V3Result perturbative_v3(double f1, double f2, const spectral::BathSpec& bath,
                         double omega0);

// ------------------------------------------------------- strong-coupling toys

enum class ModelKind { QubitOscillator, QubitQubit };

struct StrongCouplingModel {
    ModelKind kind = ModelKind::QubitOscillator;
    double omega0 = 1.0; // qubit splitting
    double omega1 = 1.0; // auxiliary-mode frequency
    double kappa1 = 0.0; // sigma_x-channel coupling
    double kappa2 = 0.0; // sigma_z-channel coupling
    int fock_cutoff = 40; // oscillator truncation (ignored for the qubit pair)

    // Symmetric preset kappa1 = kappa2 = kappa, omega1 = omega0.
    static StrongCouplingModel preset(ModelKind kind, double kappa, double omega0);
};

struct HermitianOperator {
    int dim = 0;
    Eigen::MatrixXcd entries;
};

// Composite Hamiltonian on qubit (x) auxiliary; basis index q*na + n with
// qubit ground state first (sigma_z = diag(-1, +1)).
Eigen::MatrixXd build_hamiltonian(const StrongCouplingModel& model);

// Reduced 2x2 Gibbs state Tr_aux[exp(-H/T)]/Z via Hermitian eigendecomposition
// with ground-energy shift; the oscillator truncation is doubled until the
// coherence is converged.
HermitianOperator gibbs_reduced(const StrongCouplingModel& model, double temperature);

struct StrongPoint {
    double temperature = 0.0;
    double coherence = 0.0; // 2|rho_01|
    double v3 = 0.0;        // rho_11 - rho_00 (excited minus ground population)
    double theta = 0.0;     // atan(C / |v3|)
};

std::vector<StrongPoint> strong_coupling_sweep(const StrongCouplingModel& model,
                                               const std::vector<double>& t_grid);

} // namespace sbc::equilibration
