// sbc/tcl2.hpp — time-local second-order generators for the composite-coupling
// qubit: coefficient tables, Bloch generators, and trajectory integration
#pragma once

#include "sbc/bloch.hpp"
#include "sbc/spectral.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace sbc::tcl2 {

enum class SchemeKind { Composite, RWAComposite, SplitTwoBaths, CompositePlusDephasing };

// Which operators couple to which bath. bath1 carries the f1 (sigma_z) and f2
// (sigma_x) legs except for SplitTwoBaths, where f2 couples to bath2;
// CompositePlusDephasing adds an f3 sigma_z leg on bath2.
struct CouplingScheme {
    SchemeKind kind = SchemeKind::Composite;
    double f1 = 0.0;
    double f2 = 0.0;
    double f3 = 0.0;
    spectral::BathSpec bath1{};
    spectral::BathSpec bath2{};

    static CouplingScheme composite(double f1, double f2, const spectral::BathSpec& bath);
    static CouplingScheme rwa_composite(double f1, double f2, const spectral::BathSpec& bath);
    static CouplingScheme split_two_baths(double f1, const spectral::BathSpec& bath1,
                                          double f2, const spectral::BathSpec& bath2);
    static CouplingScheme composite_plus_dephasing(double f1, double f2,
                                                   const spectral::BathSpec& bath1, double f3,
                                                   const spectral::BathSpec& bath2);
};

// Weak-coupling guard: lambda * max|f_i| below 0.1 * omega0, else a warning.
std::vector<std::string> coupling_warnings(const CouplingScheme& scheme, double omega0);

// Cumulative kernel integrals int_0^t 2 K(tau) {1, cos, sin}(omega0 tau) dtau
// for the kernel quartet: g* (noise), q-prefix g2* (dissipation), w* (vacuum
// noise), e* (thermal sine). Built by composite Gauss panels sized to the
// kernel's analytic structure; immutable after construction.
struct GammaTable {
    double omega0 = 0.0;
    std::vector<double> t;
    std::vector<double> g1, g1c, g1s;  // noise kernel D1
    std::vector<double> g2, g2c, g2s;  // dissipation kernel D2
    std::vector<double> w1, w1c, w1s;  // vacuum noise kernel
    std::vector<double> e1, e1c, e1s;  // thermal sine kernel
};

// One row of a GammaTable (exact grid value or cubic interpolant).
struct GammaValues {
    double g1 = 0.0, g1c = 0.0, g1s = 0.0;
    double g2 = 0.0, g2c = 0.0, g2s = 0.0;
    double w1 = 0.0, w1c = 0.0, w1s = 0.0;
    double e1 = 0.0, e1c = 0.0, e1s = 0.0;
};

// t_grid must be increasing with t_grid[0] >= 0; values are integrals from 0.
// parallel=false forces the serial reference path (bit-identical results).
GammaTable gamma_table(const spectral::BathSpec& bath, double omega0,
                       const std::vector<double>& t_grid, bool parallel = true);

GammaValues interpolate(const GammaTable& table, double t);

struct GeneratorSample {
    Eigen::Matrix3d M = Eigen::Matrix3d::Zero();
    Eigen::Vector3d b = Eigen::Vector3d::Zero();
    double time = 0.0;
};

// Bloch generator dv/dt = M(t) v + b(t) at one time, per scheme.
GeneratorSample generator_model1(const CouplingScheme& scheme, double omega0, double t);
GeneratorSample generator_model2(const CouplingScheme& scheme, double omega0, double t);
GeneratorSample generator_split(const CouplingScheme& scheme, double omega0, double t);
GeneratorSample generator_with_dephasing(const CouplingScheme& scheme, double omega0, double t);

// Kossakowski (a) and Lamb-shift (h) coefficient matrices on a time grid.
// Entries are stored as listed coefficients (the generator reconstruction
// below absorbs the display normalization).
struct CoeffTable {
    double omega0 = 0.0;
    std::vector<double> t;
    std::vector<Eigen::Matrix3cd> a;
    std::vector<Eigen::Matrix3cd> h;
};

// Schemes Composite and RWAComposite only.
CoeffTable coefficient_tables(const CouplingScheme& scheme, double omega0,
                              const std::vector<double>& t_grid);

// Rebuild (M, b) from one coefficient pair; inverse of the listing, used to
// cross-check the directly assembled generators.
GeneratorSample generator_from_coeffs(const Eigen::Matrix3cd& a, const Eigen::Matrix3cd& h,
                                      double omega0, double t);

struct StepControl {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    // Time span covered by the coefficient tables; 0 picks an automatic cap
    // from the bath temperature. Beyond the tables the generator is frozen at
    // its long-time limit (skipped for RWAComposite, which has no closed
    // limit set wired in).
    double table_max = 0.0;
    double flat_tol = 1e-6;   // relative flatness of the tables over one period
    bool allow_freeze = true;
};

struct BlochTrajectory {
    std::vector<double> t;
    std::vector<BlochVector> v;
    bool steady_reached = false;
    // First time the stroboscopic detector saw less than 1e-8 relative change
    // over one free-rotation period (NaN if never).
    double steady_time = 0.0;
    // Handoff time from tabulated to frozen long-time generator (NaN if the
    // whole span ran on tables).
    double freeze_time = 0.0;
};

// Adaptive embedded Runge-Kutta 5(4) on the tabulated generator, with a
// constant-generator continuation beyond the table span. Output exactly at
// t_out (increasing, t_out[0] >= 0; v0 inside the Bloch ball).
BlochTrajectory integrate_bloch(const CouplingScheme& scheme, double omega0,
                                const BlochVector& v0, const std::vector<double>& t_out,
                                const StepControl& ctrl = {});

// Population relaxation rate 2 pi f2^2 J(omega0) coth(omega0/2T) of the
// dissipative bath; the transverse weight f2 alone damps at long times, so
// the span heuristic must not credit f1. default_time_span adds 25
// relaxation times to the automatic table cap.
double relaxation_rate(const CouplingScheme& scheme, double omega0);
double default_time_span(const CouplingScheme& scheme, double omega0);

} // namespace sbc::tcl2
