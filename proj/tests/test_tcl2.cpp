// test_tcl2.cpp — kernel tables, generator assembly (two routes), trajectory
// integration against closed references and the analytic steady state
#include "sbc/special.hpp"
#include "sbc/spectral.hpp"
#include "sbc/steady.hpp"
#include "sbc/tcl2.hpp"

#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace sbc;

namespace {

spectral::BathSpec bath(double s, double lambda, double cutoff, double T) {
    spectral::BathSpec b;
    b.spectral.ohmicity = s;
    b.spectral.lambda = lambda;
    b.spectral.cutoff = cutoff;
    b.temperature = T;
    return b;
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = a + (b - a) * i / (n - 1);
    return out;
}

} // namespace

TEST_SUITE("tcl2") {

TEST_CASE("gamma table starts at zero and is grid-consistent") {
    const spectral::BathSpec b = bath(1.0, 0.01, 5.0, 0.5);
    const tcl2::GammaTable dense = tcl2::gamma_table(b, 1.0, linspace(0.0, 4.0, 41));
    CHECK(dense.t.front() == 0.0);
    CHECK(dense.g1.front() == 0.0);
    CHECK(dense.g2c.front() == 0.0);
    CHECK(dense.e1s.front() == 0.0);
    // The same integrals on a sparser grid agree at shared points.
    const tcl2::GammaTable sparse = tcl2::gamma_table(b, 1.0, linspace(0.0, 4.0, 5));
    for (int k = 0; k < 5; ++k) {
        const int i = 10 * k;
        CHECK(sparse.g1[k] == doctest::Approx(dense.g1[i]).epsilon(1e-10));
        CHECK(sparse.g1s[k] == doctest::Approx(dense.g1s[i]).epsilon(1e-10));
        CHECK(sparse.g2[k] == doctest::Approx(dense.g2[i]).epsilon(1e-10));
        CHECK(sparse.w1c[k] == doctest::Approx(dense.w1c[i]).epsilon(1e-10));
    }
    // A grid that starts past zero still integrates from zero.
    const tcl2::GammaTable off = tcl2::gamma_table(b, 1.0, {2.0, 4.0});
    CHECK(off.g1.back() == doctest::Approx(dense.g1.back()).epsilon(1e-10));
}

TEST_CASE("gamma table long-time limits match the improper integrals") {
    // Ohmic vacuum bath: the dissipation column crosses over to +4 lambda
    // cutoff Gamma(s) = +0.2 (cutoff 5, lambda 0.01); tails ~ 1e-11 by t = 300.
    const tcl2::GammaTable ohmic =
        tcl2::gamma_table(bath(1.0, 0.01, 5.0, 0.0), 1.0, {0.0, 150.0, 300.0});
    CHECK(ohmic.g2.back() == doctest::Approx(0.2).epsilon(1e-6));

    // Super-Ohmic thermal bath, pinned improper-integral values.
    const tcl2::GammaTable sup =
        tcl2::gamma_table(bath(3.0, 0.01, 10.0, 0.1), 1.0, linspace(0.0, 400.0, 5));
    CHECK(std::abs(sup.g1s.back() - (-0.0406959584167301)) < 1e-6);
    CHECK(std::abs(sup.g2.back() - 0.8) < 1e-6);
    CHECK(std::abs(sup.g2c.back() - 0.803890747842368) < 1e-6);
}

TEST_CASE("interpolation is exact on nodes and accurate between them") {
    const spectral::BathSpec b = bath(1.0, 0.01, 5.0, 0.5);
    const tcl2::GammaTable tab = tcl2::gamma_table(b, 1.0, linspace(0.0, 6.0, 121));
    const tcl2::GammaValues node = tcl2::interpolate(tab, tab.t[40]);
    CHECK(node.g1 == tab.g1[40]);
    CHECK(node.e1c == tab.e1c[40]);
    for (double t : {1.326, 4.77}) {
        const tcl2::GammaTable exact = tcl2::gamma_table(b, 1.0, {t});
        const tcl2::GammaValues gi = tcl2::interpolate(tab, t);
        CHECK(std::abs(gi.g1 - exact.g1.back()) < 2e-3);
        CHECK(std::abs(gi.g1c - exact.g1c.back()) < 2e-3);
        CHECK(std::abs(gi.g2s - exact.g2s.back()) < 2e-3);
    }
}

TEST_CASE("generator reconstruction from coefficient tables: composite") {
    const tcl2::CouplingScheme scheme =
        tcl2::CouplingScheme::composite(0.07, 0.13, bath(1.0, 0.01, 5.0, 0.5));
    const std::vector<double> grid = linspace(0.0, 5.0, 11);
    const tcl2::CoeffTable ct = tcl2::coefficient_tables(scheme, 1.0, grid);
    REQUIRE(ct.a.size() == grid.size());
    for (std::size_t i = 2; i < grid.size(); i += 4) {
        const tcl2::GeneratorSample direct = tcl2::generator_model1(scheme, 1.0, grid[i]);
        const tcl2::GeneratorSample rebuilt =
            tcl2::generator_from_coeffs(ct.a[i], ct.h[i], 1.0, grid[i]);
        CHECK((rebuilt.M - direct.M).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((rebuilt.b - direct.b).cwiseAbs().maxCoeff() < 1e-10);
        // Kossakowski matrices stay Hermitian.
        CHECK((ct.a[i] - ct.a[i].adjoint()).cwiseAbs().maxCoeff() < 1e-15);
        CHECK((ct.h[i] - ct.h[i].adjoint()).cwiseAbs().maxCoeff() < 1e-15);
    }
}

TEST_CASE("generator reconstruction from coefficient tables: number-conserving") {
    const tcl2::CouplingScheme scheme =
        tcl2::CouplingScheme::rwa_composite(0.07, 0.13, bath(1.0, 0.01, 5.0, 0.5));
    const std::vector<double> grid = linspace(0.0, 5.0, 11);
    const tcl2::CoeffTable ct = tcl2::coefficient_tables(scheme, 1.0, grid);
    for (std::size_t i = 2; i < grid.size(); i += 4) {
        const tcl2::GeneratorSample direct = tcl2::generator_model2(scheme, 1.0, grid[i]);
        const tcl2::GeneratorSample rebuilt =
            tcl2::generator_from_coeffs(ct.a[i], ct.h[i], 1.0, grid[i]);
        CHECK((rebuilt.M - direct.M).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((rebuilt.b - direct.b).cwiseAbs().maxCoeff() < 1e-10);
        // Decoupled populations: the 12-coefficient vanishes identically.
        CHECK(std::abs(ct.a[i](0, 1)) == 0.0);
    }
}

TEST_CASE("number-conserving generator has the rotating-frame structure") {
    const tcl2::CouplingScheme scheme =
        tcl2::CouplingScheme::rwa_composite(0.1, 0.1, bath(3.0, 0.01, 5.0, 0.5));
    for (double t : {0.5, 2.0, 8.0}) {
        const tcl2::GeneratorSample g = tcl2::generator_model2(scheme, 1.0, t);
        CHECK(g.M(0, 0) == g.M(1, 1));
        CHECK(g.M(0, 1) == -g.M(1, 0));
    }
}

TEST_CASE("split-bath generator decouples the coherence block") {
    const tcl2::CouplingScheme scheme = tcl2::CouplingScheme::split_two_baths(
        0.1, bath(1.0, 0.01, 5.0, 0.5), 0.12, bath(3.0, 0.01, 8.0, 0.4));
    const tcl2::GeneratorSample g = tcl2::generator_split(scheme, 1.0, 2.0);
    CHECK(g.M(0, 2) == 0.0);
    CHECK(g.M(1, 2) == 0.0);
    CHECK(g.M(2, 0) == 0.0);
    CHECK(g.M(2, 1) == 0.0);
    CHECK(g.b[0] == 0.0);
    CHECK(g.b[1] == 0.0);
}

TEST_CASE("dephasing leg reduces to the composite generator at f3 = 0") {
    const spectral::BathSpec b1 = bath(1.0, 0.01, 5.0, 0.5);
    const spectral::BathSpec b2 = bath(3.0, 0.01, 10.0, 0.5);
    const tcl2::CouplingScheme comp = tcl2::CouplingScheme::composite(0.1, 0.12, b1);
    const tcl2::CouplingScheme dep0 =
        tcl2::CouplingScheme::composite_plus_dephasing(0.1, 0.12, b1, 0.0, b2);
    const tcl2::CouplingScheme dep =
        tcl2::CouplingScheme::composite_plus_dephasing(0.1, 0.12, b1, 0.2, b2);
    const double t = 1.7;
    const tcl2::GeneratorSample gc = tcl2::generator_model1(comp, 1.0, t);
    const tcl2::GeneratorSample g0 = tcl2::generator_with_dephasing(dep0, 1.0, t);
    CHECK((g0.M - gc.M).cwiseAbs().maxCoeff() == 0.0);
    CHECK((g0.b - gc.b).cwiseAbs().maxCoeff() == 0.0);
    // With f3 > 0 only the two damping diagonals shift, by f3^2 gamma1 of bath2.
    const tcl2::GeneratorSample gd = tcl2::generator_with_dephasing(dep, 1.0, t);
    const double shift = 0.2 * 0.2 * tcl2::gamma_table(b2, 1.0, {t}).g1.back();
    CHECK(gd.M(0, 0) == doctest::Approx(gc.M(0, 0) - shift).epsilon(1e-12));
    CHECK(gd.M(1, 1) == doctest::Approx(gc.M(1, 1) - shift).epsilon(1e-12));
    CHECK(gd.M(2, 2) == doctest::Approx(gc.M(2, 2)).epsilon(1e-14));
    CHECK((gd.b - gc.b).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("free precession integrates to the closed rotation") {
    const tcl2::CouplingScheme scheme =
        tcl2::CouplingScheme::composite(0.0, 0.0, bath(1.0, 0.01, 5.0, 0.5));
    const BlochVector v0{0.3, -0.4, 0.5};
    const std::vector<double> t_out = {0.0, 1.0, 2.5, 5.0};
    const tcl2::BlochTrajectory traj = tcl2::integrate_bloch(scheme, 1.0, v0, t_out);
    for (std::size_t i = 0; i < t_out.size(); ++i) {
        const double c = std::cos(t_out[i]), s = std::sin(t_out[i]);
        CHECK(traj.v[i].v1 == doctest::Approx(c * v0.v1 - s * v0.v2).epsilon(1e-7));
        CHECK(traj.v[i].v2 == doctest::Approx(s * v0.v1 + c * v0.v2).epsilon(1e-7));
        CHECK(traj.v[i].v3 == doctest::Approx(v0.v3).epsilon(1e-9));
    }
}

TEST_CASE("trajectory relaxes to the analytic steady state") {
    const spectral::BathSpec b = bath(1.0, 0.02, 5.0, 1.0);
    const tcl2::CouplingScheme scheme = tcl2::CouplingScheme::composite(0.3, 0.3, b);
    // The coherence block contracts at half the relaxation rate, so add
    // another 25 relaxation times beyond the default span.
    const double t_end = tcl2::default_time_span(scheme, 1.0) +
                         25.0 / tcl2::relaxation_rate(scheme, 1.0);
    const tcl2::BlochTrajectory traj =
        tcl2::integrate_bloch(scheme, 1.0, {0.2, -0.5, 0.6}, {t_end});
    REQUIRE(traj.v.size() == 1);
    CHECK(traj.steady_reached);
    CHECK(traj.steady_time > 0.0);
    CHECK(traj.steady_time < t_end);
    CHECK(std::isfinite(traj.freeze_time));
    const steady::SteadyReport ref = steady::steady_state_model1(0.3, 0.3, b, 1.0);
    CHECK(std::abs(traj.v[0].v1 - ref.v.v1) < 1e-6);
    CHECK(std::abs(traj.v[0].v2 - ref.v.v2) < 1e-6);
    CHECK(std::abs(traj.v[0].v3 - ref.v.v3) < 1e-6);
    // The terminal point forgets the initial state.
    const tcl2::BlochTrajectory other =
        tcl2::integrate_bloch(scheme, 1.0, {-0.7, 0.1, -0.2}, {t_end});
    CHECK(std::abs(other.v[0].v1 - traj.v[0].v1) < 1e-8);
    CHECK(std::abs(other.v[0].v2 - traj.v[0].v2) < 1e-8);
    CHECK(std::abs(other.v[0].v3 - traj.v[0].v3) < 1e-8);
}

TEST_CASE("table-only integration is tolerance-convergent") {
    const tcl2::CouplingScheme scheme =
        tcl2::CouplingScheme::rwa_composite(0.2, 0.2, bath(1.0, 0.01, 5.0, 0.5));
    const std::vector<double> t_out = {0.0, 10.0, 25.0, 40.0};
    tcl2::StepControl loose, tight;
    loose.rel_tol = 1e-7;
    tight.rel_tol = 1e-11;
    const tcl2::BlochTrajectory a =
        tcl2::integrate_bloch(scheme, 1.0, {0.1, 0.2, -0.3}, t_out, loose);
    const tcl2::BlochTrajectory c =
        tcl2::integrate_bloch(scheme, 1.0, {0.1, 0.2, -0.3}, t_out, tight);
    for (std::size_t i = 0; i < t_out.size(); ++i) {
        CHECK(std::abs(a.v[i].v1 - c.v[i].v1) < 1e-4);
        CHECK(std::abs(a.v[i].v2 - c.v[i].v2) < 1e-4);
        CHECK(std::abs(a.v[i].v3 - c.v[i].v3) < 1e-4);
        CHECK(norm(a.v[i]) <= 1.0 + 1e-6);
    }
}

TEST_CASE("relaxation rate and default span follow the documented forms") {
    const spectral::BathSpec b = bath(1.0, 0.02, 5.0, 1.0);
    const tcl2::CouplingScheme scheme = tcl2::CouplingScheme::composite(0.1, 0.3, b);
    const double expected = 2.0 * M_PI * 0.09 * spectral::density(1.0, b.spectral) *
                            special::coth(0.5);
    const double rate = tcl2::relaxation_rate(scheme, 1.0);
    CHECK(rate == doctest::Approx(expected).epsilon(1e-13));
    // Automatic table cap for T = 1 clamps to the 200 floor.
    CHECK(tcl2::default_time_span(scheme, 1.0) ==
          doctest::Approx(200.0 + 25.0 / rate).epsilon(1e-12));
}

TEST_CASE("input validation") {
    const tcl2::CouplingScheme scheme =
        tcl2::CouplingScheme::composite(0.1, 0.1, bath(1.0, 0.01, 5.0, 0.5));
    CHECK_THROWS_AS(tcl2::integrate_bloch(scheme, 1.0, {0, 0, 0}, {}), std::domain_error);
    CHECK_THROWS_AS(tcl2::integrate_bloch(scheme, 1.0, {0, 0, 0}, {2.0, 1.0}),
                    std::domain_error);
    CHECK_THROWS_AS(tcl2::integrate_bloch(scheme, 1.0, {1.5, 0, 0}, {1.0}),
                    std::domain_error);
    CHECK_THROWS_AS(tcl2::integrate_bloch(scheme, 0.0, {0, 0, 0}, {1.0}),
                    std::domain_error);
    CHECK_THROWS_AS(tcl2::generator_model2(scheme, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(tcl2::gamma_table(bath(1.0, -0.01, 5.0, 0.5), 1.0, {0.0, 1.0}),
                    std::domain_error);

    CHECK(tcl2::coupling_warnings(scheme, 1.0).empty());
    const tcl2::CouplingScheme strong =
        tcl2::CouplingScheme::composite(20.0, 0.1, bath(1.0, 0.01, 5.0, 0.5));
    CHECK(!tcl2::coupling_warnings(strong, 1.0).empty());
}

} // TEST_SUITE
