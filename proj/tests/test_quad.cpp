// test_quad.cpp — quadrature oracles: closed-form integrals, principal values
// by two independent routes, triangle reductions, cumulative tables
#include "sbc/common.hpp"
#include "sbc/quad.hpp"
#include "sbc/special.hpp"

#include "doctest.h"

#include <cmath>
#include <limits>
#include <vector>

using namespace sbc;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_SUITE("quad") {

TEST_CASE("gauss_legendre nodes integrate polynomials exactly") {
    std::vector<double> x, w;
    quad::gauss_legendre(5, x, w);
    REQUIRE(x.size() == 5);
    double wsum = 0.0;
    for (double v : w) wsum += v;
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
    // Symmetry of the rule.
    CHECK(x[0] == doctest::Approx(-x[4]).epsilon(1e-14));
    CHECK(w[0] == doctest::Approx(w[4]).epsilon(1e-14));
    // Exact for degree <= 2n-1 = 9: int_-1^1 x^8 dx = 2/9.
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * std::pow(x[i], 8);
    CHECK(s == doctest::Approx(2.0 / 9.0).epsilon(1e-14));
}

TEST_CASE("reference integrals on finite and semi-infinite domains") {
    CHECK(quad::integrate([](double x) { return std::exp(-x); }, 0.0, kInf) ==
          doctest::Approx(1.0).epsilon(1e-10));
    CHECK(quad::integrate([](double x) { return x * x * x * std::exp(-x); }, 0.0, kInf) ==
          doctest::Approx(6.0).epsilon(1e-10));
    CHECK(quad::integrate([](double x) { return std::exp(-x * x); }, 0.0, kInf) ==
          doctest::Approx(0.5 * std::sqrt(M_PI)).epsilon(1e-10));
    // Oscillatory damped: int_0^inf e^-x cos(10 x) dx = 1/101.
    CHECK(quad::integrate([](double x) { return std::exp(-x) * std::cos(10.0 * x); }, 0.0,
                          kInf) == doctest::Approx(1.0 / 101.0).epsilon(1e-9));
    CHECK(quad::integrate([](double x) { return std::sin(x); }, 0.0, M_PI) ==
          doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("endpoint_power handles integrable singularities") {
    quad::QuadConfig cfg;
    cfg.endpoint_power = -0.5;
    CHECK(quad::integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, cfg) ==
          doctest::Approx(2.0).epsilon(1e-9));
    // Gamma(3/2) = int_0^inf sqrt(x) e^-x dx.
    cfg.endpoint_power = 0.5;
    CHECK(quad::integrate([](double x) { return std::sqrt(x) * std::exp(-x); }, 0.0, kInf,
                          cfg) == doctest::Approx(0.88622692545275801).epsilon(1e-9));
}

TEST_CASE("unresolvable integral raises NumericError with a best estimate") {
    quad::QuadConfig cfg;
    cfg.max_subdivisions = 4;
    cfg.rel_tol = 1e-14;
    cfg.abs_tol = 1e-300;
    CHECK_THROWS_AS(quad::integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0,
                                    cfg),
                    NumericError);
    try {
        quad::integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, cfg);
    } catch (const NumericError& e) {
        CHECK(std::isfinite(e.best_estimate));
        CHECK(e.error_estimate > 0.0);
    }
}

TEST_CASE("principal value: pinned references") {
    // PV int_0^2 1/(x-1) dx = 0, PV int_0^2 x/(x-1) dx = 2.
    const quad::PVResult flat =
        quad::principal_value([](double) { return 1.0; }, 1.0, 0.0, 2.0);
    CHECK(std::abs(flat.value) < 1e-10);
    const quad::PVResult lin =
        quad::principal_value([](double x) { return x; }, 1.0, 0.0, 2.0);
    CHECK(lin.value == doctest::Approx(2.0).epsilon(1e-10));
    // PV int_0^inf e^-x/(x-1) dx = -Ei(1)/e.
    const quad::PVResult expo =
        quad::principal_value([](double x) { return std::exp(-x); }, 1.0, 0.0, kInf);
    CHECK(expo.value ==
          doctest::Approx(-special::ei(1.0) * std::exp(-1.0)).epsilon(1e-9));
    CHECK(expo.pole == 1.0);
    CHECK(expo.residual_estimate >= 0.0);
}

TEST_CASE("principal value: subtraction and excision routes agree") {
    auto f = [](double x) { return std::exp(-0.3 * x) * (1.0 + 0.1 * x * x); };
    quad::QuadConfig cfg;
    cfg.scale = 1.0 / 0.3; // decay length of the integrand sets the tail window
    for (double pole : {0.7, 2.0}) {
        const quad::PVResult a = quad::principal_value(f, pole, 0.0, kInf, cfg);
        const double b = quad::principal_value_excision(f, pole, 0.0, kInf, cfg);
        CHECK(a.value == doctest::Approx(b).epsilon(1e-5));
    }
}

TEST_CASE("triangle integral: full and reduced routes agree") {
    // F depending on x - y only collapses to int_0^1 (1-u) g(u) du.
    const double full =
        quad::triangle_integral([](double x, double y) { return std::cos(x - y); });
    const double reduced =
        quad::triangle_integral_reduced([](double u) { return std::cos(u); });
    const double exact = 1.0 - std::cos(1.0);
    CHECK(full == doctest::Approx(exact).epsilon(1e-10));
    CHECK(reduced == doctest::Approx(exact).epsilon(1e-10));
    // Polynomial pinned values: g = 1 -> 1/2, g = u -> 1/6.
    CHECK(quad::triangle_integral_reduced([](double) { return 1.0; }) ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(quad::triangle_integral_reduced([](double u) { return u; }) ==
          doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    // Genuinely two-dimensional: int_0^1 int_0^x x*y dy dx = 1/8.
    CHECK(quad::triangle_integral([](double x, double y) { return x * y; }) ==
          doctest::Approx(0.125).epsilon(1e-12));
}

TEST_CASE("cumulative integral reproduces antiderivatives on a grid") {
    std::vector<double> grid = {0.0, 0.3, 1.0, 2.0, 3.5, 6.0};
    const std::vector<double> cum =
        quad::cumulative_integral([](double t) { return std::cos(t); }, grid);
    REQUIRE(cum.size() == grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        CHECK(cum[i] == doctest::Approx(std::sin(grid[i])).epsilon(1e-10));
    // Grid not starting at zero still integrates from zero.
    std::vector<double> grid2 = {1.0, 2.0};
    const std::vector<double> cum2 =
        quad::cumulative_integral([](double t) { return 2.0 * t; }, grid2);
    CHECK(cum2[0] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(cum2[1] == doctest::Approx(4.0).epsilon(1e-10));
}

} // TEST_SUITE
