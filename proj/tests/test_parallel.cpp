// test_parallel.cpp — parallel table builds must match the serial reference
#include "doctest.h"

#include "sbc/spectral.hpp"
#include "sbc/steady.hpp"
#include "sbc/tcl2.hpp"

#include <vector>

using namespace sbc;

namespace {

spectral::BathSpec bath(double s, double lambda, double cutoff, double temperature) {
    spectral::BathSpec b;
    b.spectral.ohmicity = s;
    b.spectral.lambda = lambda;
    b.spectral.cutoff = cutoff;
    b.temperature = temperature;
    return b;
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = a + (b - a) * i / (n - 1);
    return g;
}

std::vector<const std::vector<double>*> columns(const tcl2::GammaTable& g) {
    return {&g.g1, &g.g1c, &g.g1s, &g.g2, &g.g2c, &g.g2s,
            &g.w1, &g.w1c, &g.w1s, &g.e1, &g.e1c, &g.e1s};
}

} // namespace

TEST_SUITE("parallel") {

TEST_CASE("parallel memory-kernel tables equal the serial reference bitwise") {
    const spectral::BathSpec b = bath(3.0, 0.01, 10.0, 0.1);
    const std::vector<double> grid = linspace(0.0, 50.0, 251);
    const tcl2::GammaTable serial = tcl2::gamma_table(b, 1.0, grid, false);
    const tcl2::GammaTable parallel = tcl2::gamma_table(b, 1.0, grid, true);
    REQUIRE(serial.t.size() == grid.size());
    REQUIRE(parallel.t.size() == grid.size());
    const auto sc = columns(serial);
    const auto pc = columns(parallel);
    for (std::size_t c = 0; c < sc.size(); ++c) {
        REQUIRE(sc[c]->size() == grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            INFO("column ", c, " index ", i);
            CHECK((*sc[c])[i] == (*pc[c])[i]);
        }
    }
}

TEST_CASE("repeated parallel builds are reproducible") {
    const spectral::BathSpec b = bath(1.0, 0.01, 5.0, 0.5);
    const std::vector<double> grid = linspace(0.0, 30.0, 151);
    const tcl2::GammaTable first = tcl2::gamma_table(b, 1.0, grid, true);
    const tcl2::GammaTable second = tcl2::gamma_table(b, 1.0, grid, true);
    const auto fc = columns(first);
    const auto sc = columns(second);
    for (std::size_t c = 0; c < fc.size(); ++c)
        for (std::size_t i = 0; i < grid.size(); ++i) CHECK((*fc[c])[i] == (*sc[c])[i]);
}

TEST_CASE("parallel temperature sweeps preserve row order and values") {
    const spectral::SpectralParams sp{0.01, 5.0, 1.0};
    const std::vector<double> grid = {0.4, 0.6, 0.8, 1.0, 1.2};
    const std::vector<steady::SweepPoint> a = steady::temperature_sweep(1, sp, grid, 0.1, 1.0);
    const std::vector<steady::SweepPoint> b = steady::temperature_sweep(1, sp, grid, 0.1, 1.0);
    REQUIRE(a.size() == grid.size());
    REQUIRE(b.size() == grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(a[i].temperature == grid[i]);
        CHECK(a[i].f2_opt == b[i].f2_opt);
        CHECK(a[i].cmax_over_f1 == b[i].cmax_over_f1);
        CHECK(a[i].v3 == b[i].v3);
        CHECK(a[i].theta == b[i].theta);
    }
}

} // TEST_SUITE("parallel")
