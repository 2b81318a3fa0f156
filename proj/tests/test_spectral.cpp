// test_spectral.cpp — spectral density family, thermal dressing, resonance
// cutoff condition
#include "sbc/spectral.hpp"
#include "sbc/special.hpp"

#include "doctest.h"

#include <cmath>
#include <stdexcept>

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

} // namespace

TEST_SUITE("spectral") {

TEST_CASE("validate rejects out-of-range parameters") {
    spectral::SpectralParams p;
    CHECK_NOTHROW(spectral::validate(p));
    p.lambda = 0.0;
    CHECK_THROWS_AS(spectral::validate(p), std::domain_error);
    p.lambda = 0.01;
    p.cutoff = -1.0;
    CHECK_THROWS_AS(spectral::validate(p), std::domain_error);
    p.cutoff = 1.0;
    p.ohmicity = 0.0;
    CHECK_THROWS_AS(spectral::validate(p), std::domain_error);

    spectral::BathSpec b;
    b.temperature = -0.1;
    CHECK_THROWS_AS(spectral::validate(b), std::domain_error);
    spectral::SystemSpec sys;
    sys.omega0 = 0.0;
    CHECK_THROWS_AS(spectral::validate(sys), std::domain_error);
}

TEST_CASE("density pinned value and scaling law") {
    // Ohmic, lambda = 0.01, cutoff 5: J(1) = 0.01 e^{-1/5}.
    CHECK(spectral::density(1.0, bath(1.0, 0.01, 5.0, 0.0).spectral) ==
          doctest::Approx(0.0081873075307798186).epsilon(1e-14));
    CHECK(spectral::density(0.0, bath(1.0, 0.01, 5.0, 0.0).spectral) == 0.0);
    // J(omega) = lambda omega^s cutoff^{1-s} e^{-omega/cutoff}: ratio test at s=2.
    const spectral::SpectralParams p = bath(2.0, 0.03, 4.0, 0.0).spectral;
    const double r = spectral::density(8.0, p) / spectral::density(4.0, p);
    CHECK(r == doctest::Approx(4.0 * std::exp(-1.0)).epsilon(1e-13));
    // Dimensional prefactor: J(cutoff) = lambda * cutoff / e for every s.
    for (double s : {0.5, 1.0, 3.0}) {
        const spectral::SpectralParams q = bath(s, 0.02, 7.0, 0.0).spectral;
        CHECK(spectral::density(7.0, q) ==
              doctest::Approx(0.02 * 7.0 * std::exp(-1.0)).epsilon(1e-13));
    }
}

TEST_CASE("effective density: thermal dressing and zero-frequency limits") {
    const spectral::BathSpec cold = bath(1.0, 0.01, 5.0, 0.0);
    CHECK(spectral::effective_density(1.3, cold) ==
          doctest::Approx(spectral::density(1.3, cold.spectral)).epsilon(1e-14));

    const spectral::BathSpec warm = bath(1.0, 0.01, 5.0, 0.5);
    CHECK(spectral::effective_density(1.0, warm) ==
          doctest::Approx(spectral::density(1.0, warm.spectral) * special::coth(1.0))
              .epsilon(1e-13));
    // omega -> 0: Ohmic tends to 2 lambda T, super-Ohmic to zero, sub-Ohmic with
    // T > 0 diverges.
    CHECK(spectral::effective_density(0.0, warm) == doctest::Approx(0.01).epsilon(1e-13));
    CHECK(spectral::effective_density(0.0, bath(3.0, 0.01, 5.0, 0.5)) == 0.0);
    CHECK_THROWS_AS(spectral::effective_density(0.0, bath(0.5, 0.01, 5.0, 0.5)),
                    std::domain_error);
    CHECK(spectral::effective_density(0.0, bath(0.5, 0.01, 5.0, 0.0)) == 0.0);
    // Continuity of the omega -> 0 series limit against a small-omega evaluation.
    CHECK(spectral::effective_density(1e-7, warm) ==
          doctest::Approx(spectral::effective_density(0.0, warm)).epsilon(1e-6));
}

TEST_CASE("resonance cutoff: closed form, generic solver, slope residual") {
    const double om_res = spectral::resonance_cutoff(1.0, 1.0);
    CHECK(om_res == doctest::Approx(6.70772367015423).epsilon(1e-12));
    // The defining property: d/domega J_eff vanishes at omega0 for that cutoff.
    CHECK(std::abs(spectral::effective_density_slope(1.0, bath(1.0, 0.01, om_res, 1.0))) <
          1e-12);
    // Bisection route agrees with the closed form.
    const auto generic = spectral::resonance_cutoff_generic(1.0, 1.0, 1.0);
    REQUIRE(generic.has_value());
    CHECK(*generic == doctest::Approx(om_res).epsilon(1e-10));
    // Super-Ohmic root also satisfies the stationarity condition.
    const auto s3 = spectral::resonance_cutoff_generic(3.0, 0.7, 1.0);
    REQUIRE(s3.has_value());
    CHECK(std::abs(spectral::effective_density_slope(1.0, bath(3.0, 0.01, *s3, 0.7))) <
          1e-10);
    // Sub-Ohmic at high temperature has no stationary cutoff.
    CHECK(!spectral::resonance_cutoff_generic(0.5, 10.0, 1.0).has_value());
}

TEST_CASE("slope identity matches a finite difference") {
    const spectral::BathSpec b = bath(3.0, 0.01, 5.0, 0.8);
    const double w = 1.2, h = 1e-6;
    const double fd = (spectral::effective_density(w + h, b) -
                       spectral::effective_density(w - h, b)) /
                      (2.0 * h);
    CHECK(spectral::effective_density_slope(w, b) == doctest::Approx(fd).epsilon(1e-7));
}

TEST_CASE("coupling warnings trigger on strong coupling only") {
    CHECK(spectral::coupling_warnings(bath(1.0, 0.01, 5.0, 0.5), 1.0).empty());
    CHECK(!spectral::coupling_warnings(bath(1.0, 0.2, 5.0, 0.5), 1.0).empty());
}

} // TEST_SUITE
