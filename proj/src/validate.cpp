// validate.cpp — cross-route and closed-form-vs-quadrature consistency checks
#include "sbc/validate.hpp"
#include "sbc/common.hpp"
#include "sbc/equilibration.hpp"
#include "sbc/kernels.hpp"
#include "sbc/quad.hpp"
#include "sbc/rng.hpp"
#include "sbc/spectral.hpp"
#include "sbc/steady.hpp"
#include "sbc/tcl2.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

namespace sbc::validate {
namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

spectral::BathSpec make_bath(double s, double lambda, double cutoff, double temperature) {
    spectral::BathSpec b;
    b.spectral.ohmicity = s;
    b.spectral.lambda = lambda;
    b.spectral.cutoff = cutoff;
    b.temperature = temperature;
    return b;
}

double rel_dev(double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

class Suite {
public:
    explicit Suite(const ValidateOptions& opts) : opts_(opts) {}

    ValidationReport run() {
        add("quad.reference_integrals", opts_.quad_rel_tol, [&] { return quad_refs(); });
        add("quad.pv_excision", opts_.pv_excision_tol, [&] { return pv_excision(); });
        add("spectral.resonance_consistency", 1e-10, [&] { return resonance(); });
        add("kernels.closed_vs_quadrature", opts_.kernel_rel_tol,
            [&] { return kernel_grid(); });
        add("kernels.rwa_sum_rules", opts_.rwa_sum_tol, [&] { return rwa_sums(); });
        add("kernels.kms_symmetry", opts_.kms_tol, [&] { return kms(); });
        add("kernels.matsubara_anchors", opts_.kernel_rel_tol, [&] { return matsubara(); });
        add("steady.cubic_vacuum_closed_form", opts_.cubic_rel_tol, [&] { return cubic(); });
        add("steady.population_anchor", 1e-12, [&] { return population(); });
        add("tcl2.rwa_structure", opts_.structure_tol, [&] { return rwa_structure(); });
        add("tcl2.split_nullity", opts_.nullity_tol, [&] { return split_nullity(); });
        add("tcl2.dephasing_robustness", opts_.dephasing_tol, [&] { return dephasing(); });
        add("equilibration.cross_route_sign", 0.0, [&] { return cross_route(); });
        return report_;
    }

private:
    // Each check body returns its worst residual; pass iff residual <= tol.
    void add(const char* name, double tol, const std::function<double()>& body) {
        CheckResult r;
        r.name = name;
        r.tolerance = tol;
        try {
            r.residual = body();
            r.passed = r.residual <= tol;
            r.detail = detail_;
            if (!r.passed && r.detail.empty()) r.detail = "residual exceeds tolerance";
        } catch (const std::exception& e) {
            r.passed = false;
            r.residual = kNan;
            r.detail = e.what();
        }
        detail_.clear();
        report_.checks.push_back(std::move(r));
    }

    double quad_refs() {
        quad::QuadConfig cfg;
        double worst = rel_dev(
            quad::integrate([](double x) { return std::exp(-x); }, 0.0,
                            std::numeric_limits<double>::infinity(), cfg),
            1.0);
        worst = std::max(worst, rel_dev(quad::integrate(
                                            [](double x) { return x * x * x * std::exp(-x); },
                                            0.0, std::numeric_limits<double>::infinity(), cfg),
                                        6.0));
        quad::QuadConfig ep = cfg;
        ep.endpoint_power = -0.5;
        worst = std::max(
            worst,
            rel_dev(quad::integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, ep),
                    2.0));
        return worst;
    }

    double pv_excision() {
        const spectral::BathSpec bath = make_bath(1.0, 0.01, 5.0, 0.5);
        const double omega0 = 1.0;
        auto f = [&](double w) { return spectral::effective_density(w, bath); };
        quad::QuadConfig cfg;
        cfg.scale = bath.spectral.cutoff;
        const double inf = std::numeric_limits<double>::infinity();
        const quad::PVResult pv = quad::principal_value(f, omega0, 0.0, inf, cfg);
        const double exc = quad::principal_value_excision(f, omega0, 0.0, inf, cfg);
        return std::abs(pv.value - exc) / std::max(1.0, std::abs(pv.value));
    }

    double resonance() {
        const double closed = spectral::resonance_cutoff(1.0, 1.0);
        const auto generic = spectral::resonance_cutoff_generic(1.0, 1.0, 1.0);
        if (!generic) {
            detail_ = "generic root finder returned no solution at s=1";
            return kNan;
        }
        return rel_dev(*generic, closed);
    }

    double kernel_grid() {
        double worst = 0.0;
        for (double s : {0.5, 1.0, 2.0, 3.0})
            for (double t : {0.0, 0.5}) {
                const spectral::BathSpec bath = make_bath(s, 0.01, 1.0, t);
                for (double tau : {0.5, 1.0, 2.0}) {
                    const kernels::KernelEval c =
                        kernels::kernel_eval(tau, bath, kernels::Method::closed);
                    const kernels::KernelEval q =
                        kernels::kernel_eval(tau, bath, kernels::Method::quadrature);
                    const double scale = std::max({std::abs(c.d1), std::abs(c.d2), 1e-12});
                    worst = std::max(worst, std::abs(c.d1 - q.d1) / scale);
                    worst = std::max(worst, std::abs(c.d2 - q.d2) / scale);
                }
            }
        return worst;
    }

    double rwa_sums() {
        const spectral::BathSpec bath = make_bath(1.0, 0.01, 1.0, 0.5);
        double worst = 0.0;
        for (double tau : {0.3, 0.7, 1.5, 3.0}) {
            const kernels::RwaCorrelations r =
                kernels::rwa_correlations(tau, bath, kernels::Method::quadrature);
            const double d1 = kernels::noise_kernel(tau, bath, kernels::Method::closed);
            const double d2 =
                kernels::dissipation_kernel(tau, bath.spectral, kernels::Method::closed);
            const double scale = std::max({std::abs(d1), std::abs(d2), 1e-12});
            worst = std::max(worst, std::abs(r.d1 + r.d1_tilde - d1) / scale);
            worst = std::max(worst, std::abs(r.d2_tilde - r.d2 - d2) / scale);
        }
        return worst;
    }

    double kms() {
        double worst = 0.0;
        for (double s : {1.0, 3.0}) {
            const spectral::BathSpec bath = make_bath(s, 0.01, 5.0, 0.5);
            for (double u : {0.2, 0.35}) {
                const double a = kernels::matsubara_correlation(u, bath);
                const double b = kernels::matsubara_correlation(1.0 - u, bath);
                worst = std::max(worst, std::abs(a - b) / std::max(std::abs(a), 1e-300));
            }
        }
        return worst;
    }

    double matsubara() {
        const spectral::BathSpec bath = make_bath(1.0, 0.01, 5.0, 0.5);
        const double c0 = kernels::matsubara_correlation(0.0, bath);
        const double d1 = kernels::noise_kernel(0.0, bath, kernels::Method::closed);
        double worst = rel_dev(c0, 0.5 * d1);
        const double mid = kernels::matsubara_correlation(0.5, bath);
        if (mid > kernels::matsubara_correlation(0.45, bath) ||
            mid > kernels::matsubara_correlation(0.55, bath)) {
            detail_ = "imaginary-time correlation is not minimal at u = 1/2";
            return kNan;
        }
        return worst;
    }

    double cubic() {
        double worst = 0.0;
        for (double cutoff : {1.0, 5.0, 10.0}) {
            const spectral::BathSpec bath = make_bath(3.0, 0.01, cutoff, 0.0);
            const steady::LongTimeCoeffs lt = steady::longtime_coeffs(1, bath, 1.0);
            const auto [d1, d2] =
                steady::delta_closed_cubic_vacuum(bath.spectral.lambda, cutoff, 1.0);
            worst = std::max(worst, rel_dev(lt.delta1, d1));
            worst = std::max(worst, rel_dev(lt.delta2, d2));
        }
        return worst;
    }

    double population() {
        const spectral::BathSpec bath = make_bath(1.0, 0.01, 5.0, 0.5);
        const steady::SteadyReport r = steady::steady_state_model1(0.1, 0.1, bath, 1.0);
        double worst = std::abs(r.v.v3 + std::tanh(1.0));
        worst = std::max(worst, std::abs(r.v.v2));
        return worst;
    }

    double rwa_structure() {
        const spectral::BathSpec bath = make_bath(1.0, 0.01, 5.0, 0.5);
        const tcl2::CouplingScheme scheme = tcl2::CouplingScheme::rwa_composite(0.1, 0.1, bath);
        const double omega0 = 1.0;
        std::vector<double> grid(151);
        for (int i = 0; i <= 150; ++i) grid[i] = 15.0 * i / 150.0;
        const tcl2::CoeffTable ct = tcl2::coefficient_tables(scheme, omega0, grid);
        double worst = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            worst = std::max(worst, std::abs(ct.a[i](0, 1)));
            const tcl2::GeneratorSample g =
                tcl2::generator_from_coeffs(ct.a[i], ct.h[i], omega0, grid[i]);
            worst = std::max(worst, std::abs(g.M(0, 0) - g.M(1, 1)));
            worst = std::max(worst, std::abs(g.M(0, 1) + g.M(1, 0)));
        }
        return worst;
    }

    double split_nullity() {
        rng::Engine eng(opts_.seed);
        double worst = 0.0;
        for (int draw = 0; draw < 5; ++draw) {
            const spectral::BathSpec bath1 =
                make_bath(eng.uniform(0.5, 3.0), eng.uniform(0.005, 0.02),
                          eng.uniform(2.0, 8.0), eng.uniform(0.3, 1.0));
            const spectral::BathSpec bath2 =
                make_bath(eng.uniform(0.5, 3.0), eng.uniform(0.005, 0.02),
                          eng.uniform(2.0, 8.0), eng.uniform(0.3, 1.0));
            const double f1 = eng.uniform(0.05, 0.15);
            const double f2 = eng.uniform(0.05, 0.15);
            const tcl2::CouplingScheme scheme =
                tcl2::CouplingScheme::split_two_baths(f1, bath1, f2, bath2);
            const double omega0 = 1.0;
            const BlochVector v0 = eng.bloch_ball();
            // The coherence block contracts at half the relaxation rate; extend
            // the default span so its residual clears the nullity tolerance.
            const double span = tcl2::default_time_span(scheme, omega0) +
                                25.0 / tcl2::relaxation_rate(scheme, omega0);
            const tcl2::BlochTrajectory traj =
                tcl2::integrate_bloch(scheme, omega0, v0, {0.0, span});
            worst = std::max({worst, std::abs(traj.v.back().v1), std::abs(traj.v.back().v2)});
        }
        return worst;
    }

    double dephasing() {
        const spectral::BathSpec bath1 = make_bath(3.0, 0.01, 10.0, 0.1);
        const spectral::BathSpec bath2 = make_bath(3.0, 0.01, 10.0, 0.1);
        const double omega0 = 1.0;
        const BlochVector v0{0.0, 0.0, 0.3};
        const tcl2::CouplingScheme base = tcl2::CouplingScheme::composite(0.1, 0.1, bath1);
        const double span = tcl2::default_time_span(base, omega0);
        const tcl2::BlochTrajectory ref =
            tcl2::integrate_bloch(base, omega0, v0, {0.0, span});
        double worst = 0.0;
        for (double f3 : {0.0, 0.05, 0.1}) {
            const tcl2::CouplingScheme scheme =
                tcl2::CouplingScheme::composite_plus_dephasing(0.1, 0.1, bath1, f3, bath2);
            const tcl2::BlochTrajectory traj =
                tcl2::integrate_bloch(scheme, omega0, v0, {0.0, span});
            worst = std::max(worst, std::abs(traj.v.back().v1 - ref.v.back().v1));
            worst = std::max(worst, std::abs(traj.v.back().v2 - ref.v.back().v2));
            worst = std::max(worst, std::abs(traj.v.back().v3 - ref.v.back().v3));
        }
        return worst;
    }

    double cross_route() {
        const spectral::BathSpec bath = make_bath(3.0, 0.01, 5.0, 0.5);
        const double pert = equilibration::perturbative_v1(0.1, 0.1, bath, 1.0);
        const double dyn = steady::steady_state_model1(0.1, 0.1, bath, 1.0).v.v1;
        if (pert == 0.0 || dyn == 0.0 || std::signbit(pert) != std::signbit(dyn)) {
            std::ostringstream os;
            os << "route sign mismatch: perturbative " << pert << " vs dynamical " << dyn;
            detail_ = os.str();
            return kNan;
        }
        return 0.0;
    }

    ValidateOptions opts_;
    ValidationReport report_;
    std::string detail_;
};

} // namespace

bool ValidationReport::all_passed() const {
    for (const CheckResult& c : checks)
        if (!c.passed) return false;
    return !checks.empty();
}

ValidationReport run_validation(const ValidateOptions& opts) { return Suite(opts).run(); }

nlohmann::json report_json(const ValidationReport& report) {
    nlohmann::json checks = nlohmann::json::array();
    for (const CheckResult& c : report.checks) {
        nlohmann::json j;
        j["name"] = c.name;
        j["passed"] = c.passed;
        if (std::isnan(c.residual))
            j["residual"] = nullptr;
        else
            j["residual"] = c.residual;
        j["tolerance"] = c.tolerance;
        if (!c.detail.empty()) j["detail"] = c.detail;
        checks.push_back(j);
    }
    nlohmann::json out;
    out["checks"] = checks;
    out["all_passed"] = report.all_passed();
    return out;
}

std::string report_text(const ValidationReport& report) {
    std::ostringstream os;
    for (const CheckResult& c : report.checks) {
        os << (c.passed ? "PASS" : "FAIL") << "  " << c.name << "  (residual ";
        if (std::isnan(c.residual))
            os << "n/a";
        else
            os << c.residual;
        os << ", tolerance " << c.tolerance << ")";
        if (!c.detail.empty()) os << "  [" << c.detail << "]";
        os << "\n";
    }
    os << (report.all_passed() ? "all checks passed" : "validation FAILED") << " ("
       << report.checks.size() << " checks)\n";
    return os.str();
}

} // namespace sbc::validate
