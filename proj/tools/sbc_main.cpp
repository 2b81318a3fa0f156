// sbc_main.cpp — scenario runner: parses configs, dispatches computations,
// writes CSV results with JSON sidecars
#include "sbc/common.hpp"
#include "sbc/equilibration.hpp"
#include "sbc/io.hpp"
#include "sbc/rng.hpp"
#include "sbc/spectral.hpp"
#include "sbc/steady.hpp"
#include "sbc/tcl2.hpp"
#include "sbc/validate.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <limits>

#if defined(_OPENMP)
#include <omp.h>
#endif

using namespace sbc;

namespace {

using io::ConfigError;
using io::ResultTable;
using io::ScenarioConfig;

// Physical-range problems found before any computation are config errors.
template <typename Fn>
void check_config(const Fn& body) {
    try {
        body();
    } catch (const std::domain_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

void apply_sweep_value(spectral::BathSpec& bath, const std::string& variable, double value) {
    if (variable == "temperature")
        bath.temperature = value;
    else if (variable == "cutoff")
        bath.spectral.cutoff = value;
    else
        bath.spectral.ohmicity = value;
}

template <typename Fn>
void parallel_indexed(std::size_t n, const Fn& body) {
    std::exception_ptr err;
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
#if defined(_OPENMP)
#pragma omp critical
#endif
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
}

ResultTable run_steady(const ScenarioConfig& c) {
    check_config([&] { spectral::validate(c.bath); });
    const bool swept = !c.sweep_variable.empty();
    const std::string var = swept ? c.sweep_variable : "temperature";
    const std::vector<double> values =
        swept ? c.sweep_values : std::vector<double>{c.bath.temperature};

    ResultTable table;
    table.command = "steady";
    table.config = sbc::io::resolved_json(c);
    table.columns = {var, "v1", "v2", "v3", "coherence", "theta"};
    if (c.optimize_f2) table.columns.push_back("f2_opt");
    table.rows.resize(values.size());

    parallel_indexed(values.size(), [&](std::size_t i) {
        spectral::BathSpec bath = c.bath;
        apply_sweep_value(bath, var, values[i]);
        double f2 = c.f2;
        double f2_opt = 0.0;
        if (c.optimize_f2) {
            const steady::CoherenceOptimum opt =
                steady::max_coherence_over_f2(c.model, c.f1, bath, c.omega0);
            f2 = f2_opt = opt.f2_opt;
        }
        const steady::SteadyReport r =
            c.model == 1 ? steady::steady_state_model1(c.f1, f2, bath, c.omega0)
                         : steady::steady_state_model2(c.f1, f2, bath, c.omega0);
        std::vector<double> row = {values[i], r.v.v1, r.v.v2, r.v.v3, r.coherence, r.theta};
        if (c.optimize_f2) row.push_back(f2_opt);
        table.rows[i] = std::move(row);
    });
    return table;
}

tcl2::CouplingScheme make_scheme(const ScenarioConfig& c) {
    if (c.scheme == "composite") return tcl2::CouplingScheme::composite(c.f1, c.f2, c.bath);
    if (c.scheme == "rwa") return tcl2::CouplingScheme::rwa_composite(c.f1, c.f2, c.bath);
    if (c.scheme == "split")
        return tcl2::CouplingScheme::split_two_baths(c.f1, c.bath, c.f2, c.bath2);
    return tcl2::CouplingScheme::composite_plus_dephasing(c.f1, c.f2, c.bath, c.f3, c.bath2);
}

ResultTable run_trajectory(const ScenarioConfig& c, std::uint64_t seed) {
    const tcl2::CouplingScheme scheme = make_scheme(c);
    check_config([&] {
        spectral::validate(scheme.bath1);
        if (c.has_bath2) spectral::validate(scheme.bath2);
    });
    for (const std::string& w : tcl2::coupling_warnings(scheme, c.omega0))
        std::cerr << "warning: " << w << "\n";

    ScenarioConfig resolved = c;
    if (c.random_v0) {
        rng::Engine eng(seed);
        resolved.v0 = eng.bloch_ball();
        resolved.has_v0 = true;
        resolved.random_v0 = false;
    }
    const double t_end =
        c.t_end > 0.0 ? c.t_end : tcl2::default_time_span(scheme, c.omega0);
    resolved.t_end = t_end;

    std::vector<double> t_out(c.points);
    for (int i = 0; i < c.points; ++i) t_out[i] = t_end * i / (c.points - 1);

    const tcl2::BlochTrajectory traj =
        tcl2::integrate_bloch(scheme, c.omega0, resolved.v0, t_out);

    ResultTable table;
    table.command = "trajectory";
    table.config = sbc::io::resolved_json(resolved);
    table.columns = {"t", "v1", "v2", "v3"};
    if (c.flag_steady) table.columns.push_back("steady");
    table.rows.reserve(t_out.size());
    for (std::size_t i = 0; i < t_out.size(); ++i) {
        std::vector<double> row = {t_out[i], traj.v[i].v1, traj.v[i].v2, traj.v[i].v3};
        if (c.flag_steady)
            row.push_back(traj.steady_reached && t_out[i] >= traj.steady_time ? 1.0 : 0.0);
        table.rows.push_back(std::move(row));
    }
    return table;
}

ResultTable run_equilibration(const ScenarioConfig& c) {
    check_config([&] { spectral::validate(c.bath); });
    ResultTable table;
    table.command = "equilibration";
    table.config = sbc::io::resolved_json(c);
    table.columns = {"temperature", "coherence", "v3", "correction"};
    table.rows.resize(c.sweep_values.size());
    parallel_indexed(c.sweep_values.size(), [&](std::size_t i) {
        spectral::BathSpec bath = c.bath;
        bath.temperature = c.sweep_values[i];
        const double v1 = equilibration::perturbative_v1(c.f1, c.f2, bath, c.omega0);
        const equilibration::V3Result v3 =
            equilibration::perturbative_v3(c.f1, c.f2, bath, c.omega0);
        table.rows[i] = {c.sweep_values[i], std::abs(v1), v3.v3, v3.correction};
    });
    return table;
}

ResultTable run_strong(const ScenarioConfig& c) {
    const std::vector<equilibration::StrongPoint> pts =
        equilibration::strong_coupling_sweep(c.strong, c.sweep_values);
    ResultTable table;
    table.command = "strong-coupling";
    table.config = sbc::io::resolved_json(c);
    table.columns = {"temperature", "coherence", "v3", "theta"};
    for (const equilibration::StrongPoint& p : pts)
        table.rows.push_back({p.temperature, p.coherence, p.v3, p.theta});
    return table;
}

ResultTable run_max_coherence(const ScenarioConfig& c) {
    check_config([&] { spectral::validate(c.bath.spectral); });
    const std::vector<steady::SweepPoint> pts = steady::temperature_sweep(
        c.model, c.bath.spectral, c.sweep_values, c.f1, c.omega0);
    ResultTable table;
    table.command = "max-coherence";
    table.config = sbc::io::resolved_json(c);
    table.columns = {"temperature", "f2_opt",
                     "cmax_over_f1", "v3",
                     "theta",        "numeric_fallback"};
    for (const steady::SweepPoint& p : pts)
        table.rows.push_back({p.temperature, p.f2_opt, p.cmax_over_f1, p.v3, p.theta,
                              p.numeric_fallback ? 1.0 : 0.0});
    return table;
}

void emit(const ResultTable& table, const std::string& out_path, double wall_seconds) {
    if (out_path.empty()) {
        std::cout << sbc::io::format_csv(table);
        return;
    }
    sbc::io::write_csv(table, out_path);
    sbc::io::write_sidecar(table, out_path + ".json", wall_seconds);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"steady-state coherence laboratory for a qubit with composite bath coupling"};
    app.require_subcommand(1);

    std::string config_path, out_path;
    int threads = 0;
    std::uint64_t seed = 12345;

    const char* names[5] = {"steady", "trajectory", "equilibration", "strong-coupling",
                            "max-coherence"};
    const char* descs[5] = {
        "analytic long-time steady state (optionally swept and f2-optimized)",
        "integrate the Bloch trajectory of the time-local generator",
        "second-order reduced-Gibbs-state route over a temperature sweep",
        "exact reduced Gibbs states of the strong-coupling toy models",
        "coherence maximized over the orthogonal coupling, per temperature"};
    for (int i = 0; i < 5; ++i) {
        CLI::App* sub = app.add_subcommand(names[i], descs[i]);
        sub->add_option("--config", config_path, "scenario JSON (or a result sidecar)")
            ->required();
        sub->add_option("--out", out_path, "output CSV path (sidecar at PATH.json)");
        sub->add_option("--threads", threads, "worker threads (0 = library default)");
        sub->add_option("--seed", seed, "RNG seed for randomized initial states");
    }
    CLI::App* val = app.add_subcommand("validate", "run the built-in oracle suite");
    val->add_option("--out", out_path, "write the JSON report here");
    val->add_option("--threads", threads, "worker threads (0 = library default)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

#if defined(_OPENMP)
    if (threads > 0) omp_set_num_threads(threads);
#endif

    const std::string cmd = app.get_subcommands().front()->get_name();
    try {
        const auto t0 = std::chrono::steady_clock::now();
        if (cmd == "validate") {
            const validate::ValidationReport report = validate::run_validation();
            std::cout << validate::report_text(report);
            if (!out_path.empty()) {
                std::ofstream out(out_path);
                if (!out) throw std::runtime_error("cannot open \"" + out_path + "\"");
                out << validate::report_json(report).dump(2) << "\n";
            }
            return report.all_passed() ? 0 : 1;
        }

        const ScenarioConfig cfg =
            sbc::io::parse_scenario(sbc::io::load_json_file(config_path), cmd);
        ResultTable table;
        if (cmd == "steady")
            table = run_steady(cfg);
        else if (cmd == "trajectory")
            table = run_trajectory(cfg, seed);
        else if (cmd == "equilibration")
            table = run_equilibration(cfg);
        else if (cmd == "strong-coupling")
            table = run_strong(cfg);
        else
            table = run_max_coherence(cfg);
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        emit(table, out_path, wall);
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const sbc::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << " (best estimate "
                  << e.best_estimate << ", error estimate " << e.error_estimate << ")\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
