// io.cpp — scenario parsing with strict schemas, CSV/JSON result emission
#include "sbc/io.hpp"
#include "sbc/version.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace sbc::io {
namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::set<std::string>& allowed, const char* where) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw ConfigError(std::string("config: unknown key \"") + it.key() + "\" in " +
                              where);
}

double get_num(const json& obj, const char* key, const char* where) {
    if (!obj.contains(key))
        throw ConfigError(std::string("config: missing \"") + key + "\" in " + where);
    const json& v = obj.at(key);
    if (!v.is_number())
        throw ConfigError(std::string("config: \"") + key + "\" in " + where +
                          " must be a number");
    return v.get<double>();
}

double get_num_or(const json& obj, const char* key, double fallback, const char* where) {
    return obj.contains(key) ? get_num(obj, key, where) : fallback;
}

int get_int_or(const json& obj, const char* key, int fallback, const char* where) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer())
        throw ConfigError(std::string("config: \"") + key + "\" in " + where +
                          " must be an integer");
    return v.get<int>();
}

bool get_bool_or(const json& obj, const char* key, bool fallback, const char* where) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_boolean())
        throw ConfigError(std::string("config: \"") + key + "\" in " + where +
                          " must be a boolean");
    return v.get<bool>();
}

std::string get_str_or(const json& obj, const char* key, const std::string& fallback,
                       const char* where) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_string())
        throw ConfigError(std::string("config: \"") + key + "\" in " + where +
                          " must be a string");
    return v.get<std::string>();
}

spectral::BathSpec parse_bath(const json& obj, const char* where) {
    if (!obj.is_object())
        throw ConfigError(std::string("config: ") + where + " must be an object");
    check_keys(obj, {"s", "lambda", "cutoff", "temperature"}, where);
    spectral::BathSpec bath;
    bath.spectral.ohmicity = get_num(obj, "s", where);
    bath.spectral.lambda = get_num(obj, "lambda", where);
    bath.spectral.cutoff = get_num(obj, "cutoff", where);
    bath.temperature = get_num(obj, "temperature", where);
    return bath;
}

std::vector<double> parse_sweep_values(const json& obj, const char* where) {
    if (obj.contains("values")) {
        const json& v = obj.at("values");
        if (!v.is_array() || v.empty())
            throw ConfigError(std::string("config: \"values\" in ") + where +
                              " must be a non-empty array");
        std::vector<double> out;
        for (const json& e : v) {
            if (!e.is_number())
                throw ConfigError(std::string("config: \"values\" in ") + where +
                                  " must contain numbers");
            out.push_back(e.get<double>());
        }
        return out;
    }
    const double from = get_num(obj, "from", where);
    const double to = get_num(obj, "to", where);
    const int count = get_int_or(obj, "count", 0, where);
    if (count < 2)
        throw ConfigError(std::string("config: \"count\" in ") + where + " must be >= 2");
    std::vector<double> out(count);
    for (int i = 0; i < count; ++i) out[i] = from + (to - from) * i / (count - 1);
    return out;
}

void parse_sweep(const json& obj, ScenarioConfig& c, const char* where) {
    check_keys(obj, {"variable", "values", "from", "to", "count"}, where);
    c.sweep_variable = get_str_or(obj, "variable", "temperature", where);
    if (c.sweep_variable != "temperature" && c.sweep_variable != "cutoff" &&
        c.sweep_variable != "ohmicity")
        throw ConfigError("config: sweep variable must be temperature, cutoff, or ohmicity");
    c.sweep_values = parse_sweep_values(obj, where);
}

void parse_coupling(const json& obj, ScenarioConfig& c) {
    check_keys(obj, {"f1", "f2", "f3"}, "coupling");
    c.f1 = get_num_or(obj, "f1", 0.0, "coupling");
    c.f2 = get_num_or(obj, "f2", 0.0, "coupling");
    c.f3 = get_num_or(obj, "f3", 0.0, "coupling");
}

void parse_trajectory_block(const json& obj, ScenarioConfig& c) {
    check_keys(obj, {"t_end", "points", "v0", "random_v0", "flag_steady"}, "trajectory");
    c.t_end = get_num_or(obj, "t_end", 0.0, "trajectory");
    c.points = get_int_or(obj, "points", 400, "trajectory");
    if (c.points < 2) throw ConfigError("config: trajectory points must be >= 2");
    c.random_v0 = get_bool_or(obj, "random_v0", false, "trajectory");
    c.flag_steady = get_bool_or(obj, "flag_steady", false, "trajectory");
    if (obj.contains("v0")) {
        const json& v = obj.at("v0");
        if (!v.is_array() || v.size() != 3 || !v[0].is_number() || !v[1].is_number() ||
            !v[2].is_number())
            throw ConfigError("config: trajectory v0 must be an array of three numbers");
        c.v0 = {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
        c.has_v0 = true;
    }
    if (c.has_v0 && c.random_v0)
        throw ConfigError("config: trajectory v0 and random_v0 are mutually exclusive");
    if (!c.has_v0 && !c.random_v0)
        throw ConfigError("config: trajectory needs either v0 or random_v0");
}

void parse_strong_block(const json& obj, ScenarioConfig& c) {
    check_keys(obj, {"kind", "kappa", "kappa1", "kappa2", "omega1", "fock_cutoff"},
               "strong");
    const std::string kind = get_str_or(obj, "kind", "oscillator", "strong");
    if (kind == "oscillator")
        c.strong.kind = equilibration::ModelKind::QubitOscillator;
    else if (kind == "qubit")
        c.strong.kind = equilibration::ModelKind::QubitQubit;
    else
        throw ConfigError("config: strong kind must be \"oscillator\" or \"qubit\"");
    c.strong.omega0 = c.omega0;
    c.strong.omega1 = get_num_or(obj, "omega1", c.omega0, "strong");
    if (obj.contains("kappa")) {
        if (obj.contains("kappa1") || obj.contains("kappa2"))
            throw ConfigError("config: strong kappa excludes kappa1/kappa2");
        c.strong.kappa1 = c.strong.kappa2 = get_num(obj, "kappa", "strong");
    } else {
        c.strong.kappa1 = get_num_or(obj, "kappa1", 0.0, "strong");
        c.strong.kappa2 = get_num_or(obj, "kappa2", 0.0, "strong");
    }
    c.strong.fock_cutoff = get_int_or(obj, "fock_cutoff", 40, "strong");
}

} // namespace

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open \"" + path + "\"");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

ScenarioConfig parse_scenario(const nlohmann::json& input, const std::string& command) {
    if (!input.is_object()) throw ConfigError("config: top level must be an object");

    // Result sidecars wrap the config; unwrap so outputs re-run as inputs.
    const json* jp = &input;
    if (input.contains("config") && input.contains("command")) {
        const std::string side_cmd = input.at("command").get<std::string>();
        if (side_cmd != command)
            throw ConfigError("config: sidecar was produced by command \"" + side_cmd +
                              "\", not \"" + command + "\"");
        jp = &input.at("config");
        if (!jp->is_object()) throw ConfigError("config: sidecar config must be an object");
    }
    const json& j = *jp;

    if (!j.contains("schema_version"))
        throw ConfigError("config: missing \"schema_version\"");
    if (!j.at("schema_version").is_number_integer() ||
        j.at("schema_version").get<int>() != 1)
        throw ConfigError("config: unsupported schema_version (expected 1)");

    ScenarioConfig c;
    c.command = command;
    const char* top = "the top-level object";

    std::set<std::string> allowed = {"schema_version", "omega0"};
    if (command == "steady") {
        allowed.insert({"model", "bath", "coupling", "sweep", "optimize_f2"});
    } else if (command == "trajectory") {
        allowed.insert({"scheme", "bath", "bath2", "coupling", "trajectory"});
    } else if (command == "equilibration") {
        allowed.insert({"bath", "coupling", "sweep"});
    } else if (command == "strong-coupling") {
        allowed.insert({"strong", "sweep"});
    } else if (command == "max-coherence") {
        allowed.insert({"model", "bath", "coupling", "sweep"});
    } else {
        throw ConfigError("config: unknown command \"" + command + "\"");
    }
    check_keys(j, allowed, top);

    c.omega0 = get_num_or(j, "omega0", 1.0, top);
    if (!(c.omega0 > 0.0)) throw ConfigError("config: omega0 must be > 0");

    if (j.contains("bath")) c.bath = parse_bath(j.at("bath"), "bath");
    if (j.contains("bath2")) {
        c.bath2 = parse_bath(j.at("bath2"), "bath2");
        c.has_bath2 = true;
    }
    if (j.contains("coupling")) {
        if (!j.at("coupling").is_object())
            throw ConfigError("config: coupling must be an object");
        parse_coupling(j.at("coupling"), c);
    }

    if (command == "steady" || command == "max-coherence") {
        c.model = get_int_or(j, "model", 1, top);
        if (c.model != 1 && c.model != 2)
            throw ConfigError("config: model must be 1 or 2");
        if (!j.contains("bath")) throw ConfigError("config: missing \"bath\"");
        if (!j.contains("coupling")) throw ConfigError("config: missing \"coupling\"");
        if (c.f3 != 0.0) throw ConfigError("config: f3 is not used by this command");
    }
    if (command == "steady") {
        c.optimize_f2 = get_bool_or(j, "optimize_f2", false, top);
        if (j.contains("sweep")) parse_sweep(j.at("sweep"), c, "sweep");
    }
    if (command == "max-coherence") {
        if (!j.contains("sweep")) throw ConfigError("config: missing \"sweep\"");
        parse_sweep(j.at("sweep"), c, "sweep");
        if (c.sweep_variable != "temperature")
            throw ConfigError("config: max-coherence sweeps temperature only");
    }
    if (command == "trajectory") {
        c.scheme = get_str_or(j, "scheme", "composite", top);
        if (c.scheme != "composite" && c.scheme != "rwa" && c.scheme != "split" &&
            c.scheme != "dephasing")
            throw ConfigError(
                "config: scheme must be composite, rwa, split, or dephasing");
        if (!j.contains("bath")) throw ConfigError("config: missing \"bath\"");
        if (!j.contains("coupling")) throw ConfigError("config: missing \"coupling\"");
        if ((c.scheme == "split" || c.scheme == "dephasing") && !c.has_bath2)
            throw ConfigError("config: this scheme needs \"bath2\"");
        if (c.scheme != "split" && c.scheme != "dephasing" && c.has_bath2)
            throw ConfigError("config: \"bath2\" is only used by split and dephasing");
        if (c.f3 != 0.0 && c.scheme != "dephasing")
            throw ConfigError("config: f3 is only used by the dephasing scheme");
        if (!j.contains("trajectory"))
            throw ConfigError("config: missing \"trajectory\"");
        if (!j.at("trajectory").is_object())
            throw ConfigError("config: trajectory must be an object");
        parse_trajectory_block(j.at("trajectory"), c);
    }
    if (command == "equilibration") {
        if (!j.contains("bath")) throw ConfigError("config: missing \"bath\"");
        if (!j.contains("coupling")) throw ConfigError("config: missing \"coupling\"");
        if (c.f3 != 0.0) throw ConfigError("config: f3 is not used by this command");
        if (!j.contains("sweep")) throw ConfigError("config: missing \"sweep\"");
        parse_sweep(j.at("sweep"), c, "sweep");
        if (c.sweep_variable != "temperature")
            throw ConfigError("config: equilibration sweeps temperature only");
        c.route = "perturbative";
    }
    if (command == "strong-coupling") {
        if (!j.contains("strong")) throw ConfigError("config: missing \"strong\"");
        if (!j.at("strong").is_object())
            throw ConfigError("config: strong must be an object");
        parse_strong_block(j.at("strong"), c);
        if (!j.contains("sweep")) throw ConfigError("config: missing \"sweep\"");
        parse_sweep(j.at("sweep"), c, "sweep");
        if (c.sweep_variable != "temperature")
            throw ConfigError("config: strong-coupling sweeps temperature only");
        c.route = "strong";
    }
    return c;
}

nlohmann::json resolved_json(const ScenarioConfig& c) {
    json j;
    j["schema_version"] = 1;
    j["omega0"] = c.omega0;
    auto bath_json = [](const spectral::BathSpec& b) {
        return json{{"s", b.spectral.ohmicity},
                    {"lambda", b.spectral.lambda},
                    {"cutoff", b.spectral.cutoff},
                    {"temperature", b.temperature}};
    };
    if (c.command == "steady" || c.command == "max-coherence") {
        j["model"] = c.model;
        j["bath"] = bath_json(c.bath);
        j["coupling"] = {{"f1", c.f1}, {"f2", c.f2}};
    }
    if (c.command == "steady") {
        j["optimize_f2"] = c.optimize_f2;
        if (!c.sweep_variable.empty())
            j["sweep"] = {{"variable", c.sweep_variable}, {"values", c.sweep_values}};
    }
    if (c.command == "max-coherence" || c.command == "equilibration" ||
        c.command == "strong-coupling")
        j["sweep"] = {{"variable", c.sweep_variable}, {"values", c.sweep_values}};
    if (c.command == "trajectory") {
        j["scheme"] = c.scheme;
        j["bath"] = bath_json(c.bath);
        if (c.has_bath2) j["bath2"] = bath_json(c.bath2);
        j["coupling"] = {{"f1", c.f1}, {"f2", c.f2}, {"f3", c.f3}};
        json t;
        t["t_end"] = c.t_end;
        t["points"] = c.points;
        t["flag_steady"] = c.flag_steady;
        if (c.has_v0)
            t["v0"] = {c.v0.v1, c.v0.v2, c.v0.v3};
        else
            t["random_v0"] = true;
        j["trajectory"] = t;
    }
    if (c.command == "equilibration") {
        j["bath"] = bath_json(c.bath);
        j["coupling"] = {{"f1", c.f1}, {"f2", c.f2}};
    }
    if (c.command == "strong-coupling") {
        json s;
        s["kind"] = c.strong.kind == equilibration::ModelKind::QubitOscillator
                        ? "oscillator"
                        : "qubit";
        s["kappa1"] = c.strong.kappa1;
        s["kappa2"] = c.strong.kappa2;
        s["omega1"] = c.strong.omega1;
        s["fock_cutoff"] = c.strong.fock_cutoff;
        j["strong"] = s;
    }
    return j;
}

std::string format_csv(const ResultTable& table) {
    std::ostringstream out;
    out << "# sbc " << version << " (" << git_describe << ")\n";
    out << "# command: " << table.command << "\n";
    out << "# config: " << table.config.dump() << "\n";
    std::string header;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) header += ",";
        header += table.columns[i];
    }
    out << header << "\n";
    char buf[40];
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%.17g", row[i]);
            if (i) out << ",";
            out << buf;
        }
        out << "\n";
    }
    return out.str();
}

void write_csv(const ResultTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file \"" + path + "\"");
    out << format_csv(table);
}

nlohmann::json sidecar_json(const ResultTable& table, double wall_seconds) {
    json j;
    j["command"] = table.command;
    j["config"] = table.config;
    j["metadata"] = {{"version", version},
                     {"git", git_describe},
                     {"wall_seconds", wall_seconds},
                     {"rows", table.rows.size()}};
    return j;
}

void write_sidecar(const ResultTable& table, const std::string& path, double wall_seconds) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file \"" + path + "\"");
    out << sidecar_json(table, wall_seconds).dump(2) << "\n";
}

} // namespace sbc::io
