#include "run_config.hpp"

#include "gaucoll/symplectic.hpp"

#include <fstream>
#include <set>

namespace gaucoll::cli {

namespace {

const std::set<std::string> kCommands = {"evolve", "kernel", "divisibility",
                                         "stability"};
const std::set<std::string> kModels = {"bs", "tms", "general"};

Mat matrix_from_json(const nlohmann::json& rows, const std::string& name) {
    if (!rows.is_array() || rows.empty() || !rows.front().is_array()) {
        throw ConfigError("block '" + name + "' must be a 2D array");
    }
    const auto n_rows = rows.size();
    const auto n_cols = rows.front().size();
    Mat out(static_cast<Eigen::Index>(n_rows), static_cast<Eigen::Index>(n_cols));
    for (std::size_t i = 0; i < n_rows; ++i) {
        if (!rows[i].is_array() || rows[i].size() != n_cols) {
            throw ConfigError("block '" + name + "' has ragged rows");
        }
        for (std::size_t j = 0; j < n_cols; ++j) {
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                rows[i][j].get<double>();
        }
    }
    return out;
}

} // namespace

double SweepRange::value_at(int i) const {
    if (steps <= 1) {
        return start;
    }
    return start + (stop - start) * static_cast<double>(i) /
                       static_cast<double>(steps - 1);
}

SweepRange SweepRange::parse(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
        throw ConfigError("sweep must look like var=start:stop:steps, got '" +
                          text + "'");
    }
    SweepRange range;
    range.variable = text.substr(0, eq);
    const std::string spec = text.substr(eq + 1);
    const auto c1 = spec.find(':');
    const auto c2 = spec.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
        throw ConfigError("sweep must look like var=start:stop:steps, got '" +
                          text + "'");
    }
    try {
        range.start = std::stod(spec.substr(0, c1));
        range.stop = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
        range.steps = std::stoi(spec.substr(c2 + 1));
    } catch (const std::exception&) {
        throw ConfigError("could not parse sweep '" + text + "'");
    }
    if (range.steps < 1) {
        throw ConfigError("sweep steps must be >= 1");
    }
    return range;
}

void RunConfig::validate() const {
    if (!kCommands.count(command)) {
        throw ConfigError("unknown command '" + command + "'");
    }
    if (!kModels.count(model)) {
        throw ConfigError("unknown model '" + model + "'");
    }
    if (!format.empty() && format != "csv" && format != "json") {
        throw ConfigError("format must be csv or json");
    }
    if (n_max < 0) {
        throw ConfigError("n-max must be non-negative");
    }
    if (command == "divisibility" && n_max < 2) {
        throw ConfigError("divisibility needs n-max >= 2");
    }
    if (theta0_thermal < 0.0) {
        throw ConfigError("theta0-thermal must be non-negative");
    }
    if (jobs < 1) {
        throw ConfigError("jobs must be >= 1");
    }
    if (tol <= 0.0) {
        throw ConfigError("tol must be positive");
    }
    if (model == "general" && blocks_path.empty()) {
        throw ConfigError("model=general requires --blocks <file>");
    }
    if (!epsilon_vacuum && model != "general") {
        throw ConfigError("named models support vacuum ancillas only; supply "
                          "epsilon through a general block file");
    }
    if (sweeps.size() > 2) {
        throw ConfigError("at most two sweep variables are supported");
    }
    for (const auto& sweep : sweeps) {
        const std::string& v = sweep.variable;
        const bool common = v == "lambda-s" || v == "theta0-thermal";
        const bool ok = (model == "bs" && (common || v == "lambda-e")) ||
                        (model == "tms" && (common || v == "nu-e"));
        if (!ok) {
            throw ConfigError("sweep variable '" + v +
                              "' is not available for model '" + model + "'");
        }
    }
}

std::string RunConfig::resolved_format() const {
    if (!format.empty()) {
        return format;
    }
    return command == "stability" ? "json" : "csv";
}

nlohmann::json RunConfig::to_json() const {
    nlohmann::json j;
    j["command"] = command;
    j["model"] = model;
    j["lambda_s"] = lambda_s;
    j["lambda_e"] = lambda_e;
    j["nu_e"] = nu_e;
    j["n_max"] = n_max;
    j["theta0_thermal"] = theta0_thermal;
    j["epsilon_vacuum"] = epsilon_vacuum;
    j["blocks"] = blocks_path;
    j["format"] = resolved_format();
    j["tol"] = tol;
    nlohmann::json sweeps_json = nlohmann::json::array();
    for (const auto& sweep : sweeps) {
        sweeps_json.push_back({{"variable", sweep.variable},
                               {"start", sweep.start},
                               {"stop", sweep.stop},
                               {"steps", sweep.steps}});
    }
    j["sweeps"] = sweeps_json;
    return j;
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
    RunConfig cfg;
    const std::set<std::string> known = {
        "command", "model",  "lambda_s", "lambda_e", "nu_e",
        "n_max",   "theta0_thermal",     "epsilon_vacuum",
        "blocks",  "format", "tol",      "sweeps",   "jobs",
        "out"};
    for (const auto& [key, value] : j.items()) {
        if (!known.count(key)) {
            throw ConfigError("unknown config key '" + key + "'");
        }
        (void)value;
    }
    if (j.contains("command")) cfg.command = j["command"].get<std::string>();
    if (j.contains("model")) cfg.model = j["model"].get<std::string>();
    if (j.contains("lambda_s")) cfg.lambda_s = j["lambda_s"].get<double>();
    if (j.contains("lambda_e")) cfg.lambda_e = j["lambda_e"].get<double>();
    if (j.contains("nu_e")) cfg.nu_e = j["nu_e"].get<double>();
    if (j.contains("n_max")) cfg.n_max = j["n_max"].get<int>();
    if (j.contains("theta0_thermal"))
        cfg.theta0_thermal = j["theta0_thermal"].get<double>();
    if (j.contains("epsilon_vacuum"))
        cfg.epsilon_vacuum = j["epsilon_vacuum"].get<bool>();
    if (j.contains("blocks")) cfg.blocks_path = j["blocks"].get<std::string>();
    if (j.contains("format")) cfg.format = j["format"].get<std::string>();
    if (j.contains("tol")) cfg.tol = j["tol"].get<double>();
    if (j.contains("jobs")) cfg.jobs = j["jobs"].get<int>();
    if (j.contains("out")) cfg.out_path = j["out"].get<std::string>();
    if (j.contains("sweeps")) {
        for (const auto& s : j["sweeps"]) {
            SweepRange range;
            range.variable = s.at("variable").get<std::string>();
            range.start = s.at("start").get<double>();
            range.stop = s.at("stop").get<double>();
            range.steps = s.at("steps").get<int>();
            cfg.sweeps.push_back(range);
        }
    }
    return cfg;
}

std::string RunConfig::canonical() const {
    return to_json().dump();
}

ModelSpec RunConfig::make_spec() const {
    if (model == "general") {
        return load_general_model(blocks_path);
    }
    const Mat theta0 = thermal_cm(theta0_thermal);
    const Mat epsilon = vacuum_cm();
    if (model == "bs") {
        return ModelSpec::beam_splitter(lambda_s, lambda_e, theta0, epsilon);
    }
    return ModelSpec::two_mode_squeezer(lambda_s, nu_e, theta0, epsilon);
}

void apply_variable(RunConfig& cfg, const std::string& variable, double value) {
    if (variable == "lambda-s") {
        cfg.lambda_s = value;
    } else if (variable == "lambda-e") {
        cfg.lambda_e = value;
    } else if (variable == "nu-e") {
        cfg.nu_e = value;
    } else if (variable == "theta0-thermal") {
        cfg.theta0_thermal = value;
    } else {
        throw ConfigError("unknown sweep variable '" + variable + "'");
    }
}

ModelSpec load_general_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open blocks file '" + path + "'");
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("blocks file '" + path + "': " + e.what());
    }
    for (const char* key : {"A", "B", "C", "D", "E", "F", "G", "J", "epsilon",
                            "theta0"}) {
        if (!j.contains(key)) {
            throw ConfigError("blocks file is missing '" + std::string(key) +
                              "'");
        }
    }
    try {
        return ModelSpec::general(
            matrix_from_json(j["A"], "A"), matrix_from_json(j["B"], "B"),
            matrix_from_json(j["C"], "C"), matrix_from_json(j["D"], "D"),
            matrix_from_json(j["E"], "E"), matrix_from_json(j["F"], "F"),
            matrix_from_json(j["G"], "G"), matrix_from_json(j["J"], "J"),
            matrix_from_json(j["theta0"], "theta0"),
            matrix_from_json(j["epsilon"], "epsilon"));
    } catch (const ShapeError& e) {
        throw ConfigError(std::string("blocks file: ") + e.what());
    }
}

} // namespace gaucoll::cli
