#include "commands.hpp"
#include "run_config.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

using gaucoll::cli::RunConfig;
using gaucoll::cli::SweepRange;

struct FlagCapture {
    double lambda_s = 0.0;
    double lambda_e = 0.0;
    double nu_e = 0.0;
    int n_max = 0;
    double theta0_thermal = 0.0;
    bool epsilon_vacuum = false;
    std::string model;
    std::string blocks;
    std::string out;
    std::string format;
    std::vector<std::string> sweeps;
    int jobs = 0;
    double tol = 0.0;
    std::string config_path;
};

void add_common_options(CLI::App* cmd, FlagCapture& flags) {
    cmd->add_option("--config", flags.config_path,
                    "JSON config file; explicit flags override it");
    cmd->add_option("--model", flags.model, "bs | tms | general");
    cmd->add_option("--lambda-s", flags.lambda_s,
                    "system-ancilla beam-splitter angle");
    cmd->add_option("--lambda-e", flags.lambda_e,
                    "ancilla-ancilla beam-splitter angle (model bs)");
    cmd->add_option("--nu-e", flags.nu_e,
                    "ancilla-ancilla squeezing strength (model tms)");
    cmd->add_option("--n-max", flags.n_max, "number of collisions");
    cmd->add_option("--theta0-thermal", flags.theta0_thermal,
                    "initial system occupation (thermal state)");
    cmd->add_flag("--epsilon-vacuum", flags.epsilon_vacuum,
                  "ancillas start in the vacuum (default)");
    cmd->add_option("--blocks", flags.blocks,
                    "JSON file with general-model blocks A..J, epsilon, theta0");
    cmd->add_option("--out", flags.out, "output path (default stdout)");
    cmd->add_option("--format", flags.format, "csv | json");
    cmd->add_option("--sweep", flags.sweeps,
                    "var=start:stop:steps (repeatable, up to 2 variables)");
    cmd->add_option("--jobs", flags.jobs,
                    "worker count (default $GAUCOLL_JOBS or 1)");
    cmd->add_option("--tol", flags.tol, "validity tolerance override");
}

RunConfig build_config(const CLI::App& cmd, const FlagCapture& flags,
                       const std::string& command) {
    RunConfig cfg;
    cfg.command = command;
    if (!flags.config_path.empty()) {
        std::ifstream in(flags.config_path);
        if (!in) {
            throw gaucoll::ConfigError("cannot open config file '" +
                                       flags.config_path + "'");
        }
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw gaucoll::ConfigError(std::string("config file: ") + e.what());
        }
        cfg = RunConfig::from_json(j);
        cfg.command = command;
    }
    if (const char* env_jobs = std::getenv("GAUCOLL_JOBS")) {
        try {
            cfg.jobs = std::stoi(env_jobs);
        } catch (const std::exception&) {
            throw gaucoll::ConfigError("GAUCOLL_JOBS is not an integer");
        }
    }
    if (cmd.count("--model")) cfg.model = flags.model;
    if (cmd.count("--lambda-s")) cfg.lambda_s = flags.lambda_s;
    if (cmd.count("--lambda-e")) cfg.lambda_e = flags.lambda_e;
    if (cmd.count("--nu-e")) cfg.nu_e = flags.nu_e;
    if (cmd.count("--n-max")) cfg.n_max = flags.n_max;
    if (cmd.count("--theta0-thermal")) cfg.theta0_thermal = flags.theta0_thermal;
    if (cmd.count("--epsilon-vacuum")) cfg.epsilon_vacuum = true;
    if (cmd.count("--blocks")) cfg.blocks_path = flags.blocks;
    if (cmd.count("--out")) cfg.out_path = flags.out;
    if (cmd.count("--format")) cfg.format = flags.format;
    if (cmd.count("--jobs")) cfg.jobs = flags.jobs;
    if (cmd.count("--tol")) cfg.tol = flags.tol;
    if (cmd.count("--sweep")) {
        cfg.sweeps.clear();
        for (const auto& text : flags.sweeps) {
            cfg.sweeps.push_back(SweepRange::parse(text));
        }
    }
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gaussian collisional model simulator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(gaucoll::kVersion));

    FlagCapture flags;
    CLI::App* evolve = app.add_subcommand(
        "evolve", "occupation, mutual information and state blocks per step");
    CLI::App* kernel = app.add_subcommand(
        "kernel", "memory-kernel coefficients per step");
    CLI::App* divisibility = app.add_subcommand(
        "divisibility", "CP-divisibility monotone over all (n, m) pairs");
    CLI::App* stability = app.add_subcommand(
        "stability", "spectrum, GAS classification and fixed point");
    for (CLI::App* cmd : {evolve, kernel, divisibility, stability}) {
        add_common_options(cmd, flags);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e); // --help / --version
        }
        app.exit(e);
        return 2;
    }

    try {
        CLI::App* active = app.get_subcommands().front();
        const RunConfig cfg = build_config(*active, flags, active->get_name());
        cfg.validate();
        gaucoll::cli::emit(cfg, gaucoll::cli::run_command(cfg));
        return 0;
    } catch (const gaucoll::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const gaucoll::ResourceError& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
