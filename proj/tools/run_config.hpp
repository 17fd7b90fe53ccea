#pragma once

#include "gaucoll/collision_model.hpp"
#include "gaucoll/types.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace gaucoll::cli {

struct SweepRange {
    std::string variable; // lambda-s | lambda-e | nu-e | theta0-thermal
    double start = 0.0;
    double stop = 0.0;
    int steps = 1;

    double value_at(int i) const;
    static SweepRange parse(const std::string& text); // var=start:stop:steps
};

/// One fully-resolved invocation of a subcommand. The canonical serialization
/// covers the result-defining fields only; execution details (jobs, output
/// path) deliberately stay outside so identical configs yield identical
/// bytes at any parallelism degree.
struct RunConfig {
    std::string command = "evolve"; // evolve | kernel | divisibility | stability
    std::string model = "bs";       // bs | tms | general
    double lambda_s = 0.5;
    double lambda_e = 0.0;
    double nu_e = 0.0;
    int n_max = 50;
    double theta0_thermal = 20.0;
    bool epsilon_vacuum = true;
    std::string blocks_path; // general-model block file
    std::string format;      // csv | json (empty -> per-command default)
    std::vector<SweepRange> sweeps;
    double tol = kPosTol;

    // execution details, not part of the canonical form
    std::string out_path; // empty -> stdout
    int jobs = 1;

    void validate() const;           // throws ConfigError
    std::string resolved_format() const;

    nlohmann::json to_json() const;
    static RunConfig from_json(const nlohmann::json& j);
    std::string canonical() const; // single-line sorted-key dump

    /// Builds the model for this configuration (sweep overrides applied by
    /// the caller through apply_variable).
    ModelSpec make_spec() const;
};

/// Applies a sweep variable to a configuration copy.
void apply_variable(RunConfig& cfg, const std::string& variable, double value);

/// Parses the general-model block file: row-major matrices A..J plus
/// epsilon and theta0.
ModelSpec load_general_model(const std::string& path);

} // namespace gaucoll::cli
