#pragma once

#include <json.hpp>

#include <optional>
#include <string>

#include "fsas/init.hpp"
#include "fsas/integrator.hpp"
#include "fsas/regime.hpp"

namespace fsas {

// A full experiment description parsed from a JSON config file. `echo` is the
// canonical re-serialization (defaults materialized) that runs embed in their
// manifests; feeding it back to parse_config reproduces the run.
struct ExperimentConfig {
    TorusGrid grid{2, 64};
    double nu = 1.0;
    double alpha = 2.0;
    VelocityLaw law = preset("sqg");
    bool enable_nonlinear = true;
    CovarianceSpec cov;
    DiffusionSpec diff;
    double dt = 1e-3;
    double t_end = 1.0;
    bool deterministic = false;

    InitSpec init;
    int m = 1;
    std::uint64_t master_seed = 1;

    std::string directory = "out";
    int diagnostics_stride = 1;
    int snapshot_stride = 0;
    bool snapshot_spectral = false;

    std::optional<StoppingLadder> stopping;
    double diag_q = 2.0;
    double mom_beta = 0.0;
    bool track_moments = false;

    std::optional<RegimeQuery> regime;

    nlohmann::json echo;

    SolverConfig solver_config() const;
};

struct ParseResult {
    std::optional<ExperimentConfig> config;
    std::vector<std::string> errors;  // every violation, not just the first
    bool ok() const { return errors.empty() && config.has_value(); }
};

// Parses and validates a config document. Unknown keys are errors; all
// violations are collected.
ParseResult parse_config(const std::string& text);

}  // namespace fsas
