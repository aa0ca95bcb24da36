#pragma once

#include <filesystem>

#include "fsas/analysis.hpp"
#include "fsas/config.hpp"
#include "fsas/io.hpp"

namespace fsas {

inline constexpr const char* kToolVersion = "fsas 0.1.0";

// Runs the configured experiment and writes diagnostics CSVs, snapshot files,
// an ensemble summary, an optional regime certificate and a manifest listing
// every artifact with its digest. Returns the manifest.
nlohmann::json run_simulate(const ExperimentConfig& cfg,
                            const std::filesystem::path& outdir, int threads);

// Repeats the experiment over a parameter grid (dotted config path, e.g.
// "equation.alpha") and writes one summary row per point to sweep.csv.
nlohmann::json run_sweep(const ExperimentConfig& cfg, const std::string& parameter,
                         const std::vector<double>& values,
                         const std::filesystem::path& outdir, int threads);

nlohmann::json certificate_json(const RegimeCertificate& cert);

}  // namespace fsas
