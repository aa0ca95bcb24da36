#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fsas/experiment.hpp"
#include "fsas/selftest.hpp"

namespace {

int env_threads() {
    if (const char* v = std::getenv("FSAS_THREADS")) {
        const int t = std::atoi(v);
        if (t > 0) return t;
    }
    return 0;  // auto
}

std::string env_output_dir() {
    if (const char* v = std::getenv("FSAS_OUTPUT_DIR")) return v;
    return {};
}

fsas::ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    fsas::ParseResult pr = fsas::parse_config(buf.str());
    if (!pr.ok()) {
        std::ostringstream msg;
        msg << "invalid config " << path << ":\n";
        for (const auto& e : pr.errors) msg << "  - " << e << "\n";
        throw std::runtime_error(msg.str());
    }
    return std::move(*pr.config);
}

std::filesystem::path resolve_outdir(const fsas::ExperimentConfig& cfg,
                                     const std::string& cli_override) {
    if (!cli_override.empty()) return cli_override;
    const std::string env = env_output_dir();
    if (!env.empty()) return env;
    return cfg.directory;
}

double parse_q_value(const std::string& s) {
    if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
    return std::stod(s);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudo-spectral toolkit for fractional stochastic active scalar "
                 "equations on the periodic torus"};
    app.require_subcommand(1);
    int threads = env_threads();
    app.add_option("--threads", threads, "worker threads (0 = auto)");

    // --- simulate -----------------------------------------------------------
    auto* sim = app.add_subcommand("simulate", "run the configured experiment");
    std::string sim_config, sim_outdir;
    std::uint64_t sim_seed = 0;
    bool sim_has_seed = false;
    sim->add_option("--config", sim_config, "JSON config file")->required();
    sim->add_option("--output", sim_outdir, "output directory (overrides config)");
    sim->add_option("--seed", sim_seed, "master seed (overrides config)")
        ->each([&](const std::string&) { sim_has_seed = true; });

    // --- sweep ---------------------------------------------------------------
    auto* sweep = app.add_subcommand("sweep", "repeat the experiment over a parameter grid");
    std::string sweep_config, sweep_outdir, sweep_param;
    std::vector<double> sweep_values;
    sweep->add_option("--config", sweep_config, "JSON config file")->required();
    sweep->add_option("--param", sweep_param, "dotted config path, e.g. equation.alpha")
        ->required();
    sweep->add_option("--values", sweep_values, "parameter values")->required()->delimiter(',');
    sweep->add_option("--output", sweep_outdir, "output directory (overrides config)");

    // --- regime ---------------------------------------------------------------
    auto* regime = app.add_subcommand("regime", "classify a well-posedness regime query");
    int rg_d = 2;
    double rg_alpha = 1.5, rg_p = 2.0, rg_delta = 0.0;
    std::string rg_q = "2", rg_q0 = "2", rg_mode = "ca";
    bool rg_json = false;
    regime->add_option("--d", rg_d, "spatial dimension")->required();
    regime->add_option("--alpha", rg_alpha, "fractional order in (0,2]")->required();
    regime->add_option("--mode", rg_mode, "constitutive category: ca, cb or cc");
    regime->add_option("--q", rg_q, "integrability index (>= 2)")->required();
    regime->add_option("--q0", rg_q0, "initial-data index (>= q or \"inf\")");
    regime->add_option("--p", rg_p, "moment order (>= 2)");
    regime->add_option("--delta", rg_delta, "initial smoothness");
    regime->add_flag("--json", rg_json, "machine-readable certificate on stdout");

    // --- selftest ---------------------------------------------------------------
    auto* selftest = app.add_subcommand("selftest", "run the acceptance criteria suite");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sim) {
            fsas::ExperimentConfig cfg = load_config(sim_config);
            if (sim_has_seed) {
                cfg.master_seed = sim_seed;
                cfg.echo["ensemble"]["master_seed"] = sim_seed;
            }
            const auto outdir = resolve_outdir(cfg, sim_outdir);
            const auto manifest = fsas::run_simulate(cfg, outdir, threads);
            std::cout << "wrote " << manifest.at("artifacts").size() << " artifacts to "
                      << outdir.string() << "\n";
            return 0;
        }
        if (*sweep) {
            fsas::ExperimentConfig cfg = load_config(sweep_config);
            const auto outdir = resolve_outdir(cfg, sweep_outdir);
            fsas::run_sweep(cfg, sweep_param, sweep_values, outdir, threads);
            std::cout << "wrote sweep.csv (" << sweep_values.size() << " points) to "
                      << outdir.string() << "\n";
            return 0;
        }
        if (*regime) {
            fsas::RegimeQuery qr;
            qr.d = rg_d;
            qr.alpha = rg_alpha;
            qr.q = parse_q_value(rg_q);
            qr.q0 = rg_q0.empty() ? qr.q : parse_q_value(rg_q0);
            qr.p = rg_p;
            qr.delta = rg_delta;
            if (rg_mode == "ca") qr.mode = fsas::ModeTag::Ca;
            else if (rg_mode == "cb") qr.mode = fsas::ModeTag::Cb;
            else if (rg_mode == "cc") qr.mode = fsas::ModeTag::Cc;
            else throw std::invalid_argument("--mode must be ca, cb or cc");
            const fsas::RegimeCertificate cert = fsas::regime_classify(qr);
            if (rg_json)
                std::cout << fsas::certificate_json(cert).dump(2) << "\n";
            else
                std::cout << cert.text();
            return 0;
        }
        if (*selftest) return fsas::selftest::run_and_report(std::cout, threads) == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
