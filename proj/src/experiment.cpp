#include "fsas/experiment.hpp"

#include <cmath>
#include <fstream>
#include <map>

namespace fsas {

namespace {

using nlohmann::json;

std::string index_tag(int idx) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d", idx);
    return buf;
}

std::string step_tag(long step) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%06ld", step);
    return buf;
}

struct ArtifactList {
    std::filesystem::path dir;
    std::vector<std::pair<std::string, std::filesystem::path>> entries;

    void add(const std::string& rel) { entries.emplace_back(rel, dir / rel); }

    json to_json() const {
        json arr = json::array();
        for (const auto& [rel, full] : entries) {
            json e;
            e["path"] = rel;
            e["bytes"] = static_cast<std::uint64_t>(std::filesystem::file_size(full));
            e["digest"] = file_digest(full);
            arr.push_back(e);
        }
        return arr;
    }
};

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

json ensemble_json(const EnsembleReport& rep) {
    json out;
    out["m"] = rep.m;
    out["valid_count"] = rep.valid_count;
    out["q"] = std::isinf(rep.q) ? json("inf") : json(rep.q);
    out["beta"] = rep.beta;
    out["master_seed"] = rep.master_seed;
    out["sup_pow_q_mean"] = rep.sup_pow_q_mean;
    out["sup_pow_q_sd"] = rep.sup_pow_q_sd;
    out["int_h_mean"] = rep.int_h_mean;
    out["int_h_sd"] = rep.int_h_sd;
    out["stopped_fraction"] = rep.stopped_fraction;
    return out;
}

json manifest_skeleton(const ExperimentConfig& cfg) {
    json m;
    m["format"] = "fsas-manifest 1";
    m["tool_version"] = kToolVersion;
    m["master_seed"] = cfg.master_seed;
    m["config"] = cfg.echo;
    return m;
}

}  // namespace

json certificate_json(const RegimeCertificate& cert) {
    json out;
    out["query"] = {{"d", cert.query.d},
                    {"alpha", cert.query.alpha},
                    {"mode", mode_name(cert.query.mode)},
                    {"q", cert.query.q},
                    {"q0", std::isinf(cert.query.q0) ? json("inf") : json(cert.query.q0)},
                    {"p", cert.query.p},
                    {"delta", cert.query.delta}};
    auto verdict = [](const Verdict& v) {
        json j;
        j["granted"] = v.granted;
        if (v.granted) j["clause"] = v.clause;
        return j;
    };
    out["global_mild"] = verdict(cert.global_mild);
    out["local_mild"] = verdict(cert.local_mild);
    out["martingale"] = verdict(cert.martingale);
    if (cert.martingale.granted) out["martingale_extended"] = cert.martingale_extended;
    json exps;
    if (cert.beta_max) {
        exps["beta_max"] = *cert.beta_max;
        exps["beta_nonpositive"] = cert.beta_nonpositive;
    }
    if (cert.delta1_max) exps["delta1_max"] = *cert.delta1_max;
    if (cert.delta_prime_min) exps["delta_prime_min"] = *cert.delta_prime_min;
    if (cert.eta_min) exps["eta_min"] = *cert.eta_min;
    if (cert.delta_dprime_min) exps["delta_dprime_min"] = *cert.delta_dprime_min;
    out["exponents"] = exps;
    out["notes"] = cert.notes;
    return out;
}

json run_simulate(const ExperimentConfig& cfg, const std::filesystem::path& outdir,
                  int threads) {
    std::filesystem::create_directories(outdir);
    ArtifactList artifacts{outdir, {}};

    SolverConfig sc = cfg.solver_config();
    sc.validate();

    // Fixed initial data is drawn once from stream id 0; per-trajectory random
    // data is redrawn from each trajectory's own stream.
    std::function<SpectralField(RngStream&)> theta0_gen;
    if (cfg.init.type == InitSpec::Type::FilteredRandom && cfg.init.per_trajectory) {
        const InitSpec init = cfg.init;
        const TorusGrid grid = cfg.grid;
        theta0_gen = [init, grid](RngStream& rng) { return make_initial(init, grid, rng); };
    } else {
        RngStream init_rng(cfg.master_seed, 0);
        SpectralField theta0 = make_initial(cfg.init, cfg.grid, init_rng);
        theta0_gen = [theta0](RngStream&) { return theta0; };
    }

    // Workers buffer their outputs; everything is written in trajectory-index
    // order after the run.
    std::map<int, Trajectory> buffered;
    std::mutex buffer_mtx;
    TrajectorySink sink;
    if (cfg.diagnostics_stride > 0 || cfg.snapshot_stride > 0)
        sink = [&](int idx, Trajectory&& traj) {
            std::lock_guard<std::mutex> lock(buffer_mtx);
            buffered.emplace(idx, std::move(traj));
        };

    const EnsembleReport report =
        run_ensemble(theta0_gen, sc, cfg.m, cfg.master_seed, threads, sink);

    for (const auto& [idx, traj] : buffered) {
        if (cfg.diagnostics_stride > 0) {
            const std::string name =
                cfg.m == 1 ? "diagnostics.csv" : "diagnostics_" + index_tag(idx) + ".csv";
            write_diagnostics_csv(outdir / name, traj.rows);
            artifacts.add(name);
        }
        for (const auto& [step, field] : traj.snapshots) {
            const std::string name =
                (cfg.m == 1 ? "snapshot_" : "snapshot_" + index_tag(idx) + "_") +
                step_tag(step) + ".snap";
            const double t = traj.t0 + static_cast<double>(step) * traj.dt;
            if (cfg.snapshot_spectral)
                write_snapshot(outdir / name, field, t);
            else
                write_snapshot(outdir / name, to_physical(field), t);
            artifacts.add(name);
        }
    }

    write_text(outdir / "ensemble.json", ensemble_json(report).dump(2) + "\n");
    artifacts.add("ensemble.json");

    if (cfg.regime) {
        const RegimeCertificate cert = regime_classify(*cfg.regime);
        write_text(outdir / "regime.json", certificate_json(cert).dump(2) + "\n");
        artifacts.add("regime.json");
        write_text(outdir / "regime.txt", cert.text());
        artifacts.add("regime.txt");
    }

    json manifest = manifest_skeleton(cfg);
    manifest["command"] = "simulate";
    manifest["artifacts"] = artifacts.to_json();
    write_text(outdir / "manifest.json", manifest.dump(2) + "\n");
    return manifest;
}

json run_sweep(const ExperimentConfig& cfg, const std::string& parameter,
               const std::vector<double>& values, const std::filesystem::path& outdir,
               int threads) {
    if (values.empty()) throw std::invalid_argument("run_sweep: no parameter values");
    std::filesystem::create_directories(outdir);
    ArtifactList artifacts{outdir, {}};

    std::string pointer = "/" + parameter;
    for (auto& c : pointer)
        if (c == '.') c = '/';

    std::ofstream csv(outdir / "sweep.csv", std::ios::binary);
    if (!csv) throw std::runtime_error("run_sweep: cannot open sweep.csv");
    csv << "parameter,value,m,valid_count,stopped_fraction,sup_pow_q_mean,int_h_mean\n";

    for (double value : values) {
        json doc = cfg.echo;
        try {
            doc.at(json::json_pointer(pointer)) = value;
        } catch (const std::exception&) {
            throw std::invalid_argument("run_sweep: no such parameter: " + parameter);
        }
        ParseResult pr = parse_config(doc.dump());
        if (!pr.ok()) {
            std::string msg = "run_sweep: invalid point " + parameter + "=" +
                              format_g17(value) + ":";
            for (const auto& e : pr.errors) msg += " " + e;
            throw std::invalid_argument(msg);
        }
        ExperimentConfig point = std::move(*pr.config);
        SolverConfig sc = point.solver_config();
        sc.diagnostics_stride = 0;  // summary rows only
        sc.snapshot_stride = 0;
        sc.validate();

        std::function<SpectralField(RngStream&)> theta0_gen;
        if (point.init.type == InitSpec::Type::FilteredRandom && point.init.per_trajectory) {
            const InitSpec init = point.init;
            const TorusGrid grid = point.grid;
            theta0_gen = [init, grid](RngStream& rng) { return make_initial(init, grid, rng); };
        } else {
            RngStream init_rng(point.master_seed, 0);
            SpectralField theta0 = make_initial(point.init, point.grid, init_rng);
            theta0_gen = [theta0](RngStream&) { return theta0; };
        }
        const EnsembleReport rep =
            run_ensemble(theta0_gen, sc, point.m, point.master_seed, threads);
        csv << parameter << ',' << format_g17(value) << ',' << rep.m << ','
            << rep.valid_count << ',' << format_g17(rep.stopped_fraction) << ','
            << format_g17(rep.sup_pow_q_mean) << ',' << format_g17(rep.int_h_mean) << '\n';
    }
    csv.close();
    artifacts.add("sweep.csv");

    json manifest = manifest_skeleton(cfg);
    manifest["command"] = "sweep";
    manifest["parameter"] = parameter;
    manifest["values"] = values;
    manifest["artifacts"] = artifacts.to_json();
    write_text(outdir / "manifest.json", manifest.dump(2) + "\n");
    return manifest;
}

}  // namespace fsas
