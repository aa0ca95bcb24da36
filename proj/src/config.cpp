#include "fsas/config.hpp"

#include <cmath>
#include <set>

namespace fsas {

namespace {

using nlohmann::json;

struct Reader {
    std::vector<std::string>& errors;

    void fail(const std::string& msg) { errors.push_back(msg); }

    void check_keys(const json& j, const std::string& path,
                    std::initializer_list<const char*> allowed) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            bool known = false;
            for (const char* a : allowed)
                if (it.key() == a) { known = true; break; }
            if (!known) fail("unknown key: " + path + it.key());
        }
    }

    const json* object(const json& j, const std::string& path, const char* key,
                       bool required) {
        if (!j.contains(key)) {
            if (required) fail("missing section: " + path + key);
            return nullptr;
        }
        if (!j.at(key).is_object()) {
            fail(path + key + ": must be an object");
            return nullptr;
        }
        return &j.at(key);
    }

    std::optional<double> number(const json& j, const std::string& path, const char* key,
                                 bool required, std::optional<double> def = {}) {
        if (!j.contains(key)) {
            if (required) fail("missing key: " + path + key);
            return def;
        }
        if (!j.at(key).is_number()) {
            fail(path + key + ": must be a number");
            return def;
        }
        return j.at(key).get<double>();
    }

    // A number or the string "inf".
    std::optional<double> number_or_inf(const json& j, const std::string& path,
                                        const char* key, bool required,
                                        std::optional<double> def = {}) {
        if (!j.contains(key)) {
            if (required) fail("missing key: " + path + key);
            return def;
        }
        const json& v = j.at(key);
        if (v.is_number()) return v.get<double>();
        if (v.is_string() && (v.get<std::string>() == "inf" || v.get<std::string>() == "infinity"))
            return std::numeric_limits<double>::infinity();
        fail(path + key + ": must be a number or \"inf\"");
        return def;
    }

    std::optional<long> integer(const json& j, const std::string& path, const char* key,
                                bool required, std::optional<long> def = {}) {
        if (!j.contains(key)) {
            if (required) fail("missing key: " + path + key);
            return def;
        }
        if (!j.at(key).is_number_integer()) {
            fail(path + key + ": must be an integer");
            return def;
        }
        return j.at(key).get<long>();
    }

    std::optional<bool> boolean(const json& j, const std::string& path, const char* key,
                                std::optional<bool> def = {}) {
        if (!j.contains(key)) return def;
        if (!j.at(key).is_boolean()) {
            fail(path + key + ": must be true or false");
            return def;
        }
        return j.at(key).get<bool>();
    }

    std::optional<std::string> string(const json& j, const std::string& path,
                                      const char* key, bool required,
                                      std::optional<std::string> def = {}) {
        if (!j.contains(key)) {
            if (required) fail("missing key: " + path + key);
            return def;
        }
        if (!j.at(key).is_string()) {
            fail(path + key + ": must be a string");
            return def;
        }
        return j.at(key).get<std::string>();
    }
};

json law_echo(const VelocityLaw& law) {
    json out;
    if (!law.name.empty()) {
        out["preset"] = law.name;
        if (law.name == "modified_qg") out["gamma"] = law.gamma;
        return out;
    }
    out["family"] = law.family == LawFamily::Rot ? "rot" : "loc";
    out["gamma"] = law.gamma;
    if (law.family == LawFamily::Rot) {
        json rows = json::array();
        for (int i = 0; i < law.dim; ++i) {
            json row = json::array();
            for (int j = 0; j < law.dim; ++j) row.push_back(law.S[i][j]);
            rows.push_back(row);
        }
        out["S"] = rows;
    } else {
        json sig = json::array();
        for (int i = 0; i < law.dim; ++i) sig.push_back(law.sigma[i]);
        out["sigma"] = sig;
    }
    if (!law.divergence_free())
        out["category"] = law.declared == ModeTag::Cc ? "cc" : "cb";
    return out;
}

VelocityLaw parse_law(Reader& r, const json& j, int grid_d) {
    VelocityLaw law;
    if (j.contains("preset")) {
        r.check_keys(j, "equation.law.", {"preset", "gamma"});
        const auto name = r.string(j, "equation.law.", "preset", true);
        const auto gamma = r.number(j, "equation.law.", "gamma", false, 1.0);
        if (name) {
            try {
                law = preset(*name, gamma.value_or(1.0));
            } catch (const std::exception& e) {
                r.fail(std::string("equation.law: ") + e.what());
            }
            if (*name != "modified_qg" && j.contains("gamma"))
                r.fail("equation.law.gamma: only the modified_qg preset is parametrized");
        }
        return law;
    }

    r.check_keys(j, "equation.law.", {"family", "gamma", "S", "sigma", "category"});
    law.dim = grid_d;
    const auto family = r.string(j, "equation.law.", "family", true);
    const auto gamma = r.number(j, "equation.law.", "gamma", true);
    if (gamma) {
        if (*gamma < 1.0) r.fail("equation.law.gamma: must be >= 1");
        law.gamma = *gamma;
    }
    if (family && *family == "rot") {
        law.family = LawFamily::Rot;
        if (!j.contains("S")) {
            r.fail("equation.law.S: required for the rot family");
        } else if (!j.at("S").is_array() || static_cast<int>(j.at("S").size()) != grid_d) {
            r.fail("equation.law.S: must be a d x d matrix");
        } else {
            for (int i = 0; i < grid_d; ++i) {
                const json& row = j.at("S").at(i);
                if (!row.is_array() || static_cast<int>(row.size()) != grid_d) {
                    r.fail("equation.law.S: must be a d x d matrix");
                    break;
                }
                for (int c = 0; c < grid_d; ++c) {
                    if (!row.at(c).is_number()) {
                        r.fail("equation.law.S: entries must be numbers");
                        break;
                    }
                    law.S[i][c] = row.at(c).get<double>();
                }
            }
        }
    } else if (family && *family == "loc") {
        law.family = LawFamily::Loc;
        if (!j.contains("sigma")) {
            r.fail("equation.law.sigma: required for the loc family");
        } else if (!j.at("sigma").is_array() ||
                   static_cast<int>(j.at("sigma").size()) != grid_d) {
            r.fail("equation.law.sigma: must have d entries");
        } else {
            for (int i = 0; i < grid_d; ++i) {
                if (!j.at("sigma").at(i).is_number()) {
                    r.fail("equation.law.sigma: entries must be numbers");
                    break;
                }
                law.sigma[i] = j.at("sigma").at(i).get<double>();
            }
        }
    } else if (family) {
        r.fail("equation.law.family: must be \"rot\" or \"loc\"");
    }

    const auto category = r.string(j, "equation.law.", "category", false);
    if (category) {
        if (*category == "cb")
            law.declared = ModeTag::Cb;
        else if (*category == "cc")
            law.declared = ModeTag::Cc;
        else if (*category == "ca") {
            if (!law.divergence_free())
                r.fail("equation.law.category: C_a requires an antisymmetric rot law");
        } else
            r.fail("equation.law.category: must be \"ca\", \"cb\" or \"cc\"");
    }
    return law;
}

}  // namespace

ParseResult parse_config(const std::string& text) {
    ParseResult result;
    json root;
    try {
        root = json::parse(text);
    } catch (const std::exception& e) {
        result.errors.push_back(std::string("json: ") + e.what());
        return result;
    }
    if (!root.is_object()) {
        result.errors.push_back("config: top level must be an object");
        return result;
    }

    Reader r{result.errors};
    ExperimentConfig cfg;

    r.check_keys(root, "",
                 {"grid", "equation", "noise", "time", "deterministic", "init", "ensemble",
                  "output", "stopping", "diagnostics", "regime"});

    int grid_d = 2, grid_n = 64;
    if (const json* g = r.object(root, "", "grid", true)) {
        r.check_keys(*g, "grid.", {"d", "n"});
        if (auto d = r.integer(*g, "grid.", "d", true)) {
            if (*d < 1 || *d > 3) r.fail("grid.d: must be 1, 2 or 3");
            else grid_d = static_cast<int>(*d);
        }
        if (auto n = r.integer(*g, "grid.", "n", true)) {
            if (*n < 8 || *n % 2 != 0) r.fail("grid.n: must be even and >= 8");
            else grid_n = static_cast<int>(*n);
        }
    }
    if (grid_n / 3 < 1) r.fail("grid.n: dealias band is empty");

    cfg.deterministic = r.boolean(root, "", "deterministic", false).value_or(false);

    if (const json* e = r.object(root, "", "equation", true)) {
        r.check_keys(*e, "equation.", {"nu", "alpha", "law", "enable_nonlinear"});
        if (auto nu = r.number(*e, "equation.", "nu", true)) {
            if (!(*nu > 0.0)) r.fail("equation.nu: must be > 0");
            else cfg.nu = *nu;
        }
        if (auto alpha = r.number(*e, "equation.", "alpha", true)) {
            if (!(*alpha > 0.0 && *alpha <= 2.0)) r.fail("equation.alpha: must be in (0, 2]");
            else cfg.alpha = *alpha;
        }
        cfg.enable_nonlinear = r.boolean(*e, "equation.", "enable_nonlinear", true).value_or(true);
        if (const json* l = r.object(*e, "equation.", "law", true))
            cfg.law = parse_law(r, *l, grid_d);
    }
    if (cfg.enable_nonlinear && cfg.law.dim != grid_d)
        r.fail("equation.law: dimension does not match grid.d");

    if (const json* n = r.object(root, "", "noise", !cfg.deterministic)) {
        r.check_keys(*n, "noise.", {"covariance", "diffusion"});
        if (const json* c = r.object(*n, "noise.", "covariance", true)) {
            r.check_keys(*c, "noise.covariance.", {"kind", "a", "r", "kmax"});
            const auto kind = r.string(*c, "noise.covariance.", "kind", true);
            if (kind && *kind == "identity") {
                cfg.cov.kind = CovarianceSpec::Kind::Identity;
                if (c->contains("a") || c->contains("r"))
                    r.fail("noise.covariance: a/r apply only to the powerlaw kind");
            } else if (kind && *kind == "powerlaw") {
                cfg.cov.kind = CovarianceSpec::Kind::PowerLaw;
                if (auto a = r.number(*c, "noise.covariance.", "a", false, 1.0)) {
                    if (!(*a > 0.0)) r.fail("noise.covariance.a: must be > 0");
                    else cfg.cov.a = *a;
                }
                if (auto rr = r.number(*c, "noise.covariance.", "r", false, 0.0)) {
                    if (*rr < 0.0) r.fail("noise.covariance.r: must be >= 0");
                    else cfg.cov.r = *rr;
                }
            } else if (kind) {
                r.fail("noise.covariance.kind: must be \"powerlaw\" or \"identity\"");
            }
            if (auto kmax = r.integer(*c, "noise.covariance.", "kmax", true)) {
                if (*kmax < 0 || *kmax > grid_n / 2)
                    r.fail("noise.covariance.kmax: must satisfy 0 <= kmax <= n/2");
                else cfg.cov.kmax = static_cast<int>(*kmax);
            }
        }
        if (const json* d = r.object(*n, "noise.", "diffusion", true)) {
            r.check_keys(*d, "noise.diffusion.", {"kind", "c"});
            const auto kind = r.string(*d, "noise.diffusion.", "kind", true);
            if (kind && *kind == "additive") {
                cfg.diff.kind = DiffusionSpec::Kind::Additive;
                if (d->contains("c")) r.fail("noise.diffusion.c: additive diffusion has no c");
            } else if (kind && (*kind == "linear" || *kind == "saturated")) {
                cfg.diff.kind = *kind == "linear" ? DiffusionSpec::Kind::Linear
                                                  : DiffusionSpec::Kind::Saturated;
                if (auto c = r.number(*d, "noise.diffusion.", "c", true)) {
                    if (!(*c > 0.0)) r.fail("noise.diffusion.c: must be > 0");
                    else cfg.diff.c = *c;
                }
            } else if (kind) {
                r.fail("noise.diffusion.kind: must be \"additive\", \"linear\" or \"saturated\"");
            }
        }
    }

    if (const json* t = r.object(root, "", "time", true)) {
        r.check_keys(*t, "time.", {"dt", "t_end"});
        if (auto dt = r.number(*t, "time.", "dt", true)) {
            if (!(*dt > 0.0)) r.fail("time.dt: must be > 0");
            else cfg.dt = *dt;
        }
        if (auto te = r.number(*t, "time.", "t_end", true)) {
            if (!(*te > 0.0)) r.fail("time.t_end: must be > 0");
            else cfg.t_end = *te;
        }
    }
    if (!(cfg.t_end / cfg.dt < 1e9)) r.fail("time: t_end/dt too large");

    if (const json* i = r.object(root, "", "init", true)) {
        const auto type = r.string(*i, "init.", "type", true);
        if (type && *type == "mode") {
            r.check_keys(*i, "init.", {"type", "k", "amplitude", "phase"});
            cfg.init.type = InitSpec::Type::Mode;
            if (i->contains("k")) {
                const json& kj = i->at("k");
                if (!kj.is_array() || static_cast<int>(kj.size()) != grid_d) {
                    r.fail("init.k: must have d entries");
                } else {
                    for (int axis = 0; axis < grid_d; ++axis) {
                        if (!kj.at(axis).is_number_integer()) {
                            r.fail("init.k: entries must be integers");
                            break;
                        }
                        cfg.init.k[axis] = kj.at(axis).get<int>();
                        if (std::abs(cfg.init.k[axis]) > grid_n / 2)
                            r.fail("init.k: wavenumber outside the lattice");
                    }
                }
            } else {
                r.fail("missing key: init.k");
            }
            cfg.init.amplitude = r.number(*i, "init.", "amplitude", false, 1.0).value_or(1.0);
            cfg.init.phase = r.number(*i, "init.", "phase", false, 0.0).value_or(0.0);
        } else if (type && *type == "filtered_random") {
            r.check_keys(*i, "init.",
                         {"type", "s", "q", "target_norm", "decay", "mean_zero",
                          "per_trajectory"});
            cfg.init.type = InitSpec::Type::FilteredRandom;
            cfg.init.s = r.number(*i, "init.", "s", false, 0.0).value_or(0.0);
            if (auto q = r.number_or_inf(*i, "init.", "q", false, 2.0)) {
                if (!(std::isinf(*q) || *q >= 2.0)) r.fail("init.q: must be >= 2 or \"inf\"");
                else cfg.init.q = *q;
            }
            if (auto tn = r.number(*i, "init.", "target_norm", false, 1.0)) {
                if (!(*tn > 0.0)) r.fail("init.target_norm: must be > 0");
                else cfg.init.target_norm = *tn;
            }
            cfg.init.decay = r.number(*i, "init.", "decay", false, 2.0).value_or(2.0);
            cfg.init.mean_zero = r.boolean(*i, "init.", "mean_zero", true).value_or(true);
            cfg.init.per_trajectory =
                r.boolean(*i, "init.", "per_trajectory", false).value_or(false);
        } else if (type && *type == "file") {
            r.check_keys(*i, "init.", {"type", "path"});
            cfg.init.type = InitSpec::Type::File;
            if (auto p = r.string(*i, "init.", "path", true)) cfg.init.path = *p;
        } else if (type) {
            r.fail("init.type: must be \"mode\", \"filtered_random\" or \"file\"");
        }
    }

    if (const json* e = r.object(root, "", "ensemble", false)) {
        r.check_keys(*e, "ensemble.", {"m", "master_seed"});
        if (auto m = r.integer(*e, "ensemble.", "m", false, 1)) {
            if (*m < 1) r.fail("ensemble.m: must be >= 1");
            else cfg.m = static_cast<int>(*m);
        }
        if (auto seed = r.integer(*e, "ensemble.", "master_seed", false, 1)) {
            if (*seed < 0) r.fail("ensemble.master_seed: must be >= 0");
            else cfg.master_seed = static_cast<std::uint64_t>(*seed);
        }
    }

    if (const json* o = r.object(root, "", "output", false)) {
        r.check_keys(*o, "output.",
                     {"directory", "diagnostics_stride", "snapshot_stride", "snapshot_space"});
        cfg.directory = r.string(*o, "output.", "directory", false, "out").value_or("out");
        if (auto s = r.integer(*o, "output.", "diagnostics_stride", false, 1)) {
            if (*s < 0) r.fail("output.diagnostics_stride: must be >= 0");
            else cfg.diagnostics_stride = static_cast<int>(*s);
        }
        if (auto s = r.integer(*o, "output.", "snapshot_stride", false, 0)) {
            if (*s < 0) r.fail("output.snapshot_stride: must be >= 0");
            else cfg.snapshot_stride = static_cast<int>(*s);
        }
        if (auto sp = r.string(*o, "output.", "snapshot_space", false, "physical")) {
            if (*sp == "spectral") cfg.snapshot_spectral = true;
            else if (*sp == "physical") cfg.snapshot_spectral = false;
            else r.fail("output.snapshot_space: must be \"physical\" or \"spectral\"");
        }
    }

    if (const json* s = r.object(root, "", "stopping", false)) {
        r.check_keys(*s, "stopping.", {"s", "q", "thresholds"});
        StoppingLadder ladder;
        ladder.s = r.number(*s, "stopping.", "s", false, 0.0).value_or(0.0);
        if (auto q = r.number_or_inf(*s, "stopping.", "q", false, 2.0)) {
            if (!(std::isinf(*q) || *q >= 2.0)) r.fail("stopping.q: must be >= 2 or \"inf\"");
            else ladder.q = *q;
        }
        if (!s->contains("thresholds") || !s->at("thresholds").is_array() ||
            s->at("thresholds").empty()) {
            r.fail("stopping.thresholds: must be a nonempty array");
        } else {
            double prev = 0.0;
            for (const auto& v : s->at("thresholds")) {
                if (!v.is_number()) {
                    r.fail("stopping.thresholds: entries must be numbers");
                    break;
                }
                const double rung = v.get<double>();
                if (!(rung > prev)) {
                    r.fail("stopping.thresholds: ladder not increasing");
                    break;
                }
                ladder.thresholds.push_back(rung);
                prev = rung;
            }
        }
        if (result.errors.empty()) cfg.stopping = ladder;
    }

    if (const json* d = r.object(root, "", "diagnostics", false)) {
        r.check_keys(*d, "diagnostics.", {"q", "beta", "track_moments"});
        if (auto q = r.number_or_inf(*d, "diagnostics.", "q", false, 2.0)) {
            if (!(std::isinf(*q) || *q >= 2.0)) r.fail("diagnostics.q: must be >= 2 or \"inf\"");
            else cfg.diag_q = *q;
        }
        cfg.mom_beta = r.number(*d, "diagnostics.", "beta", false, 0.0).value_or(0.0);
        cfg.track_moments = r.boolean(*d, "diagnostics.", "track_moments", false).value_or(false);
    }

    if (const json* g = r.object(root, "", "regime", false)) {
        r.check_keys(*g, "regime.", {"q", "q0", "p", "delta"});
        RegimeQuery qr;
        qr.d = grid_d;
        qr.alpha = cfg.alpha;
        qr.mode = classify_mode(cfg.law).tag;
        if (auto q = r.number(*g, "regime.", "q", true)) qr.q = *q;
        if (auto q0 = r.number_or_inf(*g, "regime.", "q0", true)) qr.q0 = *q0;
        qr.p = r.number(*g, "regime.", "p", false, 2.0).value_or(2.0);
        qr.delta = r.number(*g, "regime.", "delta", false, 0.0).value_or(0.0);
        try {
            qr.validate();
            cfg.regime = qr;
        } catch (const std::exception& e) {
            r.fail(std::string("regime: ") + e.what());
        }
    }

    if (!result.errors.empty()) return result;

    cfg.grid = TorusGrid(grid_d, grid_n);

    // Canonical echo with defaults materialized.
    json echo;
    echo["grid"] = {{"d", cfg.grid.d}, {"n", cfg.grid.n}};
    echo["equation"] = {{"nu", cfg.nu},
                        {"alpha", cfg.alpha},
                        {"law", law_echo(cfg.law)},
                        {"enable_nonlinear", cfg.enable_nonlinear}};
    json cov;
    if (cfg.cov.kind == CovarianceSpec::Kind::Identity)
        cov = {{"kind", "identity"}, {"kmax", cfg.cov.kmax}};
    else
        cov = {{"kind", "powerlaw"}, {"a", cfg.cov.a}, {"r", cfg.cov.r}, {"kmax", cfg.cov.kmax}};
    json diff;
    if (cfg.diff.kind == DiffusionSpec::Kind::Additive)
        diff = {{"kind", "additive"}};
    else
        diff = {{"kind", cfg.diff.kind == DiffusionSpec::Kind::Linear ? "linear" : "saturated"},
                {"c", cfg.diff.c}};
    echo["noise"] = {{"covariance", cov}, {"diffusion", diff}};
    echo["time"] = {{"dt", cfg.dt}, {"t_end", cfg.t_end}};
    echo["deterministic"] = cfg.deterministic;
    switch (cfg.init.type) {
        case InitSpec::Type::Mode: {
            json k = json::array();
            for (int axis = 0; axis < cfg.grid.d; ++axis) k.push_back(cfg.init.k[axis]);
            echo["init"] = {{"type", "mode"},
                            {"k", k},
                            {"amplitude", cfg.init.amplitude},
                            {"phase", cfg.init.phase}};
            break;
        }
        case InitSpec::Type::FilteredRandom:
            echo["init"] = {{"type", "filtered_random"},
                            {"s", cfg.init.s},
                            {"q", std::isinf(cfg.init.q) ? json("inf") : json(cfg.init.q)},
                            {"target_norm", cfg.init.target_norm},
                            {"decay", cfg.init.decay},
                            {"mean_zero", cfg.init.mean_zero},
                            {"per_trajectory", cfg.init.per_trajectory}};
            break;
        case InitSpec::Type::File:
            echo["init"] = {{"type", "file"}, {"path", cfg.init.path}};
            break;
    }
    echo["ensemble"] = {{"m", cfg.m}, {"master_seed", cfg.master_seed}};
    echo["output"] = {{"directory", cfg.directory},
                      {"diagnostics_stride", cfg.diagnostics_stride},
                      {"snapshot_stride", cfg.snapshot_stride},
                      {"snapshot_space", cfg.snapshot_spectral ? "spectral" : "physical"}};
    if (cfg.stopping) {
        json th = json::array();
        for (double v : cfg.stopping->thresholds) th.push_back(v);
        echo["stopping"] = {
            {"s", cfg.stopping->s},
            {"q", std::isinf(cfg.stopping->q) ? json("inf") : json(cfg.stopping->q)},
            {"thresholds", th}};
    }
    echo["diagnostics"] = {
        {"q", std::isinf(cfg.diag_q) ? json("inf") : json(cfg.diag_q)},
        {"beta", cfg.mom_beta},
        {"track_moments", cfg.track_moments}};
    if (cfg.regime)
        echo["regime"] = {
            {"q", cfg.regime->q},
            {"q0", std::isinf(cfg.regime->q0) ? json("inf") : json(cfg.regime->q0)},
            {"p", cfg.regime->p},
            {"delta", cfg.regime->delta}};
    cfg.echo = std::move(echo);

    result.config = std::move(cfg);
    return result;
}

SolverConfig ExperimentConfig::solver_config() const {
    SolverConfig sc;
    sc.grid = grid;
    sc.nu = nu;
    sc.alpha = alpha;
    sc.law = law;
    sc.cov = cov;
    sc.diff = diff;
    sc.dt = dt;
    sc.t_end = t_end;
    sc.deterministic = deterministic;
    sc.enable_nonlinear = enable_nonlinear;
    sc.stopping = stopping;
    sc.diag_q = diag_q;
    sc.mom_beta = mom_beta;
    sc.track_moments = track_moments;
    sc.diagnostics_stride = diagnostics_stride;
    sc.snapshot_stride = snapshot_stride;
    return sc;
}

}  // namespace fsas
