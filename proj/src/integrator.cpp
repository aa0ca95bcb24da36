#include "fsas/integrator.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

#include "fsas/operators.hpp"
#include "fsas/transform.hpp"

namespace fsas {

void StoppingLadder::validate() const {
    if (thresholds.empty())
        throw std::invalid_argument("StoppingLadder: no thresholds");
    double prev = 0.0;
    for (double r : thresholds) {
        if (!(r > prev))
            throw std::invalid_argument("StoppingLadder: thresholds must be positive and strictly increasing");
        prev = r;
    }
    if (!(std::isinf(q) || q >= 2.0))
        throw std::invalid_argument("StoppingLadder: q must be >= 2 or infinity");
}

void SolverConfig::validate() const {
    if (!(nu > 0.0)) throw std::invalid_argument("SolverConfig: nu must be > 0");
    if (!(alpha > 0.0 && alpha <= 2.0))
        throw std::invalid_argument("SolverConfig: alpha must be in (0, 2]");
    if (!(dt > 0.0)) throw std::invalid_argument("SolverConfig: dt must be > 0");
    if (!(t_end > 0.0)) throw std::invalid_argument("SolverConfig: t_end must be > 0");
    const double steps = t_end / dt;
    if (!(steps < 1e9)) throw std::invalid_argument("SolverConfig: t_end/dt too large");
    if (enable_nonlinear && law.dim != grid.d)
        throw std::invalid_argument("SolverConfig: law dimension does not match grid");
    if (!(std::isinf(diag_q) || diag_q >= 2.0))
        throw std::invalid_argument("SolverConfig: diag_q must be >= 2 or infinity");
    if (diagnostics_stride < 0 || snapshot_stride < 0)
        throw std::invalid_argument("SolverConfig: strides must be >= 0");
    if (!deterministic && (cov.kmax < 0 || cov.kmax > grid.n / 2))
        throw std::invalid_argument("SolverConfig: covariance kmax must lie in [0, n/2]");
    if (stopping) stopping->validate();
}

long SolverConfig::num_steps() const { return std::llround(t_end / dt); }

Stepper::Stepper(const SolverConfig& cfg) : cfg_(cfg) {
    cfg_.validate();
    const TorusGrid& grid = cfg_.grid;
    const std::size_t N = grid.size();
    lambda_.resize(N);
    semigroup_.resize(N);
    drift_w_.resize(N);
    keep_.resize(N);
    const int kcut = dealias_limit(grid);
    for (std::size_t i = 0; i < N; ++i) {
        const double k2 = grid.k_squared(i);
        const double lam = k2 == 0.0 ? 0.0 : cfg_.nu * std::pow(k2, 0.5 * cfg_.alpha);
        lambda_[i] = lam;
        semigroup_[i] = std::exp(-lam * cfg_.dt);
        drift_w_[i] = cfg_.dt * phi1(lam * cfg_.dt);
        const auto k = grid.wavevector(i);
        bool keep = true;
        for (int axis = 0; axis < grid.d; ++axis)
            if (std::abs(k[axis]) > kcut) { keep = false; break; }
        keep_[i] = keep ? 1 : 0;
    }
    if (cfg_.enable_nonlinear) drift_.emplace(grid, cfg_.law);
}

double Stepper::dissipation_sq(const SpectralField& theta) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < lambda_.size(); ++i)
        acc += (lambda_[i] / cfg_.nu) * std::norm(theta.coeffs[i]);
    return acc;
}

bool Stepper::advance(TrajectoryState& state, Terms* terms) {
    const TorusGrid& grid = cfg_.grid;
    const std::size_t N = grid.size();

    SpectralField b_hat;
    bool have_b = false;
    if (cfg_.enable_nonlinear) {
        try {
            b_hat = (*drift_)(state.theta);
        } catch (const OverflowError&) {
            return false;
        }
        have_b = true;
    }

    SpectralField noise_hat;
    bool have_noise = false;
    if (!cfg_.deterministic) {
        NoiseIncrement dw = sample_increment(cfg_.cov, grid, cfg_.dt, state.rng);
        SpectralField z_hat;
        if (cfg_.diff.additive()) {
            z_hat = std::move(dw.field);
        } else {
            const PhysicalField th = to_physical(state.theta);
            const PhysicalField w = to_physical(dw.field);
            PhysicalField z(grid);
            for (std::size_t i = 0; i < N; ++i) {
                z.values[i] = cfg_.diff.g(th.values[i]) * w.values[i];
                if (!std::isfinite(z.values[i])) return false;
            }
            z_hat = to_spectral(z);
        }
        noise_hat = SpectralField(grid);
        for (std::size_t i = 0; i < N; ++i)
            noise_hat.coeffs[i] = keep_[i] ? semigroup_[i] * z_hat.coeffs[i] : 0.0;
        have_noise = true;
    }

    SpectralField next(grid);
    bool finite = true;
    for (std::size_t i = 0; i < N; ++i) {
        std::complex<double> c = semigroup_[i] * state.theta.coeffs[i];
        if (have_b) c += drift_w_[i] * b_hat.coeffs[i];
        if (have_noise) c += noise_hat.coeffs[i];
        c = keep_[i] ? c : 0.0;
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) { finite = false; break; }
        next.coeffs[i] = c;
    }
    if (!finite) return false;

    state.theta = std::move(next);
    state.t += cfg_.dt;
    state.step += 1;
    if (terms) {
        terms->b_hat = std::move(b_hat);
        terms->noise_hat = std::move(noise_hat);
        terms->have_b = have_b;
        terms->have_noise = have_noise;
    }
    return true;
}

TrajectoryState step(const TrajectoryState& state, const SolverConfig& cfg) {
    Stepper stepper(cfg);
    TrajectoryState next = state;
    if (!stepper.advance(next))
        throw OverflowError("step: non-finite result at step " + std::to_string(state.step));
    return next;
}

namespace {

struct ProbeIndex {
    std::vector<std::size_t> flat;
};

ProbeIndex probe_flat_indices(const TorusGrid& grid,
                              const std::vector<std::array<int, 3>>& modes) {
    ProbeIndex pi;
    for (const auto& k : modes) {
        std::size_t idx = 0;
        for (int axis = 0; axis < grid.d; ++axis) {
            const int kk = k[axis];
            if (kk < -grid.n / 2 + 1 || kk > grid.n / 2)
                throw std::invalid_argument("probe mode outside the active lattice");
            idx = idx * grid.n + static_cast<std::size_t>((kk + grid.n) % grid.n);
        }
        pi.flat.push_back(idx);
    }
    return pi;
}

}  // namespace

Trajectory run_trajectory(TrajectoryState initial, const SolverConfig& cfg) {
    cfg.validate();
    if (!(initial.theta.grid == cfg.grid))
        throw std::invalid_argument("run_trajectory: state grid does not match config");
    initial.theta = dealias(initial.theta);

    const double dt = cfg.dt;
    const long remaining = std::llround((cfg.t_end - initial.t) / dt);

    Trajectory traj;
    traj.t0 = initial.t;
    traj.dt = dt;
    traj.ladder = cfg.stopping;
    if (cfg.stopping) traj.hit_times.assign(cfg.stopping->thresholds.size(), std::nullopt);

    traj.probe_modes = cfg.probe_modes;
    ProbeIndex probes = probe_flat_indices(cfg.grid, cfg.probe_modes);
    traj.probe_theta.resize(probes.flat.size());
    traj.probe_b.resize(probes.flat.size());
    traj.probe_noise.resize(probes.flat.size());

    Stepper stepper(cfg);
    TrajectoryState state = std::move(initial);

    double energy_residual = 0.0;
    double noise_energy = 0.0;
    double e_prev = 0.5 * l2_norm(state.theta) * l2_norm(state.theta);
    double lq = sobolev_norm(state.theta, 0.0, cfg.diag_q);
    traj.sup_lq = lq;
    double hb_prev = cfg.track_moments
                         ? (cfg.mom_beta == 0.0 ? lq : sobolev_norm(state.theta, cfg.mom_beta, cfg.diag_q))
                         : 0.0;

    auto record_row = [&](const TrajectoryState& s) {
        DiagnosticsRow row;
        row.step = s.step;
        row.t = s.t;
        row.l2 = l2_norm(s.theta);
        row.lq = lq;
        row.h_alpha2 = sobolev_norm(s.theta, 0.5 * cfg.alpha, 2.0);
        row.mean_mode = mean_mode(s.theta).real();
        row.energy_residual = energy_residual;
        row.noise_energy = noise_energy;
        traj.rows.push_back(row);
    };
    auto record_probes_theta = [&](const TrajectoryState& s) {
        for (std::size_t p = 0; p < probes.flat.size(); ++p)
            traj.probe_theta[p].push_back(s.theta.coeffs[probes.flat[p]]);
    };
    auto monitor = [&](const TrajectoryState& s) -> bool {
        // Returns true when the top rung is exceeded.
        if (!cfg.stopping) return false;
        const double v = sobolev_norm(s.theta, cfg.stopping->s, cfg.stopping->q);
        for (std::size_t r = 0; r < cfg.stopping->thresholds.size(); ++r)
            if (!traj.hit_times[r] && v > cfg.stopping->thresholds[r])
                traj.hit_times[r] = s.t;
        return v > cfg.stopping->thresholds.back();
    };

    if (cfg.diagnostics_stride > 0) record_row(state);
    if (cfg.snapshot_stride > 0) traj.snapshots.emplace_back(state.step, state.theta);
    record_probes_theta(state);
    bool stopped = false;
    if (monitor(state)) {
        traj.stopped_at = StopRecord{state.step, state.t, "ladder_top",
                                     static_cast<int>(cfg.stopping->thresholds.size()) - 1};
        stopped = true;
    }

    SpectralField theta_prev;
    for (long j = 0; j < remaining && !stopped; ++j) {
        theta_prev = state.theta;
        const double hdot2 = stepper.dissipation_sq(theta_prev);

        Stepper::Terms terms;
        if (!stepper.advance(state, &terms)) {
            traj.stopped_at = StopRecord{state.step, state.t, "blow_up", -1};
            break;
        }

        const double l2 = l2_norm(state.theta);
        const double e_next = 0.5 * l2 * l2;
        const double bwork = terms.have_b ? inner(terms.b_hat, theta_prev) : 0.0;
        double nwork = 0.0;
        if (terms.have_noise) {
            const double nn = l2_norm(terms.noise_hat);
            nwork = inner(terms.noise_hat, theta_prev) + 0.5 * nn * nn;
        }
        energy_residual += e_next - e_prev + dt * cfg.nu * hdot2 - dt * bwork - nwork;
        noise_energy += nwork;
        e_prev = e_next;

        lq = sobolev_norm(state.theta, 0.0, cfg.diag_q);
        traj.sup_lq = std::max(traj.sup_lq, lq);
        if (cfg.track_moments) {
            const double hb = cfg.mom_beta == 0.0
                                  ? lq
                                  : sobolev_norm(state.theta, cfg.mom_beta, cfg.diag_q);
            traj.int_h += dt * 0.5 * (hb * hb + hb_prev * hb_prev);
            hb_prev = hb;
        }

        for (std::size_t p = 0; p < probes.flat.size(); ++p) {
            traj.probe_b[p].push_back(terms.have_b ? terms.b_hat.coeffs[probes.flat[p]] : 0.0);
            traj.probe_noise[p].push_back(
                terms.have_noise ? terms.noise_hat.coeffs[probes.flat[p]] : 0.0);
        }
        record_probes_theta(state);

        if (cfg.diagnostics_stride > 0 && state.step % cfg.diagnostics_stride == 0)
            record_row(state);
        if (cfg.snapshot_stride > 0 && state.step % cfg.snapshot_stride == 0)
            traj.snapshots.emplace_back(state.step, state.theta);

        if (monitor(state)) {
            traj.stopped_at = StopRecord{state.step, state.t, "ladder_top",
                                         static_cast<int>(cfg.stopping->thresholds.size()) - 1};
            break;
        }
    }

    // Drift at the final recorded time closes the trapezoid rule of the
    // weak-form checker.
    if (!probes.flat.empty() && cfg.enable_nonlinear && !traj.stopped_at) {
        try {
            const SpectralField b_final = nonlinear_term(state.theta, cfg.law);
            for (std::size_t p = 0; p < probes.flat.size(); ++p)
                traj.probe_b[p].push_back(b_final.coeffs[probes.flat[p]]);
        } catch (const OverflowError&) {
            // leave the records one short; the checker will refuse them
        }
    } else if (!probes.flat.empty() && !cfg.enable_nonlinear && !traj.stopped_at) {
        for (std::size_t p = 0; p < probes.flat.size(); ++p)
            traj.probe_b[p].push_back(0.0);
    }

    traj.final_state = std::move(state);
    return traj;
}

Trajectory run_trajectory(const SpectralField& theta0, const SolverConfig& cfg,
                          RngStream rng) {
    TrajectoryState state;
    state.t = 0.0;
    state.step = 0;
    state.theta = theta0;
    state.rng = rng;
    return run_trajectory(std::move(state), cfg);
}

double stochastic_convolution_variance(const SolverConfig& cfg,
                                       const std::array<int, 3>& k, double t) {
    if (!cfg.diff.additive())
        throw std::invalid_argument(
            "stochastic_convolution_variance: closed form requires additive diffusion");
    if (t < 0.0) throw std::invalid_argument("stochastic_convolution_variance: t must be >= 0");
    double k2 = 0.0;
    int kinf = 0;
    for (int axis = 0; axis < cfg.grid.d; ++axis) {
        k2 += static_cast<double>(k[axis]) * k[axis];
        kinf = std::max(kinf, std::abs(k[axis]));
    }
    if (kinf > cfg.cov.kmax) return 0.0;
    const double qk = cfg.cov.eigenvalue(k2);
    if (k2 == 0.0) return qk * t;
    const double lam = cfg.nu * std::pow(k2, 0.5 * cfg.alpha);
    return qk * (-std::expm1(-2.0 * lam * t)) / (2.0 * lam);
}

std::vector<std::pair<double, std::optional<double>>> hitting_times(
    const Trajectory& traj, const StoppingLadder& ladder) {
    if (!traj.ladder || !(*traj.ladder == ladder))
        throw std::invalid_argument("hitting_times: this ladder was not monitored during the run");
    std::vector<std::pair<double, std::optional<double>>> out;
    for (std::size_t r = 0; r < ladder.thresholds.size(); ++r)
        out.emplace_back(ladder.thresholds[r], traj.hit_times[r]);
    return out;
}

PicardResult picard_solve(const SpectralField& theta0, const SolverConfig& cfg,
                          double t_star, double tol, int m_max, double tol_q,
                          const std::vector<SpectralField>* frozen_increments) {
    cfg.validate();
    if (!(t_star > 0.0 && t_star <= cfg.t_end))
        throw std::invalid_argument("picard_solve: t_star must lie in (0, t_end]");
    if (!cfg.deterministic && frozen_increments == nullptr)
        throw std::invalid_argument(
            "picard_solve: needs the deterministic flag or a frozen noise realization");
    const long M = std::llround(t_star / cfg.dt);
    if (M < 1) throw std::invalid_argument("picard_solve: t_star shorter than one grid step");
    if (frozen_increments && static_cast<long>(frozen_increments->size()) < M)
        throw std::invalid_argument("picard_solve: frozen noise path shorter than the grid");

    const TorusGrid& grid = cfg.grid;
    const std::size_t N = grid.size();
    const double h = cfg.dt;

    std::vector<double> eh(N);
    std::vector<char> keep(N);
    const int kcut = dealias_limit(grid);
    for (std::size_t i = 0; i < N; ++i) {
        const double k2 = grid.k_squared(i);
        const double lam = k2 == 0.0 ? 0.0 : cfg.nu * std::pow(k2, 0.5 * cfg.alpha);
        eh[i] = std::exp(-lam * h);
        const auto k = grid.wavevector(i);
        bool kp = true;
        for (int axis = 0; axis < grid.d; ++axis)
            if (std::abs(k[axis]) > kcut) { kp = false; break; }
        keep[i] = kp ? 1 : 0;
    }

    // Free flow F_i = e^{-nu A t_i} theta0 on the grid.
    std::vector<SpectralField> free_flow(M + 1);
    free_flow[0] = dealias(theta0);
    for (long i = 1; i <= M; ++i) {
        free_flow[i] = SpectralField(grid);
        for (std::size_t idx = 0; idx < N; ++idx)
            free_flow[i].coeffs[idx] = eh[idx] * free_flow[i - 1].coeffs[idx];
    }

    auto noise_path = [&](const std::vector<SpectralField>& path) {
        // Z_i = E_h (Z_{i-1} + G(theta(t_{i-1})) dW_{i-1}), the stepper's
        // discrete stochastic convolution.
        std::vector<SpectralField> z(M + 1, SpectralField(grid));
        if (!frozen_increments) return z;
        for (long i = 1; i <= M; ++i) {
            SpectralField g_dw(grid);
            if (cfg.diff.additive()) {
                g_dw = (*frozen_increments)[i - 1];
            } else {
                const PhysicalField th = to_physical(path[i - 1]);
                const PhysicalField w = to_physical((*frozen_increments)[i - 1]);
                PhysicalField zv(grid);
                for (std::size_t x = 0; x < zv.values.size(); ++x)
                    zv.values[x] = cfg.diff.g(th.values[x]) * w.values[x];
                g_dw = to_spectral(zv);
            }
            for (std::size_t idx = 0; idx < N; ++idx)
                z[i].coeffs[idx] = eh[idx] * (z[i - 1].coeffs[idx] + g_dw.coeffs[idx]);
        }
        return z;
    };

    PicardResult result;
    result.times.resize(M + 1);
    for (long i = 0; i <= M; ++i) result.times[i] = i * h;

    std::vector<SpectralField> path(M + 1);
    {
        const auto z0 = noise_path(free_flow);
        for (long i = 0; i <= M; ++i) {
            path[i] = SpectralField(grid);
            for (std::size_t idx = 0; idx < N; ++idx)
                path[i].coeffs[idx] =
                    keep[idx] ? free_flow[i].coeffs[idx] + z0[i].coeffs[idx] : 0.0;
        }
    }

    std::optional<NonlinearEvaluator> drift;
    if (cfg.enable_nonlinear) drift.emplace(grid, cfg.law);

    std::vector<SpectralField> b(M + 1);
    for (int sweep = 0; sweep < m_max; ++sweep) {
        for (long i = 0; i <= M; ++i)
            b[i] = drift ? (*drift)(path[i]) : SpectralField(grid);
        const auto z = noise_path(path);

        // I_i = E_h I_{i-1} + (h/2)(E_h B_{i-1} + B_i): composite trapezoid
        // with exact semigroup weights.
        std::vector<SpectralField> next(M + 1);
        SpectralField integral(grid);
        next[0] = path[0];
        double delta = 0.0;
        for (long i = 1; i <= M; ++i) {
            SpectralField acc(grid);
            for (std::size_t idx = 0; idx < N; ++idx) {
                integral.coeffs[idx] = eh[idx] * integral.coeffs[idx] +
                                       0.5 * h * (eh[idx] * b[i - 1].coeffs[idx] + b[i].coeffs[idx]);
                acc.coeffs[idx] =
                    keep[idx]
                        ? free_flow[i].coeffs[idx] + integral.coeffs[idx] + z[i].coeffs[idx]
                        : 0.0;
            }
            SpectralField diff(grid);
            for (std::size_t idx = 0; idx < N; ++idx)
                diff.coeffs[idx] = acc.coeffs[idx] - path[i].coeffs[idx];
            delta = std::max(delta, sobolev_norm(diff, 0.0, tol_q));
            next[i] = std::move(acc);
        }
        path = std::move(next);
        result.iterations = sweep + 1;
        if (delta < tol) {
            result.converged = true;
            break;
        }
    }
    result.states = std::move(path);
    return result;
}

namespace {

struct TrajectorySummary {
    double sup_lq = 0.0;
    double int_h = 0.0;
    bool stopped = false;
    std::vector<std::complex<double>> final_modes;
};

std::vector<std::array<int, 3>> driven_modes(const TorusGrid& grid, int kmax) {
    std::vector<std::array<int, 3>> modes;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto k = grid.wavevector(i);
        bool in = true;
        for (int axis = 0; axis < grid.d; ++axis)
            if (std::abs(k[axis]) > kmax) { in = false; break; }
        if (in) modes.push_back(k);
    }
    return modes;
}

}  // namespace

EnsembleReport run_ensemble(const std::function<SpectralField(RngStream&)>& theta0_gen,
                            const SolverConfig& cfg, int m, std::uint64_t master_seed,
                            int threads, const TrajectorySink& sink) {
    cfg.validate();
    if (m < 1) throw std::invalid_argument("run_ensemble: m must be >= 1");

    const auto modes = driven_modes(cfg.grid, cfg.deterministic ? 0 : cfg.cov.kmax);
    std::vector<std::size_t> mode_flat;
    {
        ProbeIndex pi = probe_flat_indices(cfg.grid, modes);
        mode_flat = pi.flat;
    }

    std::vector<TrajectorySummary> summaries(m);
    std::mutex sink_mtx;

    auto work = [&](int index) {
        RngStream rng(master_seed, static_cast<std::uint64_t>(index) + 1);
        SpectralField theta0 = theta0_gen(rng);
        Trajectory traj = run_trajectory(theta0, cfg, rng);
        TrajectorySummary s;
        s.sup_lq = traj.sup_lq;
        s.int_h = traj.int_h;
        s.stopped = traj.stopped_at.has_value();
        s.final_modes.reserve(mode_flat.size());
        for (std::size_t f : mode_flat) s.final_modes.push_back(traj.final_state.theta.coeffs[f]);
        summaries[index - 1] = std::move(s);
        if (sink) {
            std::lock_guard<std::mutex> lock(sink_mtx);
            sink(index, std::move(traj));
        }
    };

    int T = threads;
    if (T <= 0) {
        const unsigned hw = std::thread::hardware_concurrency();
        T = static_cast<int>(std::min(8u, hw == 0 ? 1u : hw));
    }
    T = std::min(T, m);
    if (T <= 1) {
        for (int i = 1; i <= m; ++i) work(i);
    } else {
        std::atomic<int> counter{1};
        std::vector<std::thread> pool;
        pool.reserve(T);
        for (int t = 0; t < T; ++t)
            pool.emplace_back([&] {
                for (int i = counter.fetch_add(1); i <= m; i = counter.fetch_add(1)) work(i);
            });
        for (auto& th : pool) th.join();
    }

    EnsembleReport report;
    report.m = m;
    report.q = cfg.diag_q;
    report.beta = cfg.mom_beta;
    report.master_seed = master_seed;
    report.mode_index = modes;

    // Fixed index-order reduction keeps the report independent of scheduling.
    const bool q_inf = std::isinf(cfg.diag_q);
    int valid = 0;
    double sup_sum = 0.0, sup_sq = 0.0, int_sum = 0.0, int_sq = 0.0;
    std::vector<std::complex<double>> mode_sum(modes.size(), 0.0);
    std::vector<double> mode_sq(modes.size(), 0.0);
    int stopped = 0;
    for (const auto& s : summaries) {
        if (s.stopped) { ++stopped; continue; }
        ++valid;
        const double v = q_inf ? s.sup_lq : std::pow(s.sup_lq, cfg.diag_q);
        sup_sum += v;
        sup_sq += v * v;
        int_sum += s.int_h;
        int_sq += s.int_h * s.int_h;
        for (std::size_t j = 0; j < modes.size(); ++j) {
            mode_sum[j] += s.final_modes[j];
            mode_sq[j] += std::norm(s.final_modes[j]);
        }
    }
    report.valid_count = valid;
    report.stopped_fraction = static_cast<double>(stopped) / m;
    if (valid > 0) {
        report.sup_pow_q_mean = sup_sum / valid;
        report.int_h_mean = int_sum / valid;
        report.mode_mean.resize(modes.size());
        report.mode_var.resize(modes.size());
        for (std::size_t j = 0; j < modes.size(); ++j) {
            report.mode_mean[j] = mode_sum[j] / static_cast<double>(valid);
            const double raw = mode_sq[j] - valid * std::norm(report.mode_mean[j]);
            report.mode_var[j] = valid > 1 ? std::max(0.0, raw / (valid - 1)) : 0.0;
        }
        if (valid > 1) {
            report.sup_pow_q_sd = std::sqrt(
                std::max(0.0, (sup_sq - valid * report.sup_pow_q_mean * report.sup_pow_q_mean) /
                                  (valid - 1)));
            report.int_h_sd = std::sqrt(
                std::max(0.0, (int_sq - valid * report.int_h_mean * report.int_h_mean) /
                                  (valid - 1)));
        }
    }
    return report;
}

EnsembleReport run_ensemble(const SpectralField& theta0, const SolverConfig& cfg, int m,
                            std::uint64_t master_seed, int threads,
                            const TrajectorySink& sink) {
    return run_ensemble([&theta0](RngStream&) { return theta0; }, cfg, m, master_seed,
                        threads, sink);
}

}  // namespace fsas
