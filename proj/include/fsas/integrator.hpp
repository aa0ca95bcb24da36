#pragma once

#include <functional>
#include <optional>

#include "fsas/noise.hpp"
#include "fsas/velocity.hpp"

namespace fsas {

// Thresholds R_1 < R_2 < ... on the monitored |.|_{H^{s,q}}; first hitting
// times realize an increasing stopping-time ladder. Exceeding the top rung
// stops the trajectory.
struct StoppingLadder {
    double s = 0.0;
    double q = 2.0;
    std::vector<double> thresholds;

    void validate() const;
    bool operator==(const StoppingLadder&) const = default;
};

struct SolverConfig {
    TorusGrid grid;
    double nu = 1.0;
    double alpha = 2.0;
    VelocityLaw law = preset("sqg");
    CovarianceSpec cov;
    DiffusionSpec diff;
    double dt = 1e-3;
    double t_end = 1.0;
    bool deterministic = false;    // suppress the noise term
    bool enable_nonlinear = true;  // suppress the drift B when false
    std::optional<StoppingLadder> stopping;

    // Diagnostics controls.
    double diag_q = 2.0;     // L^q norm recorded and sup-tracked along the path
    double mom_beta = 0.0;   // H^{beta, diag_q} integrand of the moment integral
    bool track_moments = false;
    int diagnostics_stride = 1;  // 0 = no rows
    int snapshot_stride = 0;     // 0 = no snapshots
    std::vector<std::array<int, 3>> probe_modes;  // per-step weak-form probes

    void validate() const;
    long num_steps() const;
};

struct TrajectoryState {
    double t = 0.0;
    long step = 0;
    SpectralField theta;
    RngStream rng;
};

struct StopRecord {
    long step = 0;
    double t = 0.0;
    std::string reason;  // "blow_up" or "ladder_top"
    int rung = -1;
};

struct DiagnosticsRow {
    long step = 0;
    double t = 0.0;
    double l2 = 0.0;
    double lq = 0.0;
    double h_alpha2 = 0.0;
    double mean_mode = 0.0;
    double energy_residual = 0.0;  // cumulative discrete energy-budget defect
    double noise_energy = 0.0;     // cumulative injected noise work
};

struct Trajectory {
    double t0 = 0.0;
    double dt = 0.0;
    std::vector<DiagnosticsRow> rows;
    std::optional<StopRecord> stopped_at;

    std::optional<StoppingLadder> ladder;
    std::vector<std::optional<double>> hit_times;  // per rung

    double sup_lq = 0.0;    // sup over steps of |theta|_{L^q}
    double int_h = 0.0;     // trapezoid of |theta|^2_{H^{beta,q}} dt (if tracked)

    std::vector<std::pair<long, SpectralField>> snapshots;

    // Per-step probe records for the weak-form residual: theta_hat at every
    // grid time, and the drift/noise contributions of every step.
    std::vector<std::array<int, 3>> probe_modes;
    std::vector<std::vector<std::complex<double>>> probe_theta;  // [mode][0..steps]
    std::vector<std::vector<std::complex<double>>> probe_b;      // [mode][0..steps-1]
    std::vector<std::vector<std::complex<double>>> probe_noise;  // [mode][0..steps-1]

    TrajectoryState final_state;
};

// One stochastic exponential-Euler step of the mild formula:
//   theta' = E_dt theta + dt phi1 B(theta) + E_dt G(theta) dW,
// with E_dt = exp(-nu |k|^alpha dt) per mode, followed by dealiasing.
class Stepper {
public:
    explicit Stepper(const SolverConfig& cfg);

    struct Terms {
        SpectralField b_hat;      // drift B(theta_n), dealiased
        SpectralField noise_hat;  // injected noise E_dt G(theta_n) dW_n
        bool have_b = false;
        bool have_noise = false;
    };

    // Returns false on a non-finite result (blow-up); state is untouched then.
    bool advance(TrajectoryState& state, Terms* terms = nullptr);

    const SolverConfig& config() const { return cfg_; }

    // |theta|^2 in the homogeneous H^{alpha/2} seminorm, from the cached
    // dissipation table.
    double dissipation_sq(const SpectralField& theta) const;

private:
    SolverConfig cfg_;
    std::vector<double> lambda_;     // nu |k|^alpha
    std::vector<double> semigroup_;  // exp(-nu |k|^alpha dt)
    std::vector<double> drift_w_;    // dt * phi1(nu |k|^alpha dt)
    std::vector<char> keep_;         // dealias mask
    std::optional<NonlinearEvaluator> drift_;
};

// Single-step contract form; throws OverflowError on blow-up.
TrajectoryState step(const TrajectoryState& state, const SolverConfig& cfg);

// Integrate from t = 0 with a fresh state (theta0 is dealiased on entry).
Trajectory run_trajectory(const SpectralField& theta0, const SolverConfig& cfg,
                          RngStream rng);

// Integrate from a mid-run state up to cfg.t_end (restart form; stopped-
// equation semantics: continuing from a stopped state with the same rng
// reproduces the unstopped path).
Trajectory run_trajectory(TrajectoryState initial, const SolverConfig& cfg);

// Exact per-mode variance of the additive-noise stochastic convolution:
// q_k (1 - e^{-2 nu |k|^alpha t}) / (2 nu |k|^alpha), and q_0 t on the mean
// mode. Rejects non-additive diffusion.
double stochastic_convolution_variance(const SolverConfig& cfg,
                                       const std::array<int, 3>& k, double t);

// First hitting time of each rung; none when never hit. Requires that the
// ladder was monitored during the run.
std::vector<std::pair<double, std::optional<double>>> hitting_times(
    const Trajectory& traj, const StoppingLadder& ladder);

// Picard iteration for the mild fixed point on [0, t_star] with grid step
// cfg.dt, exact per-mode semigroup weights and trapezoidal quadrature.
// Requires cfg.deterministic or a frozen vector of noise increments (one per
// grid step). Non-convergence within m_max sweeps is reported, not thrown.
struct PicardResult {
    bool converged = false;
    int iterations = 0;
    std::vector<double> times;
    std::vector<SpectralField> states;
};
PicardResult picard_solve(const SpectralField& theta0, const SolverConfig& cfg,
                          double t_star, double tol, int m_max, double tol_q = 2.0,
                          const std::vector<SpectralField>* frozen_increments = nullptr);

struct EnsembleReport {
    int m = 0;
    int valid_count = 0;  // trajectories that ran to t_end
    double q = 2.0;
    double beta = 0.0;
    std::uint64_t master_seed = 0;

    double sup_pow_q_mean = 0.0;  // E sup_t |theta|^q_{L^q}
    double sup_pow_q_sd = 0.0;
    double int_h_mean = 0.0;      // E int_0^T |theta|^2_{H^{beta,q}} dt
    double int_h_sd = 0.0;
    double stopped_fraction = 0.0;

    // Final-time statistics per driven mode (|k|_inf <= cov.kmax).
    std::vector<std::array<int, 3>> mode_index;
    std::vector<std::complex<double>> mode_mean;
    std::vector<double> mode_var;
};

using TrajectorySink = std::function<void(int index, Trajectory&&)>;

// m independent trajectories on streams (master_seed, 1..m); aggregates are
// reduced in index order so the report is independent of thread scheduling.
EnsembleReport run_ensemble(const SpectralField& theta0, const SolverConfig& cfg,
                            int m, std::uint64_t master_seed, int threads = 0,
                            const TrajectorySink& sink = nullptr);

// Ensemble with per-trajectory initial data drawn from the trajectory stream.
EnsembleReport run_ensemble(const std::function<SpectralField(RngStream&)>& theta0_gen,
                            const SolverConfig& cfg, int m, std::uint64_t master_seed,
                            int threads = 0, const TrajectorySink& sink = nullptr);

}  // namespace fsas
