#pragma once

#include "fsas/integrator.hpp"
#include "fsas/regime.hpp"

namespace fsas {

// Residual of the weak formulation against phi = e^{ik.x} for each test mode:
//   <theta(t), phi> - <theta0, phi> + nu |k|^alpha int <theta, phi> ds
//   - int <B(theta), phi> ds - <recorded noise, phi>,
// time integrals by trapezoid on the step grid, the stochastic term read
// from the recorded per-step injections. Returns the maximum |residual| over
// test modes and recorded times. The trajectory must have been run with
// per-step probes covering the test modes.
double weak_form_residual(const Trajectory& traj, const SolverConfig& cfg,
                          std::span<const std::array<int, 3>> test_modes);

struct MomentReport {
    int m = 0;
    int valid = 0;
    bool degenerate = false;  // every trajectory stopped
    bool ci_valid = false;    // m >= 30
    double q = 2.0;
    double beta_used = 0.0;
    double beta_max = 0.0;

    double sup_estimate = 0.0;  // E sup_t |theta|^q_{L^q}
    double sup_se = 0.0;
    double sup_halfwidth95 = 0.0;
    double int_estimate = 0.0;  // E int |theta|^2_{H^{beta,q}} dt
    double int_se = 0.0;
    double int_halfwidth95 = 0.0;
    double blowup_fraction = 0.0;

    // Set when a refined-resolution report is supplied.
    std::optional<double> resolution_change;  // relative change of sup_estimate
    std::optional<bool> resolution_stable;    // change <= 10%
};

// Monte Carlo moment estimates with standard-error half-widths; `refined`,
// when given, is the same experiment at doubled resolution and feeds the
// resolution-stability flag. These are consistency diagnostics, not proofs.
MomentReport moment_estimate(const EnsembleReport& report, const RegimeQuery& qr,
                             const EnsembleReport* refined = nullptr);

}  // namespace fsas
