#include "fsas/analysis.hpp"

#include <cmath>

#include "fsas/operators.hpp"

namespace fsas {

double weak_form_residual(const Trajectory& traj, const SolverConfig& cfg,
                          std::span<const std::array<int, 3>> test_modes) {
    const int kcut = dealias_limit(cfg.grid);
    const double dt = traj.dt;
    double worst = 0.0;

    for (const auto& mode : test_modes) {
        double k2 = 0.0;
        for (int axis = 0; axis < cfg.grid.d; ++axis) {
            if (std::abs(mode[axis]) > kcut)
                throw std::invalid_argument("weak_form_residual: test mode outside the dealiased band");
            k2 += static_cast<double>(mode[axis]) * mode[axis];
        }

        std::size_t p = traj.probe_modes.size();
        for (std::size_t i = 0; i < traj.probe_modes.size(); ++i)
            if (traj.probe_modes[i] == mode) { p = i; break; }
        if (p == traj.probe_modes.size())
            throw std::invalid_argument("weak_form_residual: mode was not probed during the run");

        const auto& th = traj.probe_theta[p];
        const auto& b = traj.probe_b[p];
        const auto& nz = traj.probe_noise[p];
        const std::size_t steps = nz.size();
        if (th.size() != steps + 1 || b.size() != steps + 1)
            throw std::invalid_argument("weak_form_residual: incomplete per-step records");

        const double lam = cfg.nu * (k2 == 0.0 ? 0.0 : std::pow(k2, 0.5 * cfg.alpha));
        std::complex<double> diss_int = 0.0;   // trapezoid of <theta, phi>
        std::complex<double> drift_int = 0.0;  // trapezoid of <B(theta), phi>
        std::complex<double> noise_sum = 0.0;  // recorded injections
        for (std::size_t j = 1; j <= steps; ++j) {
            diss_int += 0.5 * dt * (th[j - 1] + th[j]);
            drift_int += 0.5 * dt * (b[j - 1] + b[j]);
            noise_sum += nz[j - 1];
            const std::complex<double> res =
                th[j] - th[0] + lam * diss_int - drift_int - noise_sum;
            worst = std::max(worst, std::abs(res));
        }
    }
    return worst;
}

MomentReport moment_estimate(const EnsembleReport& report, const RegimeQuery& qr,
                             const EnsembleReport* refined) {
    MomentReport out;
    out.m = report.m;
    out.valid = report.valid_count;
    out.q = report.q;
    out.beta_used = report.beta;
    out.beta_max = admissible_exponents(qr).beta_max;
    out.blowup_fraction = report.stopped_fraction;
    out.degenerate = report.valid_count == 0;
    out.ci_valid = report.m >= 30;
    if (out.degenerate) return out;

    const double root_m = std::sqrt(static_cast<double>(report.valid_count));
    out.sup_estimate = report.sup_pow_q_mean;
    out.sup_se = report.sup_pow_q_sd / root_m;
    out.sup_halfwidth95 = 1.96 * out.sup_se;
    out.int_estimate = report.int_h_mean;
    out.int_se = report.int_h_sd / root_m;
    out.int_halfwidth95 = 1.96 * out.int_se;

    if (refined && refined->valid_count > 0) {
        const double denom = std::max(std::abs(out.sup_estimate), 1e-300);
        const double change = std::abs(refined->sup_pow_q_mean - out.sup_estimate) / denom;
        out.resolution_change = change;
        out.resolution_stable = change <= 0.10;
    }
    return out;
}

}  // namespace fsas
