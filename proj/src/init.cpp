#include "fsas/init.hpp"

#include <cmath>

#include "fsas/io.hpp"
#include "fsas/operators.hpp"

namespace fsas {

SpectralField make_mode_field(const TorusGrid& grid, const std::array<int, 3>& k,
                              double amplitude, double phase) {
    SpectralField f(grid);
    std::size_t idx = 0;
    bool zero = true;
    for (int axis = 0; axis < grid.d; ++axis) {
        const int kk = k[axis];
        if (kk < -grid.n / 2 + 1 || kk > grid.n / 2)
            throw std::invalid_argument("make_mode_field: wavenumber outside the lattice");
        if (kk != 0) zero = false;
        idx = idx * grid.n + static_cast<std::size_t>((kk + grid.n) % grid.n);
    }
    if (zero) {
        f.coeffs[0] = amplitude * std::cos(phase);
        return f;
    }
    const std::complex<double> half(0.5 * amplitude * std::cos(phase),
                                    0.5 * amplitude * std::sin(phase));
    f.coeffs[idx] = half;
    f.coeffs[grid.conj_index(idx)] = std::conj(half);
    return f;
}

SpectralField make_filtered_random(const TorusGrid& grid, double s, double q,
                                   double target_norm, double decay, bool mean_zero,
                                   RngStream& rng) {
    if (!(target_norm > 0.0))
        throw std::invalid_argument("make_filtered_random: target_norm must be > 0");
    const int kcut = dealias_limit(grid);
    SpectralField f(grid);
    for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
        const auto k = grid.wavevector(i);
        bool in_band = true;
        bool positive = false;
        for (int axis = 0; axis < grid.d && in_band; ++axis)
            if (std::abs(k[axis]) > kcut) in_band = false;
        for (int axis = 0; axis < grid.d; ++axis) {
            if (k[axis] > 0) { positive = true; break; }
            if (k[axis] < 0) break;
        }
        if (!in_band) continue;
        if (i == 0) {
            if (!mean_zero) f.coeffs[0] = rng.gaussian();
            continue;
        }
        if (!positive) continue;
        const double rho = std::pow(1.0 + grid.k_squared(i), -0.5 * decay);
        const double inv_sqrt2 = 0.70710678118654752440;
        f.coeffs[i] = rho * inv_sqrt2 *
                      std::complex<double>(rng.gaussian(), rng.gaussian());
        f.coeffs[grid.conj_index(i)] = std::conj(f.coeffs[i]);
    }
    const double norm = sobolev_norm(f, s, q);
    if (!(norm > 0.0))
        throw std::invalid_argument("make_filtered_random: drew a zero field");
    const double scale = target_norm / norm;
    for (auto& c : f.coeffs) c *= scale;
    return f;
}

SpectralField make_initial(const InitSpec& spec, const TorusGrid& grid, RngStream& rng) {
    switch (spec.type) {
        case InitSpec::Type::Mode:
            return make_mode_field(grid, spec.k, spec.amplitude, spec.phase);
        case InitSpec::Type::FilteredRandom:
            return make_filtered_random(grid, spec.s, spec.q, spec.target_norm, spec.decay,
                                        spec.mean_zero, rng);
        case InitSpec::Type::File: {
            Snapshot snap = read_snapshot(spec.path);
            if (snap.grid.d != grid.d || snap.grid.n != grid.n)
                throw std::invalid_argument("make_initial: snapshot grid does not match config");
            return snap.spectral ? snap.spec : to_spectral(snap.phys);
        }
    }
    throw std::logic_error("make_initial: unreachable");
}

}  // namespace fsas
