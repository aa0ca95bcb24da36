#include "fsas/noise.hpp"

#include <cmath>

#include "fsas/operators.hpp"
#include "fsas/transform.hpp"

namespace fsas {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

bool within_band(const std::array<int, 3>& k, int d, int kmax) {
    for (int axis = 0; axis < d; ++axis)
        if (std::abs(k[axis]) > kmax) return false;
    return true;
}

bool self_conjugate(const std::array<int, 3>& k, int d, int n) {
    for (int axis = 0; axis < d; ++axis)
        if (k[axis] != 0 && k[axis] != n / 2) return false;
    return true;
}

// Canonical member of the pair {k, -k}: first nonzero component positive.
bool representative(const std::array<int, 3>& k, int d) {
    for (int axis = 0; axis < d; ++axis) {
        if (k[axis] > 0) return true;
        if (k[axis] < 0) return false;
    }
    return false;  // k = 0
}

void check_kmax(const CovarianceSpec& cov, const TorusGrid& grid) {
    if (cov.kmax < 0 || cov.kmax > grid.n / 2)
        throw std::invalid_argument("covariance kmax must lie in [0, n/2]");
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
    : master_(master_seed), id_(stream_id) {
    std::seed_seq seq{static_cast<std::uint32_t>(master_seed & 0xffffffffu),
                      static_cast<std::uint32_t>(master_seed >> 32),
                      static_cast<std::uint32_t>(stream_id & 0xffffffffu),
                      static_cast<std::uint32_t>(stream_id >> 32)};
    engine_.seed(seq);
}

double RngStream::uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = 1.0 - uniform01();  // (0, 1]
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = kTwoPi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

double trace(const CovarianceSpec& cov, const TorusGrid& grid) {
    check_kmax(cov, grid);
    double acc = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto k = grid.wavevector(i);
        if (!within_band(k, grid.d, cov.kmax)) continue;
        acc += cov.eigenvalue(grid.k_squared(i));
    }
    return acc;
}

NoiseIncrement sample_increment(const CovarianceSpec& cov, const TorusGrid& grid,
                                double dt, RngStream& rng) {
    if (!(dt > 0.0)) throw std::invalid_argument("sample_increment: dt must be > 0");
    check_kmax(cov, grid);

    NoiseIncrement out;
    out.field = SpectralField(grid);
    out.dt = dt;

    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto k = grid.wavevector(i);
        if (!within_band(k, grid.d, cov.kmax)) continue;
        const double amp2 = cov.eigenvalue(grid.k_squared(i)) * dt;
        if (i == 0) {
            out.field.coeffs[0] = std::sqrt(amp2) * rng.gaussian();
        } else if (self_conjugate(k, grid.d, grid.n)) {
            // Single real basis function; its grid values are +-1, so the
            // spectral coefficient carries the full amplitude.
            out.field.coeffs[i] = std::sqrt(amp2) * rng.gaussian();
        } else if (representative(k, grid.d)) {
            const double a = std::sqrt(0.5 * amp2);
            const double gc = rng.gaussian();
            const double gs = rng.gaussian();
            out.field.coeffs[i] = std::complex<double>(a * gc, -a * gs);
            out.field.coeffs[grid.conj_index(i)] = std::conj(out.field.coeffs[i]);
        }
    }
    return out;
}

PhysicalField apply_diffusion(const PhysicalField& theta, const DiffusionSpec& spec,
                              const NoiseIncrement& incr) {
    if (!(theta.grid == incr.field.grid))
        throw std::invalid_argument("apply_diffusion: grid mismatch");
    const PhysicalField w = to_physical(incr.field);
    PhysicalField out(theta.grid);
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        out.values[i] = spec.g(theta.values[i]) * w.values[i];
        if (!std::isfinite(out.values[i]))
            throw OverflowError("apply_diffusion: non-finite value");
    }
    return out;
}

double hs_norm(const SpectralField& theta, const DiffusionSpec& spec,
               const CovarianceSpec& cov) {
    // sum_k q_k e_k(x)^2 is identically trace(Q) on the grid (cos^2 + sin^2
    // pairs), so the basis sum collapses to trace(Q) |g(theta)|_{L2}^2.
    const double tr = trace(cov, theta.grid);
    const PhysicalField th = to_physical(theta);
    double acc = 0.0;
    for (double v : th.values) {
        const double gv = spec.g(v);
        acc += gv * gv;
    }
    acc /= static_cast<double>(th.values.size());
    return std::sqrt(tr * acc);
}

double lipschitz_probe(const DiffusionSpec& spec, const CovarianceSpec& cov,
                       const SpectralField& u, const SpectralField& v) {
    if (!(u.grid == v.grid)) throw std::invalid_argument("lipschitz_probe: grid mismatch");
    SpectralField diff(u.grid);
    for (std::size_t i = 0; i < diff.coeffs.size(); ++i)
        diff.coeffs[i] = u.coeffs[i] - v.coeffs[i];
    const double denom = l2_norm(diff);
    if (denom == 0.0)
        throw std::invalid_argument("lipschitz_probe: u and v coincide (undefined ratio)");

    const double tr = trace(cov, u.grid);
    const PhysicalField up = to_physical(u);
    const PhysicalField vp = to_physical(v);
    double acc = 0.0;
    for (std::size_t i = 0; i < up.values.size(); ++i) {
        const double dg = spec.g(up.values[i]) - spec.g(vp.values[i]);
        acc += dg * dg;
    }
    acc /= static_cast<double>(up.values.size());
    return std::sqrt(tr * acc) / denom;
}

}  // namespace fsas
