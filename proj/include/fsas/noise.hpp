#pragma once

#include <cstdint>
#include <random>

#include "fsas/errors.hpp"
#include "fsas/grid.hpp"

namespace fsas {

// Covariance of the Q-Wiener process on the real trigonometric eigenbasis
// {1, sqrt(2) cos k.x, sqrt(2) sin k.x}. Only modes with |k|_inf <= kmax are
// driven; Q = I is realized through the same truncation.
struct CovarianceSpec {
    enum class Kind { PowerLaw, Identity };
    Kind kind = Kind::PowerLaw;
    double a = 1.0;  // powerlaw amplitude, > 0
    double r = 0.0;  // powerlaw decay, >= 0
    int kmax = 0;

    double eigenvalue(double k_squared) const {
        return kind == Kind::Identity ? 1.0 : a * std::pow(1.0 + k_squared, -r);
    }
};

// Nemytskii diffusion G(theta)h = g(theta(.)) h(.).
struct DiffusionSpec {
    enum class Kind { Additive, Linear, Saturated };
    Kind kind = Kind::Additive;
    double c = 1.0;

    double g(double v) const {
        switch (kind) {
            case Kind::Additive: return 1.0;
            case Kind::Linear: return c * v;
            case Kind::Saturated: return c * v / std::sqrt(1.0 + v * v);
        }
        return 1.0;
    }
    bool additive() const { return kind == Kind::Additive; }
};

// Deterministic Gaussian stream: distinct (seed, id) pairs give independent
// streams, and a stream replays identically from the same pair. The normal
// deviates are produced by an explicit Box-Muller transform so replay does
// not depend on the standard library's distribution internals.
class RngStream {
public:
    RngStream() : RngStream(0, 0) {}
    RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

    double uniform01();  // [0, 1)
    double gaussian();   // N(0, 1)

    std::uint64_t master_seed() const { return master_; }
    std::uint64_t stream_id() const { return id_; }

private:
    std::mt19937_64 engine_;
    std::uint64_t master_ = 0;
    std::uint64_t id_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

struct NoiseIncrement {
    SpectralField field;  // real-valued in physical space
    double dt = 0.0;
};

// Sum of the driven eigenvalues, one per lattice wavenumber with
// |k|_inf <= kmax. kmax beyond n/2 is not resolvable on the grid.
double trace(const CovarianceSpec& cov, const TorusGrid& grid);

// Gaussian increment of the Q-Wiener process over a step dt: independent
// N(0, q_k dt) amplitudes on the real trigonometric basis.
NoiseIncrement sample_increment(const CovarianceSpec& cov, const TorusGrid& grid,
                                double dt, RngStream& rng);

// Pointwise g(theta(x)) * increment(x).
PhysicalField apply_diffusion(const PhysicalField& theta, const DiffusionSpec& spec,
                              const NoiseIncrement& incr);

// Hilbert-Schmidt norm of G(theta) Q^{1/2} on the driven basis,
// (sum_k q_k |g(theta) e_k|_{L2}^2)^{1/2}.
double hs_norm(const SpectralField& theta, const DiffusionSpec& spec,
               const CovarianceSpec& cov);

// Ratio hs-distance(G(u), G(v)) / |u - v|_{L2}, an empirical local Lipschitz
// constant for the pair. u = v is rejected.
double lipschitz_probe(const DiffusionSpec& spec, const CovarianceSpec& cov,
                       const SpectralField& u, const SpectralField& v);

}  // namespace fsas
