#pragma once

#include <functional>
#include <limits>
#include <string>

#include "fsas/grid.hpp"

namespace fsas {

// Diagonal Fourier operator: (Mf)hat(k) = symbol(k) * fhat(k).
struct MultiplierOp {
    std::string name;
    TorusGrid grid;
    std::vector<std::complex<double>> symbol;

    SpectralField apply(const SpectralField& f) const;
};

MultiplierOp make_multiplier(
    const TorusGrid& grid, std::string name,
    const std::function<std::complex<double>(const std::array<int, 3>&)>& fn);

// (-Laplace)^{alpha/2}: symbol |k|^alpha, zero on the mean mode. alpha in (0,2].
SpectralField fractional_laplacian(const SpectralField& f, double alpha);

// e^{-nu (-Laplace)^{alpha/2} t}: factor exp(-nu |k|^alpha t). t >= 0, nu > 0.
SpectralField semigroup_apply(const SpectralField& f, double nu, double alpha, double t);

// (1 - e^{-z}) / z, continuously extended to 1 at z = 0.
double phi1(double z);

// Bessel-potential norm |f|_{H^{s,q}}. q = 2 is evaluated spectrally; q in
// (2, inf) applies the (1+|k|^2)^{s/2} multiplier and takes the grid L^q norm
// under the normalized measure; q = inf gives the max norm.
double sobolev_norm(const SpectralField& f, double s, double q);

// Homogeneous seminorm (sum_k |k|^{2s} |fhat(k)|^2)^{1/2}.
double homogeneous_seminorm(const SpectralField& f, double s);

double l2_norm(const SpectralField& f);

// Real L^2(dmu) pairing of two (real) fields, evaluated spectrally.
double inner(const SpectralField& a, const SpectralField& b);

// Two-thirds rule: zero every coefficient with any |k_i| > n/3.
SpectralField dealias(const SpectralField& f);
int dealias_limit(const TorusGrid& grid);

// psi with (-Laplace)^{gamma/2} psi = theta and mean-zero gauge. gamma in [1,2].
SpectralField stream_function(const SpectralField& theta, double gamma);

// d/dx_axis: symbol i k_axis, zeroed on self-conjugate (Nyquist) modes.
SpectralField gradient_component(const SpectralField& f, int axis);

std::complex<double> mean_mode(const SpectralField& f);

inline double infinite_q() { return std::numeric_limits<double>::infinity(); }

}  // namespace fsas
