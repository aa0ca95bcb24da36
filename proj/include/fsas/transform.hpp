#pragma once

#include "fsas/grid.hpp"

namespace fsas {

// Forward transform under the normalized-measure convention; rejects
// non-finite input.
SpectralField to_spectral(const PhysicalField& f);

// Inverse transform. Requires Hermitian symmetry within 1e-10 (relative to
// the largest coefficient); the input is symmetrized before inversion and a
// violation beyond tolerance throws.
PhysicalField to_physical(const SpectralField& f);

namespace detail {
// Unnormalized c2c transform (sign = -1 forward, +1 backward). in/out may
// alias. Plans are cached per (d, n, sign) behind a mutex; execution is
// thread-safe.
void fft(const TorusGrid& grid, const std::complex<double>* in,
         std::complex<double>* out, int sign);
}  // namespace detail

}  // namespace fsas
