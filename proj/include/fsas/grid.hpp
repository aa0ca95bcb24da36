#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace fsas {

// Uniform lattice on [0, 2pi)^d with the normalized measure (2pi)^{-d} dx.
// Active wavenumbers per axis are {-n/2+1, ..., n/2}; storage follows the
// DFT layout (0, 1, ..., n/2, -n/2+1, ..., -1), flattened row-major.
struct TorusGrid {
    int d = 2;
    int n = 64;

    TorusGrid() = default;
    TorusGrid(int d_, int n_) : d(d_), n(n_) {
        if (d < 1 || d > 3)
            throw std::invalid_argument("TorusGrid: d must be 1, 2 or 3");
        if (n < 8 || n % 2 != 0)
            throw std::invalid_argument("TorusGrid: n must be even and >= 8");
    }

    std::size_t size() const {
        std::size_t s = 1;
        for (int i = 0; i < d; ++i) s *= static_cast<std::size_t>(n);
        return s;
    }

    // Signed wavenumber of a per-axis storage index.
    int freq(int idx) const { return idx <= n / 2 ? idx : idx - n; }

    // Wavevector of a flat index; entries beyond d are zero.
    std::array<int, 3> wavevector(std::size_t flat) const {
        std::array<int, 3> k{0, 0, 0};
        for (int axis = d - 1; axis >= 0; --axis) {
            k[axis] = freq(static_cast<int>(flat % n));
            flat /= n;
        }
        return k;
    }

    // Flat index of the wavevector -k (mod n per axis).
    std::size_t conj_index(std::size_t flat) const {
        std::size_t out = 0;
        std::array<int, 3> idx{0, 0, 0};
        for (int axis = d - 1; axis >= 0; --axis) {
            idx[axis] = static_cast<int>(flat % n);
            flat /= n;
        }
        for (int axis = 0; axis < d; ++axis)
            out = out * n + static_cast<std::size_t>((n - idx[axis]) % n);
        return out;
    }

    double k_squared(std::size_t flat) const {
        double s = 0.0;
        for (int axis = d - 1; axis >= 0; --axis) {
            double k = freq(static_cast<int>(flat % n));
            flat /= n;
            s += k * k;
        }
        return s;
    }

    bool operator==(const TorusGrid&) const = default;
};

struct PhysicalField {
    TorusGrid grid;
    std::vector<double> values;

    PhysicalField() = default;
    explicit PhysicalField(const TorusGrid& g) : grid(g), values(g.size(), 0.0) {}
};

// Coefficients follow the convention fhat(k) = int f(x) e^{-ik.x} dmu, so a
// constant field 1 has fhat(0) = 1 and Parseval reads |f|_{L2}^2 = sum |fhat|^2.
struct SpectralField {
    TorusGrid grid;
    std::vector<std::complex<double>> coeffs;

    SpectralField() = default;
    explicit SpectralField(const TorusGrid& g) : grid(g), coeffs(g.size(), 0.0) {}
};

}  // namespace fsas
