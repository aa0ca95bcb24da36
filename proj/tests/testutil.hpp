#pragma once

#include <cmath>
#include <functional>
#include <numbers>

#include "fsas/init.hpp"
#include "fsas/operators.hpp"
#include "fsas/transform.hpp"

namespace fsas::test {

inline constexpr double kPi = std::numbers::pi;

// Symmetric random field in the dealiased band, unit L2 norm.
inline SpectralField random_field(const TorusGrid& grid, RngStream& rng,
                                  double decay = 1.5) {
    return make_filtered_random(grid, 0.0, 2.0, 1.0, decay, true, rng);
}

inline SpectralField sum(const SpectralField& a, const SpectralField& b) {
    SpectralField out = a;
    for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] += b.coeffs[i];
    return out;
}

inline SpectralField diff(const SpectralField& a, const SpectralField& b) {
    SpectralField out = a;
    for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] -= b.coeffs[i];
    return out;
}

inline double max_abs_diff(const SpectralField& a, const SpectralField& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        m = std::max(m, std::abs(a.coeffs[i] - b.coeffs[i]));
    return m;
}

// Evaluates a pointwise function on the grid.
inline PhysicalField fill(const TorusGrid& grid,
                          const std::function<double(double, double, double)>& f) {
    PhysicalField out(grid);
    const int n = grid.n;
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        std::size_t rest = i;
        double x[3] = {0.0, 0.0, 0.0};
        for (int axis = grid.d - 1; axis >= 0; --axis) {
            x[axis] = 2.0 * kPi * static_cast<double>(rest % n) / n;
            rest /= n;
        }
        out.values[i] = f(x[0], x[1], x[2]);
    }
    return out;
}

// Composite-Simpson quadrature of f over [0, 2pi) with the normalized
// measure; the independent oracle for grid L^q norms (1d).
inline double quadrature_1d(const std::function<double(double)>& f, int panels = 20000) {
    const double h = 2.0 * kPi / panels;
    double acc = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double a = i * h;
        acc += f(a) + 4.0 * f(a + 0.5 * h) + f(a + h);
    }
    return acc * h / 6.0 / (2.0 * kPi);
}

}  // namespace fsas::test
