#include "fsas/transform.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

namespace fsas {
namespace detail {

namespace {

struct PlanCache {
    std::mutex mtx;
    std::map<std::tuple<int, int, int>, fftw_plan> plans;

    fftw_plan get(const TorusGrid& grid, int sign) {
        std::lock_guard<std::mutex> lock(mtx);
        auto key = std::make_tuple(grid.d, grid.n, sign);
        auto it = plans.find(key);
        if (it != plans.end()) return it->second;
        // FFTW_UNALIGNED lets the cached plan run on any caller buffer via
        // the new-array execute interface.
        std::vector<std::complex<double>> scratch(grid.size());
        int dims[3] = {grid.n, grid.n, grid.n};
        fftw_plan p = fftw_plan_dft(
            grid.d, dims, reinterpret_cast<fftw_complex*>(scratch.data()),
            reinterpret_cast<fftw_complex*>(scratch.data()),
            sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
            FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans.emplace(key, p);
        return p;
    }
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

}  // namespace

void fft(const TorusGrid& grid, const std::complex<double>* in,
         std::complex<double>* out, int sign) {
    fftw_plan p = cache().get(grid, sign);
    fftw_execute_dft(
        p,
        reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
        reinterpret_cast<fftw_complex*>(out));
}

}  // namespace detail

SpectralField to_spectral(const PhysicalField& f) {
    const std::size_t N = f.grid.size();
    if (f.values.size() != N)
        throw std::invalid_argument("to_spectral: value count does not match grid");
    std::vector<std::complex<double>> buf(N);
    for (std::size_t i = 0; i < N; ++i) {
        if (!std::isfinite(f.values[i]))
            throw std::invalid_argument("to_spectral: non-finite input value");
        buf[i] = f.values[i];
    }
    SpectralField out(f.grid);
    detail::fft(f.grid, buf.data(), out.coeffs.data(), -1);
    const double scale = 1.0 / static_cast<double>(N);
    for (auto& c : out.coeffs) c *= scale;
    return out;
}

PhysicalField to_physical(const SpectralField& f) {
    const std::size_t N = f.grid.size();
    if (f.coeffs.size() != N)
        throw std::invalid_argument("to_physical: coefficient count does not match grid");

    double maxabs = 0.0;
    for (const auto& c : f.coeffs) maxabs = std::max(maxabs, std::abs(c));
    const double tol = 1e-10 * std::max(1.0, maxabs);

    std::vector<std::complex<double>> sym(N);
    for (std::size_t i = 0; i < N; ++i) {
        const std::size_t j = f.grid.conj_index(i);
        const std::complex<double> mirror = std::conj(f.coeffs[j]);
        if (std::abs(f.coeffs[i] - mirror) > tol)
            throw std::invalid_argument(
                "to_physical: coefficients are not Hermitian-symmetric (corrupted state)");
        sym[i] = 0.5 * (f.coeffs[i] + mirror);
    }

    std::vector<std::complex<double>> buf(N);
    detail::fft(f.grid, sym.data(), buf.data(), +1);
    PhysicalField out(f.grid);
    for (std::size_t i = 0; i < N; ++i) out.values[i] = buf[i].real();
    return out;
}

}  // namespace fsas
