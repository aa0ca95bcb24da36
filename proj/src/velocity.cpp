#include "fsas/velocity.hpp"

#include <cmath>

#include "fsas/operators.hpp"
#include "fsas/transform.hpp"

namespace fsas {

const char* mode_name(ModeTag tag) {
    switch (tag) {
        case ModeTag::Ca: return "C_a";
        case ModeTag::Cb: return "C_b";
        case ModeTag::Cc: return "C_c";
    }
    return "?";
}

bool VelocityLaw::divergence_free() const {
    if (family != LawFamily::Rot) return false;
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            if (S[i][j] + S[j][i] != 0.0) return false;
    return true;
}

VelocityLaw preset(const std::string& name, double gamma) {
    VelocityLaw law;
    law.name = name;
    if (name == "sqg") {
        law.family = LawFamily::Rot;
        law.dim = 2;
        law.gamma = 1.0;
        law.S[0][1] = -1.0;
        law.S[1][0] = 1.0;
    } else if (name == "modified_qg") {
        if (!(gamma >= 1.0 && gamma <= 2.0))
            throw std::invalid_argument("preset: modified_qg needs gamma in [1, 2]");
        law.family = LawFamily::Rot;
        law.dim = 2;
        law.gamma = gamma;
        law.S[0][1] = -1.0;
        law.S[1][0] = 1.0;
    } else if (name == "nse_vorticity_2d") {
        // Sign of S absorbs theta = Laplace psi (instead of theta = -Laplace psi).
        law.family = LawFamily::Rot;
        law.dim = 2;
        law.gamma = 2.0;
        law.S[0][1] = 1.0;
        law.S[1][0] = -1.0;
    } else if (name == "burgers_1d") {
        law.family = LawFamily::Loc;
        law.dim = 1;
        law.gamma = 1.0;
        law.sigma[0] = 1.0;
    } else if (name == "hilbert_transport_1d") {
        // u = H theta, the classical Hilbert transform (symbol -i sign k), so
        // that velocity(sin x) = -cos x.
        law.family = LawFamily::Rot;
        law.dim = 1;
        law.gamma = 1.0;
        law.S[0][0] = -1.0;
    } else {
        throw std::invalid_argument("preset: unknown velocity law '" + name + "'");
    }
    return law;
}

std::vector<std::complex<double>> velocity_symbol(const TorusGrid& grid,
                                                  const VelocityLaw& law, int component) {
    if (law.dim != grid.d)
        throw std::invalid_argument("velocity_symbol: law dimension does not match grid");
    if (component < 0 || component >= law.dim)
        throw std::invalid_argument("velocity_symbol: component out of range");

    const int nyq = grid.n / 2;
    std::vector<std::complex<double>> sym(grid.size(), 0.0);
    for (std::size_t i = 0; i < sym.size(); ++i) {
        const auto k = grid.wavevector(i);
        const double k2 = grid.k_squared(i);
        if (k2 == 0.0) {
            if (law.family == LawFamily::Loc && law.gamma == 1.0)
                sym[i] = law.sigma[component];
            continue;
        }
        if (law.family == LawFamily::Rot) {
            bool self_conjugate = false;
            for (int axis = 0; axis < grid.d; ++axis)
                if (std::abs(k[axis]) == nyq) self_conjugate = true;
            if (self_conjugate) continue;  // imaginary symbol, see gradient_component
            double sk = 0.0;
            for (int l = 0; l < grid.d; ++l) sk += law.S[component][l] * k[l];
            sym[i] = std::complex<double>(0.0, sk * std::pow(k2, -0.5 * law.gamma));
        } else {
            sym[i] = law.sigma[component] * std::pow(k2, 0.5 * (1.0 - law.gamma));
        }
    }
    return sym;
}

std::vector<SpectralField> velocity(const SpectralField& theta, const VelocityLaw& law) {
    std::vector<SpectralField> u(law.dim, SpectralField(theta.grid));
    for (int j = 0; j < law.dim; ++j) {
        const auto sym = velocity_symbol(theta.grid, law, j);
        for (std::size_t i = 0; i < sym.size(); ++i)
            u[j].coeffs[i] = sym[i] * theta.coeffs[i];
    }
    return u;
}

SpectralField divergence(std::span<const SpectralField> u) {
    if (u.empty()) throw std::invalid_argument("divergence: no components");
    const TorusGrid& grid = u[0].grid;
    if (static_cast<int>(u.size()) != grid.d)
        throw std::invalid_argument("divergence: component count does not match grid");
    for (const auto& c : u)
        if (!(c.grid == grid)) throw std::invalid_argument("divergence: mismatched grids");

    SpectralField out(grid);
    for (int j = 0; j < grid.d; ++j) {
        SpectralField dj = gradient_component(u[j], j);
        for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] += dj.coeffs[i];
    }
    return out;
}

NonlinearEvaluator::NonlinearEvaluator(const TorusGrid& grid, const VelocityLaw& law)
    : grid_(grid), law_(law) {
    const std::size_t N = grid.size();
    const int kcut = dealias_limit(grid);
    const int nyq = grid.n / 2;
    keep_.resize(N);
    for (int j = 0; j < grid.d; ++j) {
        vel_sym_[j] = velocity_symbol(grid, law, j);
        grad_sym_[j].assign(N, 0.0);
    }
    for (std::size_t i = 0; i < N; ++i) {
        const auto k = grid.wavevector(i);
        bool keep = true;
        for (int axis = 0; axis < grid.d; ++axis)
            if (std::abs(k[axis]) > kcut) { keep = false; break; }
        keep_[i] = keep ? 1 : 0;
        for (int j = 0; j < grid.d; ++j)
            if (k[j] != nyq) grad_sym_[j][i] = std::complex<double>(0.0, k[j]);
    }
}

SpectralField NonlinearEvaluator::operator()(const SpectralField& theta) const {
    if (!(theta.grid == grid_))
        throw std::invalid_argument("NonlinearEvaluator: grid mismatch");
    const std::size_t N = grid_.size();

    SpectralField th(grid_);
    for (std::size_t i = 0; i < N; ++i)
        th.coeffs[i] = keep_[i] ? theta.coeffs[i] : 0.0;

    PhysicalField prod(grid_);
    SpectralField work(grid_);
    for (int j = 0; j < grid_.d; ++j) {
        for (std::size_t i = 0; i < N; ++i) work.coeffs[i] = vel_sym_[j][i] * th.coeffs[i];
        const PhysicalField uj = to_physical(work);
        for (std::size_t i = 0; i < N; ++i) work.coeffs[i] = grad_sym_[j][i] * th.coeffs[i];
        const PhysicalField gj = to_physical(work);
        for (std::size_t i = 0; i < N; ++i) prod.values[i] += uj.values[i] * gj.values[i];
    }
    for (double v : prod.values)
        if (!std::isfinite(v))
            throw OverflowError("nonlinear_term: non-finite product (numerical blow-up)");

    SpectralField out = to_spectral(prod);
    for (std::size_t i = 0; i < N; ++i)
        if (!keep_[i]) out.coeffs[i] = 0.0;
    return out;
}

SpectralField nonlinear_term(const SpectralField& theta, const VelocityLaw& law) {
    return NonlinearEvaluator(theta.grid, law)(theta);
}

ModeCategory classify_mode(const VelocityLaw& law) {
    if (law.divergence_free()) return ModeCategory{ModeTag::Ca};
    return ModeCategory{law.declared == ModeTag::Ca ? ModeTag::Cb : law.declared};
}

}  // namespace fsas
