#pragma once

#include <span>
#include <string>

#include "fsas/errors.hpp"
#include "fsas/grid.hpp"

namespace fsas {

enum class LawFamily { Rot, Loc };
enum class ModeTag { Ca, Cb, Cc };

const char* mode_name(ModeTag tag);

struct ModeCategory {
    ModeTag tag = ModeTag::Cb;
    // Minimal admissible initial smoothness: delta >= 0 for Ca/Cb, delta > 1/2
    // for Cc.
    double delta_floor() const { return tag == ModeTag::Cc ? 0.5 : 0.0; }
    bool admits(double delta) const {
        return tag == ModeTag::Cc ? delta > 0.5 : delta >= 0.0;
    }
};

// The constitutive map theta -> u as a vector of Fourier multipliers.
//   Rot: uhat_j(k) = i (S k)_j |k|^{-gamma} thetahat(k), uhat(0) = 0.
//   Loc: uhat_j(k) = sigma_j |k|^{1-gamma} thetahat(k); at k = 0 the value is
//        sigma_j thetahat(0) when gamma = 1 and 0 otherwise.
// Divergence-free exactly when the family is Rot with antisymmetric S.
struct VelocityLaw {
    LawFamily family = LawFamily::Rot;
    int dim = 2;
    double gamma = 1.0;
    std::array<std::array<double, 3>, 3> S{};   // Rot only
    std::array<double, 3> sigma{};              // Loc only
    ModeTag declared = ModeTag::Cb;             // tag used when not divergence-free
    std::string name;

    bool divergence_free() const;
};

// Presets: sqg, modified_qg (gamma in [1,2]), nse_vorticity_2d, burgers_1d,
// hilbert_transport_1d. gamma is consulted only by modified_qg.
VelocityLaw preset(const std::string& name, double gamma = 1.0);

// Per-component Fourier symbol of the law on a concrete grid.
std::vector<std::complex<double>> velocity_symbol(const TorusGrid& grid,
                                                  const VelocityLaw& law, int component);

std::vector<SpectralField> velocity(const SpectralField& theta, const VelocityLaw& law);

SpectralField divergence(std::span<const SpectralField> u);

// B(theta) = u . grad theta, computed pseudo-spectrally with two-thirds
// dealiasing before and after the physical-space product. The evaluator form
// precomputes the symbol tables for repeated stepping.
class NonlinearEvaluator {
public:
    NonlinearEvaluator(const TorusGrid& grid, const VelocityLaw& law);
    SpectralField operator()(const SpectralField& theta) const;

private:
    TorusGrid grid_;
    VelocityLaw law_;
    std::vector<std::complex<double>> vel_sym_[3];
    std::vector<std::complex<double>> grad_sym_[3];
    std::vector<char> keep_;
};

SpectralField nonlinear_term(const SpectralField& theta, const VelocityLaw& law);

ModeCategory classify_mode(const VelocityLaw& law);

}  // namespace fsas
