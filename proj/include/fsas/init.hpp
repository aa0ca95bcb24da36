#pragma once

#include <string>

#include "fsas/noise.hpp"

namespace fsas {

// Initial-data constructions: a single trigonometric mode, a spectrally
// filtered Gaussian field rescaled to a prescribed H^{s,q} norm, or a field
// loaded from a snapshot file.
struct InitSpec {
    enum class Type { Mode, FilteredRandom, File };
    Type type = Type::Mode;

    // Mode: theta0 = amplitude * cos(k.x + phase).
    std::array<int, 3> k{1, 0, 0};
    double amplitude = 1.0;
    double phase = 0.0;

    // FilteredRandom: Gaussian coefficients shaped by (1+|k|^2)^{-decay/2}
    // inside the dealiased band, rescaled so |theta0|_{H^{s,q}} = target_norm.
    double s = 0.0;
    double q = 2.0;
    double target_norm = 1.0;
    double decay = 2.0;
    bool mean_zero = true;
    bool per_trajectory = false;  // redraw from each trajectory's stream

    std::string path;  // File
};

SpectralField make_mode_field(const TorusGrid& grid, const std::array<int, 3>& k,
                              double amplitude, double phase = 0.0);

SpectralField make_filtered_random(const TorusGrid& grid, double s, double q,
                                   double target_norm, double decay, bool mean_zero,
                                   RngStream& rng);

SpectralField make_initial(const InitSpec& spec, const TorusGrid& grid, RngStream& rng);

}  // namespace fsas
