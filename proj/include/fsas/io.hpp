#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>

#include "fsas/grid.hpp"
#include "fsas/integrator.hpp"

namespace fsas {

// 17-significant-digit, locale-independent number formatting used by every
// text artifact.
std::string format_g17(double v);

std::uint64_t fnv1a64(std::span<const unsigned char> bytes);
std::string hex_digest(std::uint64_t h);
std::string file_digest(const std::filesystem::path& path);

// Snapshot files: a text header (format version, d, n, t, space tag, layout,
// element type, payload size) followed by the raw little-endian payload.
struct Snapshot {
    TorusGrid grid;
    double t = 0.0;
    bool spectral = false;
    PhysicalField phys;  // when !spectral
    SpectralField spec;  // when spectral
};

void write_snapshot(const std::filesystem::path& path, const PhysicalField& f, double t);
void write_snapshot(const std::filesystem::path& path, const SpectralField& f, double t);
Snapshot read_snapshot(const std::filesystem::path& path);

// Diagnostics CSV with the fixed column order
// step,t,l2,lq,h_alpha2,mean_mode,energy_residual,noise_energy.
void write_diagnostics_csv(const std::filesystem::path& path,
                           std::span<const DiagnosticsRow> rows);

}  // namespace fsas
