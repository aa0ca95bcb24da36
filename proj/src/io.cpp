#include "fsas/io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

static_assert(std::endian::native == std::endian::little,
              "snapshot payloads are written as native little-endian doubles");

namespace fsas {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::uint64_t fnv1a64(std::span<const unsigned char> bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string hex_digest(std::uint64_t h) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string file_digest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("file_digest: cannot open " + path.string());
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                     std::istreambuf_iterator<char>());
    return hex_digest(fnv1a64(bytes));
}

namespace {

void write_snapshot_impl(const std::filesystem::path& path, const TorusGrid& grid,
                         double t, bool spectral, const void* payload,
                         std::size_t payload_bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_snapshot: cannot open " + path.string());
    out << "fsas-snapshot 1\n"
        << "d " << grid.d << "\n"
        << "n " << grid.n << "\n"
        << "t " << format_g17(t) << "\n"
        << "space " << (spectral ? "spectral" : "physical") << "\n"
        << "layout row-major\n"
        << "element " << (spectral ? "complex128-le" : "float64-le") << "\n"
        << "payload-bytes " << payload_bytes << "\n";
    out.write(static_cast<const char*>(payload), static_cast<std::streamsize>(payload_bytes));
    if (!out) throw std::runtime_error("write_snapshot: write failed for " + path.string());
}

}  // namespace

void write_snapshot(const std::filesystem::path& path, const PhysicalField& f, double t) {
    write_snapshot_impl(path, f.grid, t, false, f.values.data(),
                        f.values.size() * sizeof(double));
}

void write_snapshot(const std::filesystem::path& path, const SpectralField& f, double t) {
    write_snapshot_impl(path, f.grid, t, true, f.coeffs.data(),
                        f.coeffs.size() * sizeof(std::complex<double>));
}

Snapshot read_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_snapshot: cannot open " + path.string());

    std::string magic, element, layout, space;
    int version = 0, d = 0, n = 0;
    double t = 0.0;
    std::size_t payload_bytes = 0;

    auto expect_key = [&](const char* key) {
        std::string k;
        in >> k;
        if (k != key)
            throw std::runtime_error("read_snapshot: malformed header (expected '" +
                                     std::string(key) + "', got '" + k + "')");
    };
    in >> magic >> version;
    if (magic != "fsas-snapshot" || version != 1)
        throw std::runtime_error("read_snapshot: not a version-1 snapshot file");
    expect_key("d");
    in >> d;
    expect_key("n");
    in >> n;
    expect_key("t");
    in >> t;
    expect_key("space");
    in >> space;
    expect_key("layout");
    in >> layout;
    expect_key("element");
    in >> element;
    expect_key("payload-bytes");
    in >> payload_bytes;
    in.get();  // newline before payload
    if (!in || layout != "row-major")
        throw std::runtime_error("read_snapshot: malformed header in " + path.string());

    Snapshot snap;
    snap.grid = TorusGrid(d, n);
    snap.t = t;
    snap.spectral = space == "spectral";
    const std::size_t N = snap.grid.size();
    const std::size_t expected =
        snap.spectral ? N * sizeof(std::complex<double>) : N * sizeof(double);
    if ((snap.spectral && element != "complex128-le") ||
        (!snap.spectral && element != "float64-le") || payload_bytes != expected)
        throw std::runtime_error("read_snapshot: payload description mismatch in " +
                                 path.string());

    if (snap.spectral) {
        snap.spec = SpectralField(snap.grid);
        in.read(reinterpret_cast<char*>(snap.spec.coeffs.data()),
                static_cast<std::streamsize>(expected));
    } else {
        snap.phys = PhysicalField(snap.grid);
        in.read(reinterpret_cast<char*>(snap.phys.values.data()),
                static_cast<std::streamsize>(expected));
    }
    if (!in) throw std::runtime_error("read_snapshot: truncated payload in " + path.string());
    return snap;
}

void write_diagnostics_csv(const std::filesystem::path& path,
                           std::span<const DiagnosticsRow> rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("write_diagnostics_csv: cannot open " + path.string());
    out << "step,t,l2,lq,h_alpha2,mean_mode,energy_residual,noise_energy\n";
    for (const auto& r : rows) {
        out << r.step << ',' << format_g17(r.t) << ',' << format_g17(r.l2) << ','
            << format_g17(r.lq) << ',' << format_g17(r.h_alpha2) << ','
            << format_g17(r.mean_mode) << ',' << format_g17(r.energy_residual) << ','
            << format_g17(r.noise_energy) << '\n';
    }
    if (!out)
        throw std::runtime_error("write_diagnostics_csv: write failed for " + path.string());
}

}  // namespace fsas
