#include "lgbeam/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <memory>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace lgbeam::io {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using File = std::unique_ptr<std::FILE, FileCloser>;

File open_write(const std::string& path, const char* mode = "w") {
    File f(std::fopen(path.c_str(), mode));
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    return f;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

[[noreturn]] void parse_fail(const std::string& path, int line, const std::string& what) {
    throw std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

void write_fgrid(const FieldGridD& grid, double wavelength, const std::string& path) {
    File f = open_write(path);
    std::fprintf(f.get(), "FGRID v1\n");
    std::fprintf(f.get(), "n %d\n", grid.n);
    std::fprintf(f.get(), "extent %s\n", fmt(grid.extent).c_str());
    std::fprintf(f.get(), "z %s\n", fmt(grid.z).c_str());
    std::fprintf(f.get(), "wavelength %s\n", fmt(wavelength).c_str());
    for (int i = 0; i < grid.n; ++i) {
        const auto* row = grid.values.row(i).data();
        for (int j = 0; j < grid.n; ++j)
            std::fprintf(f.get(), "%s,%s\n", fmt(row[j].real()).c_str(),
                         fmt(row[j].imag()).c_str());
    }
    if (std::ferror(f.get())) throw std::runtime_error("write failed: " + path);
}

LoadedField read_fgrid(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::string line;
    int lineno = 0;

    auto next_line = [&]() {
        if (!std::getline(in, line)) parse_fail(path, lineno + 1, "unexpected end of file");
        ++lineno;
    };

    next_line();
    if (line != "FGRID v1") parse_fail(path, lineno, "expected header 'FGRID v1'");

    auto header_value = [&](const char* key) -> std::string {
        next_line();
        const std::string prefix = std::string(key) + " ";
        if (line.rfind(prefix, 0) != 0)
            parse_fail(path, lineno, "expected header line '" + std::string(key) + " <value>'");
        return line.substr(prefix.size());
    };

    LoadedField out;
    int n = 0;
    try {
        n = std::stoi(header_value("n"));
        out.grid.extent = std::stod(header_value("extent"));
        out.grid.z = std::stod(header_value("z"));
        out.wavelength = std::stod(header_value("wavelength"));
    } catch (const std::exception&) {
        parse_fail(path, lineno, "malformed header value");
    }
    if (n < 2) parse_fail(path, 2, "n must be >= 2");
    if (!(out.grid.extent > 0)) parse_fail(path, 3, "extent must be > 0");
    out.grid.n = n;
    out.grid.values.resize(n, n);

    for (int i = 0; i < n; ++i) {
        auto* row = out.grid.values.row(i).data();
        for (int j = 0; j < n; ++j) {
            next_line();
            const auto comma = line.find(',');
            if (comma == std::string::npos) parse_fail(path, lineno, "expected 're,im'");
            try {
                row[j] = {std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1))};
            } catch (const std::exception&) {
                parse_fail(path, lineno, "malformed sample");
            }
        }
    }
    return out;
}

namespace {

/// Rows are written top-down, so the first PGM row is the largest y.
void write_pgm_bytes(const std::vector<std::uint8_t>& pixels, int n, const std::string& path) {
    File f = open_write(path, "wb");
    std::fprintf(f.get(), "P5\n%d %d\n255\n", n, n);
    if (std::fwrite(pixels.data(), 1, pixels.size(), f.get()) != pixels.size())
        throw std::runtime_error("write failed: " + path);
}

}  // namespace

void write_intensity_pgm(const FieldGridD& grid, const std::string& path) {
    double peak = 0;
    for (int i = 0; i < grid.n; ++i)
        for (int j = 0; j < grid.n; ++j) peak = std::max(peak, std::norm(grid.values(i, j)));
    std::vector<std::uint8_t> pixels(static_cast<size_t>(grid.n) * grid.n, 0);
    if (peak > 0) {
        size_t k = 0;
        for (int i = grid.n - 1; i >= 0; --i)
            for (int j = 0; j < grid.n; ++j)
                pixels[k++] = static_cast<std::uint8_t>(
                    std::lround(255.0 * std::norm(grid.values(i, j)) / peak));
    }
    write_pgm_bytes(pixels, grid.n, path);
}

void write_phase_pgm(const FieldGridD& grid, const std::string& path) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    std::vector<std::uint8_t> pixels(static_cast<size_t>(grid.n) * grid.n);
    size_t k = 0;
    for (int i = grid.n - 1; i >= 0; --i)
        for (int j = 0; j < grid.n; ++j) {
            const double phi = std::arg(grid.values(i, j));
            const int level = static_cast<int>(std::floor((phi + std::numbers::pi) / two_pi * 256.0));
            pixels[k++] = static_cast<std::uint8_t>(std::clamp(level, 0, 255));
        }
    write_pgm_bytes(pixels, grid.n, path);
}

void write_hologram_pgm(const HologramSpecD& hologram, const GridSpecD& grid,
                        const std::string& path) {
    hologram.validate();
    grid.validate();
    std::vector<double> phase(static_cast<size_t>(grid.n) * grid.n);
    double peak = 0;
    size_t k = 0;
    for (int i = grid.n - 1; i >= 0; --i)
        for (int j = 0; j < grid.n; ++j) {
            const double p = transmission_phase(hologram, grid.coord(j), grid.coord(i));
            phase[k++] = p;
            peak = std::max(peak, p);
        }
    std::vector<std::uint8_t> pixels(phase.size(), 0);
    if (peak > 0)
        for (size_t m = 0; m < phase.size(); ++m)
            pixels[m] = static_cast<std::uint8_t>(std::lround(255.0 * phase[m] / peak));
    write_pgm_bytes(pixels, grid.n, path);
}

void write_scan_csv(const std::vector<ScanRecordD>& records, double w0, int principal_label,
                    const std::string& path) {
    double max_g = 0, max_l = 0;
    for (const auto& r : records) {
        max_g = std::max(max_g, r.i_gauss);
        max_l = std::max(max_l, r.i_lg);
    }
    const auto labels = secondary_labels(principal_label);
    File f = open_write(path);
    std::fprintf(f.get(),
                 "d_over_w0,i_gauss_raw,i_lg_raw,i_gauss_norm,i_lg_norm,a2_0m1,a2_02,a2_0m2\n");
    for (const auto& r : records) {
        const double ng = max_g > 0 ? r.i_gauss / max_g : 0.0;
        const double nl = max_l > 0 ? r.i_lg / max_l : 0.0;
        auto weight = [&r](int L) {
            auto it = r.higher.find(L);
            return it == r.higher.end() ? 0.0 : it->second;
        };
        std::fprintf(f.get(), "%s,%s,%s,%s,%s,%s,%s,%s\n", fmt(r.displacement / w0).c_str(),
                     fmt(r.i_gauss).c_str(), fmt(r.i_lg).c_str(), fmt(ng).c_str(),
                     fmt(nl).c_str(), fmt(weight(labels[0])).c_str(),
                     fmt(weight(labels[1])).c_str(), fmt(weight(labels[2])).c_str());
    }
    if (std::ferror(f.get())) throw std::runtime_error("write failed: " + path);
}

void write_scan_summary_json(const ScanSummaryD& summary, double w0, const std::string& path) {
    File f = open_write(path);
    std::fprintf(f.get(), "{\n");
    std::fprintf(f.get(), "  \"crossover_over_w0\": %s,\n",
                 fmt(summary.crossover_displacement / w0).c_str());
    std::fprintf(f.get(), "  \"extinction_gauss\": %s,\n", fmt(summary.extinction_gauss).c_str());
    std::fprintf(f.get(), "  \"extinction_lg\": %s,\n", fmt(summary.extinction_lg).c_str());
    std::fprintf(f.get(), "  \"unitarity_min\": %s\n", fmt(summary.unitarity_min).c_str());
    std::fprintf(f.get(), "}\n");
    if (std::ferror(f.get())) throw std::runtime_error("write failed: " + path);
}

void write_decomposition_csv(const DecompositionRecordD& record, const std::string& path) {
    File f = open_write(path);
    std::fprintf(f.get(), "p,L,re,im,abs2\n");
    for (const auto& [key, a] : record.coefficients)
        std::fprintf(f.get(), "%d,%d,%s,%s,%s\n", key.first, key.second, fmt(a.real()).c_str(),
                     fmt(a.imag()).c_str(), fmt(std::norm(a)).c_str());
    if (std::ferror(f.get())) throw std::runtime_error("write failed: " + path);
}

void write_singularity_csv(const std::vector<SingularityRow>& rows, const std::string& path) {
    File f = open_write(path);
    std::fprintf(f.get(), "gamma,phase_rad,r_pred,theta_pred,r_found,theta_found,winding\n");
    for (const auto& r : rows)
        std::fprintf(f.get(), "%s,%s,%s,%s,%s,%s,%d\n", fmt(r.gamma).c_str(),
                     fmt(r.phase).c_str(), fmt(r.r_pred).c_str(), fmt(r.theta_pred).c_str(),
                     fmt(r.r_found).c_str(), fmt(r.theta_found).c_str(), r.winding);
    if (std::ferror(f.get())) throw std::runtime_error("write failed: " + path);
}

}  // namespace lgbeam::io
