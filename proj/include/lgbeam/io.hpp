#pragma once

#include "lgbeam/decompose.hpp"
#include "lgbeam/grid.hpp"
#include "lgbeam/hologram.hpp"
#include "lgbeam/scan.hpp"

#include <string>
#include <vector>

namespace lgbeam::io {

/// Field file format "FGRID v1": four-line text header (n, extent, z,
/// wavelength) followed by n*n "re,im" CSV lines in row-major order. All
/// numbers carry 17 significant digits so a round trip is bit-exact.
void write_fgrid(const FieldGridD& grid, double wavelength, const std::string& path);

struct LoadedField {
    FieldGridD grid;
    double wavelength;
};
LoadedField read_fgrid(const std::string& path);

/// 8-bit binary PGM of |u|^2, linearly scaled to the maximum intensity.
void write_intensity_pgm(const FieldGridD& grid, const std::string& path);

/// 8-bit binary PGM of arg(u), mapping [-pi, pi) onto [0, 255].
void write_phase_pgm(const FieldGridD& grid, const std::string& path);

/// Phase levels of a hologram template rendered over the window, scaled so
/// the deepest level maps to 255.
void write_hologram_pgm(const HologramSpecD& hologram, const GridSpecD& grid,
                        const std::string& path);

/// Scan CSV: d_over_w0, raw and max-normalized detector traces, and the three
/// secondary-channel weights. Column names label the channels relative to the
/// principal converted mode (m1 = its mirror, 02/0m2 = the doubled charges).
void write_scan_csv(const std::vector<ScanRecordD>& records, double w0, int principal_label,
                    const std::string& path);

void write_scan_summary_json(const ScanSummaryD& summary, double w0, const std::string& path);

/// Decomposition CSV: p, L, re, im, abs2, ordered by (p, L).
void write_decomposition_csv(const DecompositionRecordD& record, const std::string& path);

struct SingularityRow {
    double gamma;
    double phase;
    double r_pred;
    double theta_pred;
    double r_found;
    double theta_found;
    int winding;
};
void write_singularity_csv(const std::vector<SingularityRow>& rows, const std::string& path);

}  // namespace lgbeam::io
