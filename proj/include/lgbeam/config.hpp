#pragma once

#include "lgbeam/grid.hpp"
#include "lgbeam/hologram.hpp"
#include "lgbeam/modes.hpp"
#include "lgbeam/superpose.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace lgbeam {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Run configuration, loaded from a single JSON document. Lengths other than
/// w0 and wavelength are given in units of w0 (keys carry the _over_w0
/// suffix); parsing resolves them to absolute lengths. Unknown keys anywhere
/// in the document are rejected.
struct RunConfig {
    int grid_n = 1024;
    double extent_over_w0 = 8.0;
    BeamSpecD beam;
    std::optional<HologramSpecD> hologram;

    struct Scan {
        double axis_x = 1.0;
        double axis_y = 0.0;
        double start_over_w0 = -2.0;
        double stop_over_w0 = 2.0;
        int steps = 81;
        bool detect_gauss = true;
        bool detect_lg = true;
        bool detect_higher = true;
    };
    std::optional<Scan> scan;

    struct Interferometer {
        InterferometerArmD arm_a;
        InterferometerArmD arm_b;
    };
    std::optional<Interferometer> interferometer;

    std::string output_dir = "out";

    GridSpecD grid(double z = 0.0) const { return {grid_n, extent_over_w0 * beam.w0, z}; }
    LGModeSpecD mode(int p, int l) const { return {p, l, beam.w0, beam.wavelength}; }
};

/// Parse and validate a config document. Throws ConfigError with the JSON
/// path of the offending key.
RunConfig parse_config(const std::string& json_text);

/// Load from a file; parse errors carry the file position.
RunConfig load_config(const std::string& path);

}  // namespace lgbeam
