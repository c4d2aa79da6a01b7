// lgbeam: prepare and analyze Gaussian / vortex-mode superpositions produced
// by displaced fork holograms, on sampled complex fields.
//
// Subcommands: render-mode, hologram, scan, singularity, interfere, decompose.
// Exit codes: 0 success, 2 configuration or usage error, 3 numerical guard
// failure (requested grid cannot represent the requested fields).

#include "lgbeam/config.hpp"
#include "lgbeam/decompose.hpp"
#include "lgbeam/io.hpp"
#include "lgbeam/scan.hpp"
#include "lgbeam/singularity.hpp"
#include "lgbeam/superpose.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace lgbeam;

namespace {

struct GuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string config_path;
    std::string out_override;
    int grid_n_override = 0;
    bool quiet = false;
};

void note(const Options& opt, const std::string& msg) {
    if (!opt.quiet) std::printf("%s\n", msg.c_str());
}

/// Normalized basis modes must integrate to ~1 on the requested window; a
/// larger deviation means the grid is too small or too coarse for the mode.
void guard_mode_power(const FieldGridD& field, const std::string& what) {
    const double p = power(field);
    if (std::abs(p - 1.0) > 1e-3) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "%s: discrete power %.6f deviates from 1 by more than 1e-3; "
                      "increase grid n or extent_over_w0",
                      what.c_str(), p);
        throw GuardError(buf);
    }
}

fs::path ensure_outdir(const RunConfig& cfg, const Options& opt) {
    const fs::path dir = opt.out_override.empty() ? fs::path(cfg.output_dir)
                                                  : fs::path(opt.out_override);
    fs::create_directories(dir);
    return dir;
}

RunConfig load(const Options& opt) {
    if (opt.config_path.empty()) throw ConfigError("--config is required");
    RunConfig cfg = load_config(opt.config_path);
    if (opt.grid_n_override > 0) {
        if (opt.grid_n_override < 2) throw ConfigError("--grid-n: must be >= 2");
        cfg.grid_n = opt.grid_n_override;
    }
    return cfg;
}

void cmd_render_mode(const Options& opt, int p, int l, double z_over_zr) {
    const RunConfig cfg = load(opt);
    const LGModeSpecD mode = cfg.mode(p, l);
    mode.validate();
    const double zR = std::numbers::pi * cfg.beam.w0 * cfg.beam.w0 / cfg.beam.wavelength;
    const double z = z_over_zr * zR;
    // Window follows the spot size so defocused modes stay resolved.
    GridSpecD grid = cfg.grid(z);
    grid.extent = cfg.extent_over_w0 * beam_geometry(cfg.beam, z).w;

    const FieldGridD field = sample_mode(mode, grid);
    guard_mode_power(field, "render-mode");

    const fs::path dir = ensure_outdir(cfg, opt);
    const std::string stem = "mode_p" + std::to_string(p) + "_l" + std::to_string(l);
    io::write_fgrid(field, cfg.beam.wavelength, (dir / (stem + ".fgrid")).string());
    io::write_intensity_pgm(field, (dir / (stem + "_intensity.pgm")).string());
    io::write_phase_pgm(field, (dir / (stem + "_phase.pgm")).string());
    note(opt, "wrote " + (dir / stem).string() + ".fgrid/_intensity.pgm/_phase.pgm");
}

void cmd_hologram(const Options& opt) {
    const RunConfig cfg = load(opt);
    if (!cfg.hologram) throw ConfigError("hologram: section required for this command");
    const GridSpecD grid = cfg.grid(0.0);
    const fs::path dir = ensure_outdir(cfg, opt);
    HologramSpecD h = *cfg.hologram;
    h.profile = Profile::binary;
    io::write_hologram_pgm(h, grid, (dir / "hologram_binary.pgm").string());
    h.profile = Profile::blazed;
    io::write_hologram_pgm(h, grid, (dir / "hologram_blazed.pgm").string());
    note(opt, "wrote " + (dir / "hologram_{binary,blazed}.pgm").string());
}

void cmd_scan(const Options& opt) {
    const RunConfig cfg = load(opt);
    if (!cfg.hologram) throw ConfigError("hologram: section required for this command");
    if (!cfg.scan) throw ConfigError("scan: section required for this command");

    ScanSpecD spec;
    spec.axis_x = cfg.scan->axis_x;
    spec.axis_y = cfg.scan->axis_y;
    spec.start = cfg.scan->start_over_w0 * cfg.beam.w0;
    spec.stop = cfg.scan->stop_over_w0 * cfg.beam.w0;
    spec.steps = cfg.scan->steps;
    spec.hologram = *cfg.hologram;
    spec.input = cfg.mode(0, 0);
    spec.grid = cfg.grid(0.0);
    spec.detect_gauss = cfg.scan->detect_gauss;
    spec.detect_lg = cfg.scan->detect_lg;
    spec.detect_higher = cfg.scan->detect_higher;
    spec.validate();

    guard_mode_power(sample_mode(spec.input, spec.grid), "scan input");
    if (spec.hologram.depth_flagged())
        std::fprintf(stderr, "note: hologram depth exceeds 2 pi\n");

    const std::vector<ScanRecordD> records = run_scan(spec);
    const ScanSummaryD summary = summarize_scan(records);

    const fs::path dir = ensure_outdir(cfg, opt);
    io::write_scan_csv(records, cfg.beam.w0, spec.principal_label(),
                       (dir / "scan.csv").string());
    io::write_scan_summary_json(summary, cfg.beam.w0, (dir / "scan_summary.json").string());
    note(opt, "wrote " + (dir / "scan.csv").string() + " and scan_summary.json");
}

void cmd_singularity(const Options& opt, std::vector<double> gammas,
                     std::vector<double> phases) {
    const RunConfig cfg = load(opt);
    if (gammas.empty() || phases.empty())
        throw ConfigError("singularity: need at least one --gamma and one --phase");
    for (double g : gammas)
        if (!(g > 0)) throw ConfigError("singularity: gamma values must be > 0");
    std::sort(gammas.begin(), gammas.end());
    std::sort(phases.begin(), phases.end());

    const GridSpecD grid = cfg.grid(0.0);
    const LGModeSpecD mode0 = cfg.mode(0, 0);
    const LGModeSpecD mode1 = cfg.mode(0, 1);
    guard_mode_power(sample_mode(mode0, grid), "singularity input");

    std::vector<io::SingularityRow> rows;
    for (double g : gammas)
        for (double ph : phases) {
            const auto spec = SuperpositionSpecD::from_ratio(g, ph);
            const FieldGridD field = make_superposition(spec, mode0, mode1, grid);
            const auto pred = singularity_prediction(g, ph, cfg.beam.w0);
            const auto report = find_singularities(field);
            if (report.found.empty())
                throw GuardError("singularity: no phase singularity resolved on this grid");
            // nearest to the prediction
            const double px = pred.r * std::cos(pred.theta);
            const double py = pred.r * std::sin(pred.theta);
            const auto best = *std::min_element(
                report.found.begin(), report.found.end(), [&](const auto& a, const auto& b) {
                    return std::hypot(a.x - px, a.y - py) < std::hypot(b.x - px, b.y - py);
                });
            rows.push_back({g, ph, pred.r, pred.theta, std::hypot(best.x, best.y),
                            std::atan2(best.y, best.x), best.winding});
        }

    const fs::path dir = ensure_outdir(cfg, opt);
    io::write_singularity_csv(rows, (dir / "singularity.csv").string());
    note(opt, "wrote " + (dir / "singularity.csv").string());
}

void cmd_interfere(const Options& opt) {
    const RunConfig cfg = load(opt);
    if (!cfg.interferometer) throw ConfigError("interferometer: section required for this command");
    const GridSpecD grid = cfg.grid(0.0);
    const FieldGridD input = sample_mode(cfg.mode(0, 0), grid);
    guard_mode_power(input, "interfere input");

    const FieldGridD out =
        mach_zehnder(input, cfg.interferometer->arm_a, cfg.interferometer->arm_b);
    const DecompositionRecordD dec = full_decomposition(out, cfg.beam);

    const fs::path dir = ensure_outdir(cfg, opt);
    io::write_fgrid(out, cfg.beam.wavelength, (dir / "interfere.fgrid").string());
    io::write_intensity_pgm(out, (dir / "interfere_intensity.pgm").string());
    io::write_phase_pgm(out, (dir / "interfere_phase.pgm").string());
    io::write_decomposition_csv(dec, (dir / "interfere_decomposition.csv").string());
    note(opt, "wrote " + (dir / "interfere").string() + ".fgrid/_intensity.pgm/_phase.pgm and decomposition");
}

void cmd_decompose(const Options& opt, const std::string& in_path, double d_over_w0) {
    const RunConfig cfg = load(opt);
    FieldGridD field;
    if (!in_path.empty()) {
        auto loaded = io::read_fgrid(in_path);
        field = std::move(loaded.grid);
        if (field.z != 0.0)
            throw ConfigError("decompose: input field must be sampled at the waist (z = 0)");
    } else {
        if (!cfg.hologram) throw ConfigError("hologram: section required without --in");
        HologramSpecD h = *cfg.hologram;
        h.x0 += d_over_w0 * cfg.beam.w0;
        const FieldGridD input = sample_mode(cfg.mode(0, 0), cfg.grid(0.0));
        guard_mode_power(input, "decompose input");
        field = apply_hologram(input, h, 1);
    }
    DecompositionRecordD dec = full_decomposition(field, cfg.beam);
    if (cfg.hologram) {
        dec.x0 = cfg.hologram->x0 + (in_path.empty() ? d_over_w0 * cfg.beam.w0 : 0.0);
        dec.y0 = cfg.hologram->y0;
    }

    const fs::path dir = ensure_outdir(cfg, opt);
    io::write_decomposition_csv(dec, (dir / "decomposition.csv").string());
    note(opt, "wrote " + (dir / "decomposition.csv").string());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Vortex-mode superpositions from displaced fork holograms"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--config", opt.config_path, "Run configuration (JSON)");
    app.add_option("--out", opt.out_override, "Override output directory");
    app.add_option("--grid-n", opt.grid_n_override, "Override grid sample count");
    app.add_flag("--quiet", opt.quiet, "Suppress progress output");

    int mode_p = 0, mode_l = 0;
    double z_over_zr = 0.0;
    auto* render = app.add_subcommand("render-mode", "Sample one basis mode to FGRID and PGM");
    render->add_option("--p", mode_p, "Radial index")->required();
    render->add_option("--l", mode_l, "Azimuthal index")->required();
    render->add_option("--z-over-zr", z_over_zr, "Axial plane in Rayleigh lengths");

    auto* holo = app.add_subcommand("hologram", "Export binary and blazed fork templates");

    auto* scan = app.add_subcommand("scan", "Displacement sweep with detector traces");

    std::vector<double> gammas, phases;
    auto* sing = app.add_subcommand("singularity", "Dark-point positions of superpositions");
    sing->add_option("--gamma", gammas, "Amplitude ratio (repeatable)")->expected(-1);
    sing->add_option("--phase", phases, "Relative phase in radians (repeatable)")->expected(-1);

    auto* mz = app.add_subcommand("interfere", "Mach-Zehnder output field and decomposition");

    std::string in_path;
    double d_over_w0 = 0.0;
    auto* dec = app.add_subcommand("decompose", "Modal coefficients of a field");
    dec->add_option("--in", in_path, "FGRID file to decompose (default: hologram output)");
    dec->add_option("--d-over-w0", d_over_w0, "Extra hologram displacement along +x");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (render->parsed()) cmd_render_mode(opt, mode_p, mode_l, z_over_zr);
        if (holo->parsed()) cmd_hologram(opt);
        if (scan->parsed()) cmd_scan(opt);
        if (sing->parsed()) cmd_singularity(opt, gammas, phases);
        if (mz->parsed()) cmd_interfere(opt);
        if (dec->parsed()) cmd_decompose(opt, in_path, d_over_w0);
    } catch (const GuardError& e) {
        std::fprintf(stderr, "numerical guard: %s\n", e.what());
        return 3;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
