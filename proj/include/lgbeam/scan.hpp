#pragma once

#include "lgbeam/decompose.hpp"
#include "lgbeam/grid.hpp"
#include "lgbeam/hologram.hpp"
#include "lgbeam/modes.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace lgbeam {

/// Displacement sweep of a fork hologram across the input beam. The hologram
/// template's own (x0, y0) is the scan origin; displacements move along
/// `axis`. The dislocation moves, the beam stays on axis.
template <typename Scalar = double>
struct ScanSpec {
    Scalar axis_x = Scalar(1);
    Scalar axis_y = Scalar(0);
    Scalar start = Scalar(-2);
    Scalar stop = Scalar(2);
    int steps = 81;
    HologramSpec<Scalar> hologram;
    LGModeSpec<Scalar> input;
    GridSpec<Scalar> grid;
    int order = 1;
    bool detect_gauss = true;
    bool detect_lg = true;
    bool detect_higher = true;

    void validate() const {
        if (steps < 2) throw std::invalid_argument("ScanSpec: steps must be >= 2");
        if (!(stop > start)) throw std::invalid_argument("ScanSpec: stop must exceed start");
        const Scalar a = std::hypot(axis_x, axis_y);
        if (!(a > Scalar(0))) throw std::invalid_argument("ScanSpec: axis must be nonzero");
        hologram.validate();
        input.validate();
        grid.validate();
        if (grid.z != Scalar(0))
            throw std::invalid_argument("ScanSpec: hologram sits at the waist, grid.z must be 0");
    }

    /// Mode label of the principal diffracted channel: order n of a dm fork
    /// multiplies by e^{+i n dm phi}, lowering l by n dm.
    int principal_label() const { return -order * hologram.dm; }
};

/// Per-displacement detector intensities. `higher` holds |a(0, L)|^2 for the
/// three secondary azimuthal channels, keyed by the mode label L; `unitarity`
/// is the coefficient sum over |L| <= 3, p <= 6.
template <typename Scalar = double>
struct ScanRecord {
    Scalar displacement;
    Scalar i_gauss = Scalar(0);
    Scalar i_lg = Scalar(0);
    std::map<int, Scalar> higher;
    Scalar unitarity = Scalar(0);
};

/// Secondary channels shown alongside the principal one: its mirror and the
/// two doubled-charge labels.
inline std::array<int, 3> secondary_labels(int principal) {
    return {-principal, 2 * principal, -2 * principal};
}

/// Sweep the hologram, keep the demodulated diffraction order, and record the
/// detector responses. The Gauss detector is the fiber coupling |a(0,0)|^2;
/// the LG detector projects on the far-field analyzer chain
/// (lg_detector_mode), matching a detection hologram far downstream of the
/// preparation hologram. Records are ordered by displacement.
template <typename Scalar>
std::vector<ScanRecord<Scalar>> run_scan(const ScanSpec<Scalar>& spec) {
    spec.validate();
    const Scalar axis_norm = std::hypot(spec.axis_x, spec.axis_y);
    const Scalar ax = spec.axis_x / axis_norm;
    const Scalar ay = spec.axis_y / axis_norm;
    const BeamSpec<Scalar> beam = spec.input.beam();

    const FieldGrid<Scalar> input_field = sample_mode(spec.input, spec.grid);
    const FieldGrid<Scalar> gauss_ref =
        sample_mode(LGModeSpec<Scalar>{0, 0, beam.w0, beam.wavelength}, spec.grid);

    FieldGrid<Scalar> lg_ref;
    const int principal = spec.principal_label();
    if (spec.detect_lg) {
        if (std::abs(principal) != 1)
            throw std::invalid_argument(
                "run_scan: the LG detector requires a single-charge principal order");
        lg_ref = lg_detector_mode(beam, spec.grid, -principal);
    }

    std::vector<ScanRecord<Scalar>> records;
    records.reserve(static_cast<size_t>(spec.steps));
    for (int k = 0; k < spec.steps; ++k) {
        const Scalar d = spec.start + (spec.stop - spec.start) * Scalar(k) / Scalar(spec.steps - 1);
        HologramSpec<Scalar> h = spec.hologram;
        h.x0 += d * ax;
        h.y0 += d * ay;
        const FieldGrid<Scalar> out = apply_hologram(input_field, h, spec.order);

        ScanRecord<Scalar> rec;
        rec.displacement = d;
        if (spec.detect_gauss) rec.i_gauss = std::norm(inner_product(gauss_ref, out));
        if (spec.detect_lg) rec.i_lg = std::norm(inner_product(lg_ref, out));
        if (spec.detect_higher) {
            const DecompositionRecord<Scalar> dec = full_decomposition(out, beam, 3, 6);
            rec.unitarity = dec.sum_abs2();
            for (int L : secondary_labels(principal))
                rec.higher[L] = std::norm(dec.at(0, L));
        }
        records.push_back(std::move(rec));
    }
    return records;
}

/// min / max of a detector trace. Rejects empty and all-zero traces.
template <typename Scalar>
Scalar extinction_ratio(const std::vector<std::pair<Scalar, Scalar>>& trace) {
    if (trace.empty()) throw std::invalid_argument("extinction_ratio: empty trace");
    Scalar lo = trace.front().second, hi = trace.front().second;
    for (const auto& [d, v] : trace) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (!(hi > Scalar(0))) throw std::invalid_argument("extinction_ratio: all-zero trace");
    return lo / hi;
}

/// Displacement at which two traces, each normalized to its own maximum,
/// intersect on the branch to the right of their separation maximum.
/// Linear interpolation between samples; symmetric in the argument order and
/// covariant under a common displacement offset.
template <typename Scalar>
Scalar crossover(const std::vector<std::pair<Scalar, Scalar>>& trace_a,
                 const std::vector<std::pair<Scalar, Scalar>>& trace_b) {
    if (trace_a.size() != trace_b.size() || trace_a.size() < 2)
        throw std::invalid_argument("crossover: traces must share length >= 2");
    const size_t m = trace_a.size();
    Scalar max_a(0), max_b(0);
    for (size_t k = 0; k < m; ++k) {
        if (trace_a[k].first != trace_b[k].first)
            throw std::invalid_argument("crossover: traces must share the displacement axis");
        max_a = std::max(max_a, trace_a[k].second);
        max_b = std::max(max_b, trace_b[k].second);
    }
    if (!(max_a > Scalar(0)) || !(max_b > Scalar(0)))
        throw std::invalid_argument("crossover: all-zero trace");

    std::vector<Scalar> diff(m);
    size_t center = 0;
    for (size_t k = 0; k < m; ++k) {
        diff[k] = trace_a[k].second / max_a - trace_b[k].second / max_b;
        if (std::abs(diff[k]) > std::abs(diff[center])) center = k;
    }
    for (size_t k = center; k + 1 < m; ++k) {
        if (diff[k] == Scalar(0)) return trace_a[k].first;
        if ((diff[k] > Scalar(0)) != (diff[k + 1] > Scalar(0))) {
            const Scalar t = diff[k] / (diff[k] - diff[k + 1]);
            return trace_a[k].first + t * (trace_a[k + 1].first - trace_a[k].first);
        }
    }
    throw std::invalid_argument("crossover: traces do not intersect right of their separation maximum");
}

template <typename Scalar = double>
struct ScanSummary {
    Scalar extinction_gauss;
    Scalar extinction_lg;
    Scalar crossover_displacement;
    Scalar unitarity_min;
};

template <typename Scalar>
ScanSummary<Scalar> summarize_scan(const std::vector<ScanRecord<Scalar>>& records) {
    if (records.size() < 2) throw std::invalid_argument("summarize_scan: need >= 2 records");
    std::vector<std::pair<Scalar, Scalar>> tg, tl;
    Scalar uni_min = records.front().unitarity;
    bool covers_zero = false;
    for (const auto& r : records) {
        tg.emplace_back(r.displacement, r.i_gauss);
        tl.emplace_back(r.displacement, r.i_lg);
        uni_min = std::min(uni_min, r.unitarity);
    }
    covers_zero = records.front().displacement <= Scalar(0) &&
                  records.back().displacement >= Scalar(0);
    if (!covers_zero)
        throw std::invalid_argument("summarize_scan: crossover metrics need a range covering 0");
    ScanSummary<Scalar> s;
    s.extinction_gauss = extinction_ratio(tg);
    s.extinction_lg = extinction_ratio(tl);
    s.crossover_displacement = crossover(tg, tl);
    s.unitarity_min = uni_min;
    return s;
}

using ScanSpecD = ScanSpec<double>;
using ScanRecordD = ScanRecord<double>;
using ScanSummaryD = ScanSummary<double>;

}  // namespace lgbeam
