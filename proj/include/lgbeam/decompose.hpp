#pragma once

#include "lgbeam/grid.hpp"
#include "lgbeam/hologram.hpp"
#include "lgbeam/modes.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

namespace lgbeam {

/// Modal coefficients a(p, L) of a waist-plane field, keyed and ordered by
/// (p, L). `displacement` records the producing hologram's offset when known.
template <typename Scalar = double>
struct DecompositionRecord {
    using Complex = std::complex<Scalar>;

    std::map<std::pair<int, int>, Complex> coefficients;
    Scalar x0 = Scalar(0);
    Scalar y0 = Scalar(0);

    Complex at(int p, int L) const {
        auto it = coefficients.find({p, L});
        if (it == coefficients.end())
            throw std::out_of_range("DecompositionRecord: (p, L) outside computed range");
        return it->second;
    }

    Scalar sum_abs2() const {
        Scalar s(0);
        for (const auto& [key, a] : coefficients) s += std::norm(a);
        return s;
    }
};

/// Projection of a demodulated waist-plane field onto one basis mode.
/// carrier_removed must be true: fields produced by apply_hologram already
/// have the linear carrier stripped, so the reference is the plain mode.
template <typename Scalar>
std::complex<Scalar> overlap_coefficient(const FieldGrid<Scalar>& field,
                                         const LGModeSpec<Scalar>& target,
                                         bool carrier_removed) {
    if (!carrier_removed)
        throw std::invalid_argument(
            "overlap_coefficient: undemodulated fields are not supported; "
            "apply_hologram removes the carrier");
    if (field.z != Scalar(0))
        throw std::invalid_argument("overlap_coefficient: projections run at the waist plane");
    return inner_product(sample_mode(target, field.spec()), field);
}

/// Mono-mode fiber model: intensity coupled into the Gaussian mode.
template <typename Scalar>
Scalar detector_gauss(const FieldGrid<Scalar>& field, const BeamSpec<Scalar>& beam) {
    const LGModeSpec<Scalar> gauss{0, 0, beam.w0, beam.wavelength};
    return std::norm(overlap_coefficient(field, gauss, true));
}

namespace detail {
template <typename Scalar>
void require_ideal_analyzer(const HologramSpec<Scalar>& analyzer) {
    constexpr Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
    if (std::abs(analyzer.dm) != 1)
        throw std::invalid_argument("analyzer: |dm| must be 1");
    if (!analyzer.centered()) throw std::invalid_argument("analyzer: must be centered");
    if (analyzer.profile != Profile::blazed || std::abs(analyzer.depth - two_pi) > Scalar(1e-9))
        throw std::invalid_argument("analyzer: requires the ideal blazed depth 2 pi");
}
}  // namespace detail

/// Fiber detection mode of the analyzer-plus-fiber chain when the analyzer
/// sits in the far field of the plane under analysis. Back-propagating the
/// fiber Gaussian through the analyzer and to the input plane multiplies each
/// radial order by the accumulated propagation phase (-1)^p and leaves only
/// the L = -analyzer_dm channel coupled:
///   psi = sum_p (-1)^p b_p u_{p, -dm},  b_p = <u_{p,-dm} | e^{i dm theta} u00>.
/// The series is truncated at p_truncation (the |b_p|^2 tail decays like
/// 1/(4 p^2); p = 32 captures 99.2% of the channel).
template <typename Scalar>
FieldGrid<Scalar> lg_detector_mode(const BeamSpec<Scalar>& beam, const GridSpec<Scalar>& grid,
                                   int analyzer_dm = 1, int p_truncation = 32) {
    if (std::abs(analyzer_dm) != 1)
        throw std::invalid_argument("lg_detector_mode: |analyzer_dm| must be 1");
    if (p_truncation < 0) throw std::invalid_argument("lg_detector_mode: p_truncation < 0");
    if (grid.z != Scalar(0))
        throw std::invalid_argument("lg_detector_mode: defined at the waist plane");

    FieldGrid<Scalar> spiral = sample_mode(LGModeSpec<Scalar>{0, 0, beam.w0, beam.wavelength}, grid);
    for (int i = 0; i < grid.n; ++i) {
        const Scalar y = grid.coord(i);
        auto* row = spiral.values.row(i).data();
        for (int j = 0; j < grid.n; ++j)
            row[j] *= std::polar(Scalar(1), Scalar(analyzer_dm) * std::atan2(y, grid.coord(j)));
    }

    FieldGrid<Scalar> psi(grid);
    for (int p = 0; p <= p_truncation; ++p) {
        const FieldGrid<Scalar> mode =
            sample_mode(LGModeSpec<Scalar>{p, -analyzer_dm, beam.w0, beam.wavelength}, grid);
        const std::complex<Scalar> b = inner_product(mode, spiral);
        const Scalar sign = (p % 2 == 0) ? Scalar(1) : Scalar(-1);
        psi.values += (sign * b) * mode.values;
    }
    return psi;
}

enum class AnalyzerPlacement { contact, far_field };

/// Second-hologram detector: the fork analyzer converts the principal vortex
/// channel back to l = 0 and the fiber couples the Gaussian. The analyzer is
/// traversed in the orientation that removes the azimuthal charge its twin
/// adds, i.e. the mirrored fork's unit-efficiency first order, which imprints
/// e^{-i dm phi}.
///
/// contact: analyzer in the plane of the field (pointwise action), the
/// composition detector_gauss(apply_hologram(field, mirrored analyzer, +1)).
/// far_field: analyzer in the far field of that plane; implemented by
/// projecting on lg_detector_mode. The two placements agree on fields with a
/// single radial order (either way a pure u_{0,-dm} couples with efficiency
/// pi/4) and differ on multi-p fields through the propagation phases.
template <typename Scalar>
Scalar detector_lg(const FieldGrid<Scalar>& field, const HologramSpec<Scalar>& analyzer,
                   const BeamSpec<Scalar>& beam,
                   AnalyzerPlacement placement = AnalyzerPlacement::contact) {
    detail::require_ideal_analyzer(analyzer);
    if (placement == AnalyzerPlacement::contact) {
        HologramSpec<Scalar> mirrored = analyzer;
        mirrored.dm = -analyzer.dm;
        return detector_gauss(apply_hologram(field, mirrored, 1), beam);
    }
    const FieldGrid<Scalar> psi = lg_detector_mode(beam, field.spec(), analyzer.dm);
    return std::norm(inner_product(psi, field));
}

/// All modal coefficients a(p, L) for p <= p_max, |L| <= l_max in one pass
/// over the grid. Per sample the radial profiles for every (p, |L|) come from
/// the Laguerre recurrence and the azimuthal factors from a running complex
/// power, so the cost is independent of the number of modes sampled
/// separately. Accumulation is per-row partials summed in row order.
template <typename Scalar>
DecompositionRecord<Scalar> full_decomposition(const FieldGrid<Scalar>& field,
                                               const BeamSpec<Scalar>& beam, int l_max = 3,
                                               int p_max = 6) {
    if (l_max < 0 || p_max < 0)
        throw std::invalid_argument("full_decomposition: ranges must be non-negative");
    if (field.z != Scalar(0))
        throw std::invalid_argument("full_decomposition: projections run at the waist plane");
    beam.validate();

    using Complex = std::complex<Scalar>;
    const Scalar w = beam.w0;
    const int n_l = 2 * l_max + 1;
    const int n_coeff = (p_max + 1) * n_l;
    const auto idx = [l_max, n_l](int p, int L) { return p * n_l + (L + l_max); };

    std::vector<Scalar> norm_table(static_cast<size_t>((p_max + 1) * (l_max + 1)));
    for (int p = 0; p <= p_max; ++p)
        for (int al = 0; al <= l_max; ++al)
            norm_table[static_cast<size_t>(p * (l_max + 1) + al)] =
                detail::lg_norm<Scalar>(p, al) / w;

    std::vector<Complex> acc(static_cast<size_t>(n_coeff), Complex(0));
    std::vector<Complex> row_acc(static_cast<size_t>(n_coeff));
    std::vector<Scalar> lag(static_cast<size_t>(p_max + 1));

    for (int i = 0; i < field.n; ++i) {
        const Scalar y = field.y(i);
        const auto* row = field.values.row(i).data();
        std::fill(row_acc.begin(), row_acc.end(), Complex(0));
        for (int j = 0; j < field.n; ++j) {
            const Scalar x = field.x(j);
            const Scalar r2 = x * x + y * y;
            const Scalar r = std::sqrt(r2);
            const Scalar t = Scalar(2) * r2 / (w * w);
            const Scalar env = std::exp(-r2 / (w * w));
            const Complex f = row[j];
            const Complex e1(x / r, y / r);  // e^{+i theta}; midpoint grid keeps r > 0
            Complex phase_pos(1, 0);
            Scalar vortex(1);
            for (int al = 0; al <= l_max; ++al) {
                if (al > 0) {
                    vortex *= std::numbers::sqrt2_v<Scalar> * r / w;
                    phase_pos *= e1;
                }
                lag[0] = Scalar(1);
                if (p_max >= 1) lag[1] = Scalar(1 + al) - t;
                for (int k = 1; k < p_max; ++k)
                    lag[static_cast<size_t>(k + 1)] =
                        ((Scalar(2 * k + 1 + al) - t) * lag[static_cast<size_t>(k)] -
                         Scalar(k + al) * lag[static_cast<size_t>(k - 1)]) /
                        Scalar(k + 1);
                for (int p = 0; p <= p_max; ++p) {
                    const Scalar radial = norm_table[static_cast<size_t>(p * (l_max + 1) + al)] *
                                          vortex * lag[static_cast<size_t>(p)] * env;
                    const Complex weighted = radial * f;
                    if (al == 0) {
                        row_acc[static_cast<size_t>(idx(p, 0))] += weighted;
                    } else {
                        row_acc[static_cast<size_t>(idx(p, al))] += weighted * phase_pos;
                        row_acc[static_cast<size_t>(idx(p, -al))] +=
                            weighted * std::conj(phase_pos);
                    }
                }
            }
        }
        for (int k = 0; k < n_coeff; ++k) acc[static_cast<size_t>(k)] += row_acc[static_cast<size_t>(k)];
    }

    DecompositionRecord<Scalar> rec;
    const Scalar dA = field.cell_area();
    for (int p = 0; p <= p_max; ++p)
        for (int L = -l_max; L <= l_max; ++L)
            rec.coefficients[{p, L}] = acc[static_cast<size_t>(idx(p, L))] * dA;
    return rec;
}

using DecompositionRecordD = DecompositionRecord<double>;

}  // namespace lgbeam
