#pragma once

#include "lgbeam/grid.hpp"
#include "lgbeam/hologram.hpp"
#include "lgbeam/modes.hpp"

#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>

namespace lgbeam {

/// Normalized amplitude pair (alpha, beta) of a two-mode superposition
/// alpha * u00 + beta * u0l. Storing the pair instead of (gamma, phase) keeps
/// the pure-vortex case alpha = 0 representable.
///
/// The ratio convention: from_ratio(gamma, phase) sets beta so that the dark
/// point of the superposition with an l = +1 partner sits at azimuth `phase`
/// and radius w0 / (gamma sqrt(2)). Writing the pair as
/// (alpha, beta) = (1, -gamma e^{i phase}) / sqrt(1 + gamma^2), the minus sign
/// places the zero on the requested azimuth; it also makes `phase` coincide
/// with the displacement direction of a displaced fork hologram producing the
/// same superposition.
template <typename Scalar = double>
struct SuperpositionSpec {
    using Complex = std::complex<Scalar>;

    Complex alpha{1, 0};
    Complex beta{0, 0};

    SuperpositionSpec() = default;
    SuperpositionSpec(Complex a, Complex b) : alpha(a), beta(b) {
        const Scalar norm2 = std::norm(alpha) + std::norm(beta);
        if (std::abs(norm2 - Scalar(1)) > Scalar(1e-12))
            throw std::invalid_argument("SuperpositionSpec: |alpha|^2 + |beta|^2 must be 1");
    }

    static SuperpositionSpec normalized(Complex a, Complex b) {
        const Scalar n = std::sqrt(std::norm(a) + std::norm(b));
        if (!(n > Scalar(0)))
            throw std::invalid_argument("SuperpositionSpec: amplitude pair must be nonzero");
        return SuperpositionSpec(a / n, b / n);
    }

    static SuperpositionSpec from_ratio(Scalar gamma, Scalar phase) {
        if (gamma < Scalar(0))
            throw std::invalid_argument("SuperpositionSpec: gamma must be >= 0");
        const Scalar a = Scalar(1) / std::sqrt(Scalar(1) + gamma * gamma);
        return SuperpositionSpec(Complex(a, 0), -gamma * std::polar(a, phase));
    }

    Scalar gamma() const { return std::abs(beta) / std::abs(alpha); }
    /// Inverse of from_ratio: the azimuth at which the dark point appears.
    Scalar phase() const { return std::arg(-beta / alpha); }
};

/// alpha * u00 + beta * u0l sampled on the grid. Both modes must share beam
/// parameters; mode1 carries the vortex (|l| = 1).
template <typename Scalar>
FieldGrid<Scalar> make_superposition(const SuperpositionSpec<Scalar>& spec,
                                     const LGModeSpec<Scalar>& mode0,
                                     const LGModeSpec<Scalar>& mode1,
                                     const GridSpec<Scalar>& grid) {
    if (mode0.l != 0) throw std::invalid_argument("make_superposition: mode0 must have l = 0");
    if (std::abs(mode1.l) != 1)
        throw std::invalid_argument("make_superposition: mode1 must have |l| = 1");
    if (mode0.w0 != mode1.w0 || mode0.wavelength != mode1.wavelength)
        throw std::invalid_argument("make_superposition: modes must share beam parameters");
    FieldGrid<Scalar> f0 = sample_mode(mode0, grid);
    const FieldGrid<Scalar> f1 = sample_mode(mode1, grid);
    f0.values = spec.alpha * f0.values + spec.beta * f1.values;
    return f0;
}

/// One interferometer arm: attenuation, phase plate, optional mode-converting
/// hologram applied at the given diffraction order.
template <typename Scalar = double>
struct InterferometerArm {
    Scalar attenuation = Scalar(1);
    Scalar phase = Scalar(0);
    std::optional<HologramSpec<Scalar>> hologram;
    int order = 1;

    void validate() const {
        if (attenuation < Scalar(0) || attenuation > Scalar(1))
            throw std::invalid_argument("InterferometerArm: attenuation must lie in [0, 1]");
        if (hologram) hologram->validate();
    }
};

/// One output port of a Mach-Zehnder interferometer with ideal 50:50
/// splitters: out = (tA e^{i phiA} XA(in) + tB e^{i phiB} XB(in)) / 2 where X
/// is the arm's hologram action (identity when absent). Balanced empty arms
/// reproduce the input at this port; a pi phase difference nulls it.
template <typename Scalar>
FieldGrid<Scalar> mach_zehnder(const FieldGrid<Scalar>& input,
                               const InterferometerArm<Scalar>& arm_a,
                               const InterferometerArm<Scalar>& arm_b) {
    arm_a.validate();
    arm_b.validate();
    auto arm_field = [&input](const InterferometerArm<Scalar>& arm) {
        FieldGrid<Scalar> f =
            arm.hologram ? apply_hologram(input, *arm.hologram, arm.order) : input;
        f.values *= std::polar(arm.attenuation, arm.phase);
        return f;
    };
    FieldGrid<Scalar> out = arm_field(arm_a);
    const FieldGrid<Scalar> other = arm_field(arm_b);
    out.values = (out.values + other.values) * Scalar(0.5);
    return out;
}

using SuperpositionSpecD = SuperpositionSpec<double>;
using InterferometerArmD = InterferometerArm<double>;

}  // namespace lgbeam
