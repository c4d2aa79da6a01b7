#pragma once

#include "lgbeam/grid.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace lgbeam {

/// Beam parameters shared by every mode of one basis.
template <typename Scalar = double>
struct BeamSpec {
    Scalar w0 = Scalar(1);                     // waist radius
    Scalar wavelength = Scalar(1) / Scalar(1000);

    void validate() const {
        if (!(w0 > Scalar(0))) throw std::invalid_argument("BeamSpec: w0 must be > 0");
        if (!(wavelength > Scalar(0)))
            throw std::invalid_argument("BeamSpec: wavelength must be > 0");
    }
};

/// One Laguerre-Gaussian basis mode. l's sign selects the handedness of the
/// e^{-i l theta} azimuthal phase; the orbital angular momentum per photon is
/// hbar * l by that convention.
template <typename Scalar = double>
struct LGModeSpec {
    int p = 0;      // radial index, >= 0
    int l = 0;      // azimuthal index
    Scalar w0 = Scalar(1);
    Scalar wavelength = Scalar(1) / Scalar(1000);

    void validate() const {
        if (p < 0) throw std::invalid_argument("LGModeSpec: p must be >= 0");
        BeamSpec<Scalar>{w0, wavelength}.validate();
    }

    BeamSpec<Scalar> beam() const { return {w0, wavelength}; }
};

/// Gaussian beam geometry at a fixed axial position. Wavefront curvature is
/// stored as 1/R(z) so the flat wavefront at the waist is a finite zero.
template <typename Scalar = double>
struct BeamGeometry {
    Scalar w0;
    Scalar wavelength;
    Scalar z;
    Scalar zR;         // Rayleigh length, pi w0^2 / wavelength
    Scalar w;          // spot size w(z) = w0 sqrt(1 + (z/zR)^2)
    Scalar curvature;  // 1/R(z) = z / (z^2 + zR^2)
    Scalar gouy;       // arctan(z / zR)
    Scalar k;          // 2 pi / wavelength
};

template <typename Scalar>
BeamGeometry<Scalar> beam_geometry(Scalar w0, Scalar wavelength, Scalar z) {
    if (!(w0 > Scalar(0))) throw std::invalid_argument("beam_geometry: w0 must be > 0");
    if (!(wavelength > Scalar(0)))
        throw std::invalid_argument("beam_geometry: wavelength must be > 0");
    constexpr Scalar pi = std::numbers::pi_v<Scalar>;
    BeamGeometry<Scalar> g;
    g.w0 = w0;
    g.wavelength = wavelength;
    g.z = z;
    g.zR = pi * w0 * w0 / wavelength;
    const Scalar ratio = z / g.zR;
    g.w = w0 * std::sqrt(Scalar(1) + ratio * ratio);
    g.curvature = z / (z * z + g.zR * g.zR);
    g.gouy = std::atan(ratio);
    g.k = Scalar(2) * pi / wavelength;
    return g;
}

template <typename Scalar>
BeamGeometry<Scalar> beam_geometry(const BeamSpec<Scalar>& beam, Scalar z) {
    return beam_geometry(beam.w0, beam.wavelength, z);
}

/// Generalized Laguerre polynomial L_p^alpha(x) for integer alpha >= 0,
/// evaluated by the three-term recurrence in p (stable for the arguments
/// arising from Gaussian-localized radial profiles).
template <typename Scalar>
Scalar laguerre(int p, int alpha, Scalar x) {
    if (p < 0) throw std::invalid_argument("laguerre: p must be >= 0");
    if (alpha < 0) throw std::invalid_argument("laguerre: alpha must be >= 0");
    if (p == 0) return Scalar(1);
    Scalar prev = Scalar(1);
    Scalar cur = Scalar(1 + alpha) - x;
    for (int k = 1; k < p; ++k) {
        const Scalar next =
            ((Scalar(2 * k + 1 + alpha) - x) * cur - Scalar(k + alpha) * prev) / Scalar(k + 1);
        prev = cur;
        cur = next;
    }
    return cur;
}

namespace detail {

/// sqrt(2 p! / (pi (p+|l|)!)) evaluated as a product ratio; avoids factorial
/// overflow for the mode orders used here.
template <typename Scalar>
Scalar lg_norm(int p, int abs_l) {
    Scalar denom = Scalar(1);
    for (int k = 1; k <= abs_l; ++k) denom *= Scalar(p + k);
    return std::sqrt(Scalar(2) / (std::numbers::pi_v<Scalar> * denom));
}

template <typename Scalar>
std::complex<Scalar> lg_amplitude_at(const LGModeSpec<Scalar>& mode,
                                     const BeamGeometry<Scalar>& g, Scalar r, Scalar theta) {
    const int al = std::abs(mode.l);
    const Scalar rho = r * std::numbers::sqrt2_v<Scalar> / g.w;
    Scalar vortex = Scalar(1);
    for (int k = 0; k < al; ++k) vortex *= rho;
    const Scalar arg = Scalar(2) * r * r / (g.w * g.w);
    const Scalar radial = lg_norm<Scalar>(mode.p, al) / g.w * vortex *
                          laguerre(mode.p, al, arg) * std::exp(-r * r / (g.w * g.w));
    const Scalar phase = -(g.k * r * r * g.curvature / Scalar(2) +
                           Scalar(2 * mode.p + al + 1) * g.gouy + Scalar(mode.l) * theta);
    return std::polar(radial, phase);
}

}  // namespace detail

/// Mode amplitude u_{p,l}(r, theta, z): normalized vortex-carrying radial
/// profile times curvature, Gouy and e^{-i l theta} phases. Requires r >= 0.
template <typename Scalar>
std::complex<Scalar> lg_amplitude(const LGModeSpec<Scalar>& mode, Scalar r, Scalar theta,
                                  Scalar z) {
    mode.validate();
    return detail::lg_amplitude_at(mode, beam_geometry(mode.w0, mode.wavelength, z), r, theta);
}

/// Sample a mode on a grid. Deterministic: values(i, j) equals
/// lg_amplitude(mode, hypot(x_j, y_i), atan2(y_i, x_j), grid.z).
template <typename Scalar>
FieldGrid<Scalar> sample_mode(const LGModeSpec<Scalar>& mode, const GridSpec<Scalar>& grid) {
    mode.validate();
    grid.validate();
    const auto g = beam_geometry(mode.w0, mode.wavelength, grid.z);
    FieldGrid<Scalar> out(grid);
    for (int i = 0; i < grid.n; ++i) {
        const Scalar y = grid.coord(i);
        auto* row = out.values.row(i).data();
        for (int j = 0; j < grid.n; ++j) {
            const Scalar x = grid.coord(j);
            row[j] = detail::lg_amplitude_at(mode, g, std::hypot(x, y), std::atan2(y, x));
        }
    }
    return out;
}

using LGModeSpecD = LGModeSpec<double>;
using BeamSpecD = BeamSpec<double>;

}  // namespace lgbeam
