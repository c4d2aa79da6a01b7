#pragma once

#include "lgbeam/grid.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace lgbeam {

/// One phase singularity: sub-pixel position and winding (phase circulation
/// in units of 2 pi, counterclockwise positive).
template <typename Scalar = double>
struct Singularity {
    Scalar x;
    Scalar y;
    int winding;
};

template <typename Scalar = double>
struct SingularityReport {
    std::vector<Singularity<Scalar>> found;
};

template <typename Scalar = double>
struct PolarPoint {
    Scalar r;
    Scalar theta;
};

/// Dark-point location of a two-mode superposition with ratio gamma and
/// relative phase `phase` (SuperpositionSpec convention): radius
/// w0 / (gamma sqrt(2)) at azimuth `phase`. Undefined for the pure Gaussian.
template <typename Scalar>
PolarPoint<Scalar> singularity_prediction(Scalar gamma, Scalar phase, Scalar w0) {
    if (!(gamma > Scalar(0)))
        throw std::invalid_argument("singularity_prediction: gamma must be > 0");
    return {w0 / (gamma * std::numbers::sqrt2_v<Scalar>), phase};
}

namespace detail {

template <typename Scalar>
Scalar wrap_pi(Scalar a) {
    constexpr Scalar pi = std::numbers::pi_v<Scalar>;
    while (a > pi) a -= Scalar(2) * pi;
    while (a <= -pi) a += Scalar(2) * pi;
    return a;
}

/// Intersection of the zero sets of two bilinear interpolants on the unit
/// cell. Corners ordered (0,0), (1,0), (0,1), (1,1). Returns false when no
/// intersection lies inside the cell (caller falls back to the cell center).
template <typename Scalar>
bool bilinear_zero(const Scalar re[4], const Scalar im[4], Scalar& u, Scalar& v) {
    // f(u,v) = a0 + a1 u + a2 v + a3 u v
    const Scalar a0 = re[0], a1 = re[1] - re[0], a2 = re[2] - re[0],
                 a3 = re[3] - re[1] - re[2] + re[0];
    const Scalar b0 = im[0], b1 = im[1] - im[0], b2 = im[2] - im[0],
                 b3 = im[3] - im[1] - im[2] + im[0];
    // Eliminate v: (b0 + b1 u)(a2 + a3 u) = (a0 + a1 u)(b2 + b3 u)
    const Scalar qa = b1 * a3 - a1 * b3;
    const Scalar qb = b0 * a3 + b1 * a2 - a0 * b3 - a1 * b2;
    const Scalar qc = b0 * a2 - a0 * b2;

    Scalar roots[2];
    int n_roots = 0;
    if (std::abs(qa) < Scalar(1e-300)) {
        if (std::abs(qb) > Scalar(0)) roots[n_roots++] = -qc / qb;
    } else {
        const Scalar disc = qb * qb - Scalar(4) * qa * qc;
        if (disc < Scalar(0)) return false;
        const Scalar s = std::sqrt(disc);
        roots[n_roots++] = (-qb + s) / (Scalar(2) * qa);
        roots[n_roots++] = (-qb - s) / (Scalar(2) * qa);
    }
    const Scalar slack = Scalar(1e-9);
    for (int k = 0; k < n_roots; ++k) {
        const Scalar uu = roots[k];
        if (uu < -slack || uu > Scalar(1) + slack) continue;
        const Scalar den_v = a2 + a3 * uu;
        const Scalar den_w = b2 + b3 * uu;
        Scalar vv;
        if (std::abs(den_v) >= std::abs(den_w)) {
            if (den_v == Scalar(0)) continue;
            vv = -(a0 + a1 * uu) / den_v;
        } else {
            vv = -(b0 + b1 * uu) / den_w;
        }
        if (vv < -slack || vv > Scalar(1) + slack) continue;
        u = std::clamp(uu, Scalar(0), Scalar(1));
        v = std::clamp(vv, Scalar(0), Scalar(1));
        return true;
    }
    return false;
}

}  // namespace detail

/// Locate phase singularities: every grid cell whose four-corner phase
/// circulation is +-2 pi contains one; the position is refined inside the
/// cell by intersecting the bilinear zero crossings of Re and Im. Results are
/// ordered by (y, x).
template <typename Scalar>
SingularityReport<Scalar> find_singularities(const FieldGrid<Scalar>& field) {
    SingularityReport<Scalar> report;
    constexpr Scalar pi = std::numbers::pi_v<Scalar>;
    const int n = field.n;
    for (int i = 0; i + 1 < n; ++i) {
        const auto* row0 = field.values.row(i).data();
        const auto* row1 = field.values.row(i + 1).data();
        for (int j = 0; j + 1 < n; ++j) {
            // counterclockwise in (x, y): (i,j) -> (i,j+1) -> (i+1,j+1) -> (i+1,j)
            const std::complex<Scalar> c00 = row0[j], c01 = row0[j + 1];
            const std::complex<Scalar> c11 = row1[j + 1], c10 = row1[j];
            const Scalar p0 = std::arg(c00), p1 = std::arg(c01), p2 = std::arg(c11),
                         p3 = std::arg(c10);
            const Scalar circ = detail::wrap_pi(p1 - p0) + detail::wrap_pi(p2 - p1) +
                                detail::wrap_pi(p3 - p2) + detail::wrap_pi(p0 - p3);
            if (std::abs(circ) < pi) continue;

            const Scalar re[4] = {c00.real(), c01.real(), c10.real(), c11.real()};
            const Scalar im[4] = {c00.imag(), c01.imag(), c10.imag(), c11.imag()};
            Scalar u = Scalar(0.5), v = Scalar(0.5);
            detail::bilinear_zero(re, im, u, v);
            report.found.push_back({field.x(j) + u * field.step(),
                                    field.y(i) + v * field.step(),
                                    circ > Scalar(0) ? 1 : -1});
        }
    }
    return report;
}

using SingularityD = Singularity<double>;
using SingularityReportD = SingularityReport<double>;

}  // namespace lgbeam
