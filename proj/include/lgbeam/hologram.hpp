#pragma once

#include "lgbeam/grid.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace lgbeam {

enum class Profile { binary, blazed };

/// Fork-grating phase hologram: dm dislocations riding a linear carrier of
/// period `period`, phase-modulation amplitude `depth`, dislocation displaced
/// to (x0, y0). The element is phase-only, |T| = 1 everywhere.
template <typename Scalar = double>
struct HologramSpec {
    int dm = 1;
    Scalar period = Scalar(0.1);
    Scalar depth = Scalar(2) * std::numbers::pi_v<Scalar>;
    Profile profile = Profile::blazed;
    Scalar x0 = Scalar(0);
    Scalar y0 = Scalar(0);

    void validate() const {
        if (!(period > Scalar(0))) throw std::invalid_argument("HologramSpec: period must be > 0");
        if (depth < Scalar(0)) throw std::invalid_argument("HologramSpec: depth must be >= 0");
    }

    /// Depths beyond 2 pi are usable but worth surfacing to the caller.
    bool depth_flagged() const {
        return depth > Scalar(2) * std::numbers::pi_v<Scalar> + Scalar(1e-12);
    }

    /// Tilt angle of the plane reference wave that would record this carrier.
    Scalar reference_tilt(Scalar wavelength) const { return std::atan(wavelength / period); }

    bool centered() const { return x0 == Scalar(0) && y0 == Scalar(0); }
};

namespace detail {

template <typename Scalar>
Scalar positive_mod_2pi(Scalar a) {
    constexpr Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
    Scalar m = std::fmod(a, two_pi);
    if (m < Scalar(0)) m += two_pi;
    return m;
}

/// Phase applied by the element as a function of the sawtooth argument
/// t = mod(dm*phi - (2 pi / period) r cos phi, 2 pi).
template <typename Scalar>
Scalar profile_phase(Profile profile, Scalar depth, Scalar t) {
    constexpr Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
    if (profile == Profile::blazed) return depth * t / two_pi;
    return t >= std::numbers::pi_v<Scalar> ? depth / Scalar(2) : Scalar(0);
}

}  // namespace detail

/// Phase the hologram imprints at (x, y); see profile_phase for the two
/// profiles. Exposed separately so image export can render the raw levels.
template <typename Scalar>
Scalar transmission_phase(const HologramSpec<Scalar>& h, Scalar x, Scalar y) {
    const Scalar xp = x - h.x0;
    const Scalar yp = y - h.y0;
    const Scalar phi = std::atan2(yp, xp);
    // r cos(phi) is just xp; using it directly avoids the round trip.
    const Scalar saw = detail::positive_mod_2pi(
        Scalar(h.dm) * phi - Scalar(2) * std::numbers::pi_v<Scalar> / h.period * xp);
    return detail::profile_phase(h.profile, h.depth, saw);
}

template <typename Scalar>
std::complex<Scalar> transmission(const HologramSpec<Scalar>& h, Scalar x, Scalar y) {
    return std::polar(Scalar(1), transmission_phase(h, x, y));
}

/// Diffraction-order amplitudes c_n for a finite symmetric or asymmetric range
/// of orders, stored densely.
template <typename Scalar = double>
struct OrderCoefficients {
    int n_min = 0;
    std::vector<std::complex<Scalar>> c;

    std::complex<Scalar> at(int order) const {
        const int idx = order - n_min;
        if (idx < 0 || idx >= static_cast<int>(c.size()))
            throw std::out_of_range("OrderCoefficients: order outside computed range");
        return c[static_cast<size_t>(idx)];
    }

    int n_max() const { return n_min + static_cast<int>(c.size()) - 1; }

    Scalar sum_abs2() const {
        Scalar s(0);
        for (const auto& v : c) s += std::norm(v);
        return s;
    }
};

/// Fourier coefficients of the transmission profile over one sawtooth period:
/// c_n = (1/2pi) Int_0^{2pi} exp(i phase(t)) exp(-i n t) dt, by midpoint
/// quadrature on 2^18 nodes. This decomposes the full element as
/// T = sum_n c_n exp(i n (dm phi - (2 pi / period) r cos phi)).
template <typename Scalar>
OrderCoefficients<Scalar> order_coefficients(Profile profile, Scalar depth, int n_min,
                                             int n_max) {
    if (n_max < n_min) throw std::invalid_argument("order_coefficients: empty range");
    constexpr int nodes = 1 << 18;
    constexpr Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
    const Scalar dt = two_pi / Scalar(nodes);

    std::vector<std::complex<Scalar>> profile_values(nodes);
    for (int k = 0; k < nodes; ++k) {
        const Scalar t = (Scalar(k) + Scalar(0.5)) * dt;
        profile_values[static_cast<size_t>(k)] =
            std::polar(Scalar(1), detail::profile_phase(profile, depth, t));
    }

    OrderCoefficients<Scalar> out;
    out.n_min = n_min;
    out.c.resize(static_cast<size_t>(n_max - n_min + 1));
    for (int n = n_min; n <= n_max; ++n) {
        std::complex<Scalar> acc(0);
        for (int k = 0; k < nodes; ++k) {
            const Scalar t = (Scalar(k) + Scalar(0.5)) * dt;
            acc += profile_values[static_cast<size_t>(k)] * std::polar(Scalar(1), -Scalar(n) * t);
        }
        out.c[static_cast<size_t>(n - n_min)] = acc / Scalar(nodes);
    }
    return out;
}

/// Order expansion of the blazed sawtooth with modulation amplitude `depth`.
template <typename Scalar>
OrderCoefficients<Scalar> grating_orders(Scalar depth, int n_min, int n_max) {
    return order_coefficients(Profile::blazed, depth, n_min, n_max);
}

/// Action of one diffraction order on a waist-plane field, with the linear
/// carrier removed: out = c_order * exp(i order dm phi') * in, phi' measured
/// about the displaced dislocation. Order +1 of a dm = 1 fork multiplies the
/// field by exp(+i phi'), which in the e^{-i l theta} mode labels lowers l by
/// dm per order.
template <typename Scalar>
FieldGrid<Scalar> apply_hologram(const FieldGrid<Scalar>& in, const HologramSpec<Scalar>& h,
                                 int order) {
    h.validate();
    if (in.z != Scalar(0))
        throw std::invalid_argument("apply_hologram: hologram sits at the waist, grid must be at z = 0");
    const std::complex<Scalar> c = order_coefficients(h.profile, h.depth, order, order).at(order);
    FieldGrid<Scalar> out(in.spec());
    const Scalar q = Scalar(order) * Scalar(h.dm);
    for (int i = 0; i < in.n; ++i) {
        const Scalar y = in.y(i);
        const auto* src = in.values.row(i).data();
        auto* dst = out.values.row(i).data();
        for (int j = 0; j < in.n; ++j) {
            const Scalar phi = std::atan2(y - h.y0, in.x(j) - h.x0);
            dst[j] = c * std::polar(Scalar(1), q * phi) * src[j];
        }
    }
    return out;
}

using HologramSpecD = HologramSpec<double>;
using OrderCoefficientsD = OrderCoefficients<double>;

}  // namespace lgbeam
