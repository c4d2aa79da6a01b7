#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lgbeam/decompose.hpp"
#include "lgbeam/hologram.hpp"
#include "lgbeam/modes.hpp"

#include <cmath>
#include <complex>
#include <numbers>

using namespace lgbeam;
using std::numbers::pi;
using Complex = std::complex<double>;

namespace {

constexpr double two_pi = 2.0 * pi;

/// Closed forms for the order amplitudes, independent of the quadrature path.
Complex blazed_cn(double depth, int n) {
    const double d = depth - two_pi * n;
    if (std::abs(d) < 1e-12) return {1.0, 0.0};
    return (std::polar(1.0, depth) - 1.0) / (Complex(0, 1) * d);
}

Complex binary_cn(double depth, int n) {
    const Complex half_level = std::polar(1.0, depth / 2.0);
    if (n == 0) return (1.0 + half_level) / 2.0;
    if (n % 2 == 0) return {0.0, 0.0};
    return (1.0 - half_level) / (Complex(0, pi * n));
}

LGModeSpecD mode(int p, int l) { return {p, l, 1.0, 1e-3}; }

HologramSpecD fork(double depth, double x0 = 0.0, double y0 = 0.0,
                   Profile profile = Profile::blazed) {
    return {1, 0.1, depth, profile, x0, y0};
}

}  // namespace

TEST_CASE("transmission is phase-only and matches the sawtooth") {
    const auto h = fork(two_pi);
    // on the positive x axis at a full period, the sawtooth argument is 0
    CHECK(std::abs(transmission(h, h.period, 0.0) - Complex(1, 0)) < 1e-12);
    for (double x : {-0.73, 0.02, 1.4})
        for (double y : {-1.1, 0.4}) {
            CHECK(std::abs(std::abs(transmission(h, x, y)) - 1.0) < 1e-14);
            const auto hb = fork(pi, 0, 0, Profile::binary);
            CHECK(std::abs(std::abs(transmission(hb, x, y)) - 1.0) < 1e-14);
        }
}

TEST_CASE("displacing the spec translates the pattern") {
    const auto centered = fork(two_pi);
    const auto moved = fork(two_pi, 0.31, -0.17);
    for (double x : {-0.4, 0.05, 0.9})
        for (double y : {-0.6, 0.33}) {
            const auto a = transmission(moved, moved.x0 + x, moved.y0 + y);
            const auto b = transmission(centered, x, y);
            CHECK(std::abs(a - b) < 1e-12);
        }
}

TEST_CASE("hologram spec validation") {
    CHECK_NOTHROW(fork(two_pi).validate());
    HologramSpecD bad = fork(two_pi);
    bad.period = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = fork(-1.0);
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    CHECK(!fork(two_pi).depth_flagged());
    CHECK(fork(2.5 * two_pi).depth_flagged());
    CHECK(fork(two_pi).reference_tilt(1e-3) == doctest::Approx(std::atan(1e-2)));
}

TEST_CASE("blazed order amplitudes against the closed form") {
    SUBCASE("full blaze concentrates everything in order one") {
        const auto oc = grating_orders(two_pi, -8, 8);
        for (int n = -8; n <= 8; ++n) {
            const double expect = (n == 1) ? 1.0 : 0.0;
            CHECK(std::abs(oc.at(n) - Complex(expect, 0)) < 1e-9);
        }
    }
    SUBCASE("zero depth is the identity element") {
        const auto oc = grating_orders(0.0, -4, 4);
        CHECK(std::abs(oc.at(0) - Complex(1, 0)) < 1e-9);
        for (int n = -4; n <= 4; ++n)
            if (n != 0) CHECK(std::abs(oc.at(n)) < 1e-9);
    }
    SUBCASE("half-depth splits order zero and one evenly") {
        const auto oc = grating_orders(pi, -2, 2);
        CHECK(std::abs(std::abs(oc.at(0)) - 2.0 / pi) < 1e-6);
        CHECK(std::abs(std::abs(oc.at(1)) - 2.0 / pi) < 1e-6);
    }
    SUBCASE("generic depths") {
        for (double depth : {0.7, pi / 2, pi, 1.9 * pi}) {
            const auto oc = grating_orders(depth, -8, 8);
            for (int n = -8; n <= 8; ++n)
                CHECK(std::abs(oc.at(n) - blazed_cn(depth, n)) < 1e-9);
        }
    }
    CHECK_THROWS_AS(grating_orders(pi, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(grating_orders(pi, -1, 1).at(5), std::out_of_range);
}

TEST_CASE("binary order amplitudes against the closed form") {
    for (double depth : {pi, two_pi}) {
        const auto oc = order_coefficients(Profile::binary, depth, -6, 6);
        for (int n = -6; n <= 6; ++n)
            CHECK(std::abs(oc.at(n) - binary_cn(depth, n)) < 1e-9);
    }
    // the pi-level binary grating throws 4/pi^2 into each first order
    const auto oc = order_coefficients(Profile::binary, two_pi, -1, 1);
    CHECK(std::norm(oc.at(1)) == doctest::Approx(4.0 / (pi * pi)).epsilon(1e-9));
    CHECK(std::norm(oc.at(-1)) == doctest::Approx(4.0 / (pi * pi)).epsilon(1e-9));
    CHECK(std::abs(oc.at(0)) < 1e-9);
}

TEST_CASE("order weights sum to one as the range grows") {
    for (double depth : {0.0, pi / 2, pi, 1.5 * pi, two_pi}) {
        const double sum32 = grating_orders(depth, -32, 32).sum_abs2();
        CHECK(sum32 <= 1.0 + 1e-9);
        CHECK(sum32 > 0.99);
        // the truncation deficit falls off like 1/N
        const double deficit32 = 1.0 - sum32;
        const double deficit64 = 1.0 - grating_orders(depth, -64, 64).sum_abs2();
        if (deficit32 > 1e-9) CHECK(deficit64 < 0.6 * deficit32);
    }
    for (double depth : {0.0, two_pi})
        CHECK(std::abs(grating_orders(depth, -32, 32).sum_abs2() - 1.0) < 1e-6);
}

TEST_CASE("single-order action preserves pointwise modulus") {
    const auto in = sample_mode(mode(0, 0), {256, 6.0, 0.0});
    const double pin = power(in);
    for (int order : {-1, 0, 1, 2}) {
        const auto c = grating_orders(pi, order, order).at(order);
        const auto out = apply_hologram(in, fork(pi), order);
        CHECK(std::abs(power(out) - std::norm(c) * pin) < 1e-9);
    }
    // full blaze leaves nothing in order zero
    CHECK(power(apply_hologram(in, fork(two_pi), 0)) < 1e-18);
}

TEST_CASE("apply_hologram requires the waist plane") {
    const auto in = sample_mode(mode(0, 0), {64, 4.0, 10.0});
    CHECK_THROWS_AS(apply_hologram(in, fork(two_pi), 1), std::invalid_argument);
}

TEST_CASE("centered fork converts the Gaussian with pi/4 coupling") {
    const auto in = sample_mode(mode(0, 0), {512, 8.0, 0.0});
    const auto out = apply_hologram(in, fork(two_pi), 1);
    // order +1 imprints e^{+i phi}: the l = -1 mode in the e^{-i l theta} labels
    const auto a = overlap_coefficient(out, mode(0, -1), true);
    CHECK(std::abs(std::norm(a) - pi / 4.0) < 1e-3);
    CHECK(a.real() == doctest::Approx(std::sqrt(pi) / 2.0).epsilon(1e-4));
    CHECK(std::abs(overlap_coefficient(out, mode(0, 0), true)) < 1e-10);
}

TEST_CASE("far-displaced dislocation acts as a plain grating") {
    const auto in = sample_mode(mode(0, 0), {512, 8.0, 0.0});
    // asymptotic transmitted Gaussian fraction: 1 - w0^2 / (4 d^2)
    {
        const auto out = apply_hologram(in, fork(two_pi, 10.0), 1);
        const double ratio = std::norm(inner_product(in, out)) / power(out);
        CHECK(std::abs(ratio - (1.0 - 1.0 / 400.0)) < 1e-4);
    }
    {
        const auto out = apply_hologram(in, fork(two_pi, 20.0), 1);
        const double ratio = std::norm(inner_product(in, out)) / power(out);
        CHECK(ratio > 0.999);
    }
}

TEST_CASE("displaced action equals translate, apply centered, translate back") {
    const GridSpecD grid{256, 6.0, 0.0};
    const auto f = sample_mode(mode(0, 0), grid);
    const int ki = 7, kj = -11;  // whole-pixel shift
    const double dx = kj * grid.step(), dy = ki * grid.step();

    auto translate = [&](const FieldGridD& g, int di, int dj) {
        FieldGridD out(g.spec());
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j) {
                const int si = i - di, sj = j - dj;
                if (si >= 0 && si < g.n && sj >= 0 && sj < g.n)
                    out.values(i, j) = g.values(si, sj);
            }
        return out;
    };

    const auto direct = apply_hologram(f, fork(two_pi, dx, dy), 1);
    const auto roundabout =
        translate(apply_hologram(translate(f, -ki, -kj), fork(two_pi), 1), ki, kj);
    double max_diff = 0;
    for (int i = 0; i < grid.n; ++i)
        for (int j = 0; j < grid.n; ++j)
            max_diff = std::max(max_diff, std::abs(direct.values(i, j) - roundabout.values(i, j)));
    CHECK(max_diff < 1e-3);
}

TEST_CASE("opposite orders mirror the azimuthal spectrum") {
    const auto in = sample_mode(mode(0, 0), {256, 6.0, 0.0});
    const auto h = fork(pi, 0.4);  // half depth populates both first orders
    const auto plus = apply_hologram(in, h, 1);
    const auto minus = apply_hologram(in, h, -1);
    const double c_plus = std::abs(grating_orders(pi, 1, 1).at(1));
    const double c_minus = std::abs(grating_orders(pi, -1, -1).at(-1));
    const auto dec_plus = full_decomposition(plus, {1.0, 1e-3}, 2, 3);
    const auto dec_minus = full_decomposition(minus, {1.0, 1e-3}, 2, 3);
    for (int p = 0; p <= 3; ++p)
        for (int L = -2; L <= 2; ++L) {
            const double lhs = std::abs(dec_minus.at(p, L)) / c_minus;
            const double rhs = std::abs(dec_plus.at(p, -L)) / c_plus;
            CHECK(std::abs(lhs - rhs) < 1e-8);
        }
}
