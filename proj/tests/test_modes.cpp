#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lgbeam/grid.hpp"
#include "lgbeam/modes.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

using namespace lgbeam;
using std::numbers::pi;

namespace {

/// Independent oracle: explicit series
/// L_p^a(x) = sum_k (-1)^k binom(p+a, p-k) x^k / k!
long double laguerre_series(int p, int a, long double x) {
    auto binom = [](int n, int k) {
        long double b = 1;
        for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
        return b;
    };
    long double sum = 0, xk = 1, kfact = 1;
    for (int k = 0; k <= p; ++k) {
        if (k > 0) {
            xk *= x;
            kfact *= k;
        }
        const long double term = binom(p + a, p - k) * xk / kfact;
        sum += (k % 2 == 0) ? term : -term;
    }
    return sum;
}

LGModeSpecD mode(int p, int l) { return {p, l, 1.0, 1e-3}; }

}  // namespace

TEST_CASE("laguerre base cases") {
    CHECK(laguerre(0, 1, 3.7) == doctest::Approx(1.0));
    CHECK(laguerre(1, 0, 1.0) == doctest::Approx(0.0));
    CHECK(laguerre(1, 1, 2.0) == doctest::Approx(0.0));
    CHECK(laguerre(2, 0, 0.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(laguerre(-1, 0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(laguerre(1, -1, 1.0), std::invalid_argument);
}

TEST_CASE("laguerre recurrence matches the explicit series") {
    for (int p = 0; p <= 6; ++p)
        for (int a = 0; a <= 4; ++a)
            for (double x : {0.0, 0.3, 1.0, 2.7, 5.5, 11.0, 23.0}) {
                const double got = laguerre(p, a, x);
                const long double want = laguerre_series(p, a, x);
                const double scale = std::max<double>(1.0, std::abs(double(want)));
                CHECK(std::abs(got - double(want)) < 1e-10 * scale);
            }
}

TEST_CASE("beam geometry at the waist and one Rayleigh length") {
    const double w0 = 0.7, lam = 1e-3;
    const auto g0 = beam_geometry(w0, lam, 0.0);
    CHECK(g0.zR == doctest::Approx(pi * w0 * w0 / lam));
    CHECK(g0.w == doctest::Approx(w0));
    CHECK(g0.curvature == 0.0);
    CHECK(g0.gouy == 0.0);
    CHECK(g0.k == doctest::Approx(2 * pi / lam));

    const auto g1 = beam_geometry(w0, lam, g0.zR);
    CHECK(g1.w == doctest::Approx(w0 * std::sqrt(2.0)));
    CHECK(g1.gouy == doctest::Approx(pi / 4));
    CHECK(g1.curvature == doctest::Approx(1.0 / (2.0 * g0.zR)));

    CHECK_THROWS_AS(beam_geometry(0.0, lam, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(beam_geometry(w0, -1.0, 0.0), std::invalid_argument);
}

TEST_CASE("mode amplitude values at the waist") {
    // vortex factor kills the on-axis amplitude for l != 0
    CHECK(std::abs(lg_amplitude(mode(0, 1), 0.0, 0.3, 0.0)) == 0.0);
    // on-axis Gaussian value sqrt(2/pi)/w0, purely real
    const auto v = lg_amplitude(mode(0, 0), 0.0, 0.0, 0.0);
    CHECK(v.real() == doctest::Approx(std::sqrt(2.0 / pi)));
    CHECK(v.imag() == 0.0);
    // e^{-i l theta}: a quarter turn drops the phase by pi/2 for l = 1
    const auto a0 = lg_amplitude(mode(0, 1), 0.5, 0.0, 0.0);
    const auto a1 = lg_amplitude(mode(0, 1), 0.5, pi / 2, 0.0);
    CHECK(std::arg(a1 / a0) == doctest::Approx(-pi / 2));
}

TEST_CASE("sampled modes carry unit power") {
    for (int n : {512, 1024}) {
        const auto f = sample_mode(mode(0, 0), {n, 4.0, 0.0});
        CHECK(std::abs(power(f) - 1.0) < 1e-4);
    }
    // grid refinement changes the power sum by less than 1e-6
    const double p512 = power(sample_mode(mode(0, 0), {512, 4.0, 0.0}));
    const double p1024 = power(sample_mode(mode(0, 0), {1024, 4.0, 0.0}));
    CHECK(std::abs(p512 - p1024) < 1e-6);

    CHECK_THROWS_AS(sample_mode(mode(0, 0), {1, 4.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(sample_mode(mode(0, 0), {64, 0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("central singularity darkens the middle of a vortex mode") {
    // compare within r <= 2 w0; outside the beam the Gaussian tail
    // underflows below the on-axis vortex dip
    const auto f = sample_mode(mode(0, 1), {256, 4.0, 0.0});
    double min_abs = 1e300;
    int mi = -1, mj = -1;
    for (int i = 0; i < f.n; ++i)
        for (int j = 0; j < f.n; ++j) {
            if (std::hypot(f.x(j), f.y(i)) > 2.0) continue;
            if (std::abs(f.values(i, j)) < min_abs) {
                min_abs = std::abs(f.values(i, j));
                mi = i;
                mj = j;
            }
        }
    const int c = f.n / 2;
    CHECK(mi >= c - 1);
    CHECK(mi <= c);
    CHECK(mj >= c - 1);
    CHECK(mj <= c);
}

TEST_CASE("inner products reproduce orthonormality") {
    const GridSpecD grid{1024, 8.0, 0.0};
    const auto u00 = sample_mode(mode(0, 0), grid);
    const auto u01 = sample_mode(mode(0, 1), grid);
    CHECK(std::abs(inner_product(u00, u00) - 1.0) < 1e-4);
    CHECK(std::abs(inner_product(u00, u01)) < 1e-10);
    CHECK(std::abs(inner_product(u01, u01) - 1.0) < 1e-4);

    const auto coarse = sample_mode(mode(0, 0), {512, 8.0, 0.0});
    CHECK_THROWS_AS(inner_product(u00, coarse), std::invalid_argument);

    // a few off-diagonal pairs with matching l but different p
    const auto u10 = sample_mode(mode(1, 0), grid);
    const auto u21 = sample_mode(mode(2, 1), grid);
    const auto u11 = sample_mode(mode(1, 1), grid);
    CHECK(std::abs(inner_product(u10, u00)) < 1e-4);
    CHECK(std::abs(inner_product(u21, u11)) < 1e-4);
    CHECK(std::abs(inner_product(u21, u21) - 1.0) < 1e-4);
}

TEST_CASE("inner product is conjugate linear in its first slot") {
    const GridSpecD grid{256, 6.0, 0.0};
    auto a = sample_mode(mode(0, 1), grid);
    const auto b = sample_mode(mode(1, 1), grid);
    const std::complex<double> w(0.6, -0.8);
    auto scaled = a;
    scaled.values *= w;
    const auto lhs = inner_product(scaled, b);
    const auto rhs = std::conj(w) * inner_product(a, b);
    CHECK(std::abs(lhs - rhs) < 1e-14);
}

TEST_CASE("grid rotation multiplies projections by the azimuthal phase") {
    const GridSpecD grid{512, 6.0, 0.0};
    // band-limited two-mode field with distinct l content
    auto f = sample_mode(mode(0, 1), grid);
    {
        const auto g = sample_mode(mode(1, -2), grid);
        f.values = 0.8 * f.values + 0.6 * g.values;
    }

    SUBCASE("quarter turn by exact sample remapping") {
        FieldGridD rot(grid);
        for (int i = 0; i < grid.n; ++i)
            for (int j = 0; j < grid.n; ++j) rot.values(i, j) = f.values(grid.n - 1 - j, i);
        for (int l : {1, -2}) {
            const auto ref = sample_mode(mode(l == 1 ? 0 : 1, l), grid);
            const auto before = inner_product(ref, f);
            const auto after = inner_product(ref, rot);
            const auto expect = std::polar(1.0, l * pi / 2) * before;
            CHECK(std::abs(after - expect) < 1e-10);
        }
    }

    SUBCASE("generic angle by analytic resampling") {
        const double alpha = 0.3;
        FieldGridD rot(grid);
        for (int i = 0; i < grid.n; ++i) {
            const double y = grid.coord(i);
            for (int j = 0; j < grid.n; ++j) {
                const double x = grid.coord(j);
                const double r = std::hypot(x, y);
                const double th = std::atan2(y, x) - alpha;
                rot.values(i, j) = 0.8 * lg_amplitude(mode(0, 1), r, th, 0.0) +
                                   0.6 * lg_amplitude(mode(1, -2), r, th, 0.0);
            }
        }
        for (int l : {1, -2}) {
            const auto ref = sample_mode(mode(l == 1 ? 0 : 1, l), grid);
            const auto before = inner_product(ref, f);
            const auto after = inner_product(ref, rot);
            const auto expect = std::polar(1.0, l * alpha) * before;
            CHECK(std::abs(after - expect) < 1e-6);
        }
    }
}

TEST_CASE("propagation preserves discrete power when the window tracks the spot") {
    for (int l : {0, 1}) {
        const auto m = mode(0, l);
        const double zR = beam_geometry(m.w0, m.wavelength, 0.0).zR;
        for (double z : {0.0, zR, 2.0 * zR}) {
            const double w = beam_geometry(m.w0, m.wavelength, z).w;
            const auto f = sample_mode(m, {512, 4.0 * w, z});
            CHECK(std::abs(power(f) - 1.0) < 1e-4);
        }
    }
}

TEST_CASE("sampled values match the pointwise amplitude") {
    const GridSpecD grid{64, 3.0, 0.5e3};
    const auto m = mode(1, -1);
    const auto f = sample_mode(m, grid);
    for (int i : {0, 17, 40})
        for (int j : {3, 32, 63}) {
            const double x = grid.coord(j), y = grid.coord(i);
            const auto expect = lg_amplitude(m, std::hypot(x, y), std::atan2(y, x), grid.z);
            CHECK(std::abs(f.values(i, j) - expect) <= 1e-15);
        }
}
