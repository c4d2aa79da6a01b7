#pragma once

#include <Eigen/Core>

#include <complex>
#include <stdexcept>

namespace lgbeam {

/// Square sampling window: n x n samples on [-extent, extent]^2 at axial plane z.
/// Sample (i, j) sits at the midpoint of its cell, so no sample lies exactly on
/// the axes and the grid is symmetric under 180-degree rotation.
template <typename Scalar = double>
struct GridSpec {
    int n = 1024;
    Scalar extent = Scalar(8);
    Scalar z = Scalar(0);

    void validate() const {
        if (n < 2) throw std::invalid_argument("GridSpec: n must be >= 2");
        if (!(extent > Scalar(0))) throw std::invalid_argument("GridSpec: extent must be > 0");
    }

    Scalar step() const { return Scalar(2) * extent / Scalar(n); }
    Scalar coord(int idx) const {
        return -extent + Scalar(2) * extent * (Scalar(idx) + Scalar(0.5)) / Scalar(n);
    }
};

/// Complex scalar field sampled on a GridSpec window. values(i, j) is the
/// sample at x = coord(j), y = coord(i); storage is row major to match the
/// row-by-row reduction order used by the quadrature routines.
template <typename Scalar = double>
struct FieldGrid {
    using Complex = std::complex<Scalar>;
    using Values = Eigen::Array<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

    int n = 0;
    Scalar extent = Scalar(0);
    Scalar z = Scalar(0);
    Values values;

    FieldGrid() = default;
    explicit FieldGrid(const GridSpec<Scalar>& g) : n(g.n), extent(g.extent), z(g.z) {
        g.validate();
        values.setZero(n, n);
    }

    GridSpec<Scalar> spec() const { return {n, extent, z}; }
    Scalar step() const { return Scalar(2) * extent / Scalar(n); }
    Scalar x(int j) const { return spec().coord(j); }
    Scalar y(int i) const { return spec().coord(i); }
    Scalar cell_area() const { return step() * step(); }
};

using FieldGridD = FieldGrid<double>;
using GridSpecD = GridSpec<double>;

template <typename Scalar>
bool same_geometry(const FieldGrid<Scalar>& a, const FieldGrid<Scalar>& b) {
    return a.n == b.n && a.extent == b.extent && a.z == b.z;
}

namespace detail {
template <typename Scalar>
void require_same_geometry(const FieldGrid<Scalar>& a, const FieldGrid<Scalar>& b,
                           const char* what) {
    if (!same_geometry(a, b))
        throw std::invalid_argument(std::string(what) + ": grids differ in n, extent or z");
}
}  // namespace detail

/// Midpoint-rule inner product <a|b> = sum conj(a) * b * dx * dy, conjugate
/// linear in the first argument. The reduction is a per-row sum accumulated in
/// row order, which fixes the floating-point result independently of any
/// parallel evaluation of the samples.
template <typename Scalar>
std::complex<Scalar> inner_product(const FieldGrid<Scalar>& a, const FieldGrid<Scalar>& b) {
    detail::require_same_geometry(a, b, "inner_product");
    std::complex<Scalar> total(0);
    for (int i = 0; i < a.n; ++i) {
        std::complex<Scalar> row(0);
        const auto* pa = a.values.row(i).data();
        const auto* pb = b.values.row(i).data();
        for (int j = 0; j < a.n; ++j) row += std::conj(pa[j]) * pb[j];
        total += row;
    }
    return total * a.cell_area();
}

/// Discrete power sum |u|^2 dx dy with the same row-ordered reduction.
template <typename Scalar>
Scalar power(const FieldGrid<Scalar>& g) {
    Scalar total(0);
    for (int i = 0; i < g.n; ++i) {
        Scalar row(0);
        const auto* p = g.values.row(i).data();
        for (int j = 0; j < g.n; ++j) row += std::norm(p[j]);
        total += row;
    }
    return total * g.cell_area();
}

}  // namespace lgbeam
