#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "wignerlab/errors.hpp"
#include "wignerlab/phase_grid.hpp"

namespace wigner {

/// A quasi-probability field sampled on a PhaseGrid. values(i, j) = W(x_i, y_j),
/// so the x index runs along rows (contiguous, column-major) and the y index
/// along columns. Vacuum convention: W(x, y) = (1/pi) exp(-x^2 - y^2), which
/// makes the quadrature integral of a well-captured state 1.
template <typename Scalar = double>
struct WignerField {
    using Array = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

    PhaseGrid<Scalar> grid;
    Array values;

    /// Set by convolve_gaussian when the requested blur was narrower than half
    /// a grid step and the field was returned unchanged.
    bool blur_skipped = false;

    bool all_finite() const { return values.allFinite(); }
    Scalar min_value() const { return values.minCoeff(); }
    Scalar max_value() const { return values.maxCoeff(); }
};

using WignerFieldd = WignerField<double>;
using WignerFieldf = WignerField<float>;

/// Quadrature of the field over the whole grid (midpoint-equivalent rule on
/// the uniform lattice): sum of values times the cell area.
template <typename Scalar>
Scalar integrate(const WignerField<Scalar>& f) {
    return f.values.sum() * f.grid.cell_area();
}

namespace detail {

template <typename Scalar>
void require_stencil_span(const PhaseGrid<Scalar>& g, const char* op) {
    if (g.nx() < 5 || g.ny() < 5)
        throw GridTooSmall(std::string(op) + ": need at least 5 points per axis");
}

}  // namespace detail

/// First derivative along x: central differences on the interior, one-sided
/// second-order stencils on the boundary rows.
template <typename Scalar>
WignerField<Scalar> dx(const WignerField<Scalar>& f) {
    detail::require_stencil_span(f.grid, "dx");
    const auto n = f.grid.nx();
    const Scalar c = Scalar(1) / (2 * f.grid.hx());
    WignerField<Scalar> out{f.grid, typename WignerField<Scalar>::Array(n, f.grid.ny())};
    const auto& v = f.values;
    out.values.middleRows(1, n - 2) = (v.bottomRows(n - 2) - v.topRows(n - 2)).eval() * c;
    out.values.row(0) = (-3 * v.row(0) + 4 * v.row(1) - v.row(2)) * c;
    out.values.row(n - 1) = (3 * v.row(n - 1) - 4 * v.row(n - 2) + v.row(n - 3)) * c;
    return out;
}

/// First derivative along y; same stencils as dx.
template <typename Scalar>
WignerField<Scalar> dy(const WignerField<Scalar>& f) {
    detail::require_stencil_span(f.grid, "dy");
    const auto n = f.grid.ny();
    const Scalar c = Scalar(1) / (2 * f.grid.hy());
    WignerField<Scalar> out{f.grid, typename WignerField<Scalar>::Array(f.grid.nx(), n)};
    const auto& v = f.values;
    out.values.middleCols(1, n - 2) = (v.rightCols(n - 2) - v.leftCols(n - 2)).eval() * c;
    out.values.col(0) = (-3 * v.col(0) + 4 * v.col(1) - v.col(2)) * c;
    out.values.col(n - 1) = (3 * v.col(n - 1) - 4 * v.col(n - 2) + v.col(n - 3)) * c;
    return out;
}

/// Second derivative along x: central 3-point stencil on the interior,
/// one-sided second-order 4-point stencils on the boundary rows.
template <typename Scalar>
WignerField<Scalar> dxx(const WignerField<Scalar>& f) {
    detail::require_stencil_span(f.grid, "dxx");
    const auto n = f.grid.nx();
    const Scalar c = Scalar(1) / (f.grid.hx() * f.grid.hx());
    WignerField<Scalar> out{f.grid, typename WignerField<Scalar>::Array(n, f.grid.ny())};
    const auto& v = f.values;
    out.values.middleRows(1, n - 2) =
        (v.topRows(n - 2) + v.bottomRows(n - 2) - 2 * v.middleRows(1, n - 2)).eval() * c;
    out.values.row(0) = (2 * v.row(0) - 5 * v.row(1) + 4 * v.row(2) - v.row(3)) * c;
    out.values.row(n - 1) =
        (2 * v.row(n - 1) - 5 * v.row(n - 2) + 4 * v.row(n - 3) - v.row(n - 4)) * c;
    return out;
}

/// Second derivative along y; same stencils as dxx.
template <typename Scalar>
WignerField<Scalar> dyy(const WignerField<Scalar>& f) {
    detail::require_stencil_span(f.grid, "dyy");
    const auto n = f.grid.ny();
    const Scalar c = Scalar(1) / (f.grid.hy() * f.grid.hy());
    WignerField<Scalar> out{f.grid, typename WignerField<Scalar>::Array(f.grid.nx(), n)};
    const auto& v = f.values;
    out.values.middleCols(1, n - 2) =
        (v.leftCols(n - 2) + v.rightCols(n - 2) - 2 * v.middleCols(1, n - 2)).eval() * c;
    out.values.col(0) = (2 * v.col(0) - 5 * v.col(1) + 4 * v.col(2) - v.col(3)) * c;
    out.values.col(n - 1) =
        (2 * v.col(n - 1) - 5 * v.col(n - 2) + 4 * v.col(n - 3) - v.col(n - 4)) * c;
    return out;
}

/// Mixed derivative d^2/dxdy as the composition of the first-derivative
/// stencils. On the interior this reduces to the standard 4-point cross
/// (f(i+1,j+1) - f(i+1,j-1) - f(i-1,j+1) + f(i-1,j-1)) / (4 hx hy).
template <typename Scalar>
WignerField<Scalar> dxy(const WignerField<Scalar>& f) {
    return dx(dy(f));
}

/// Second-order Laplacian (dxx + dyy), same grid.
template <typename Scalar>
WignerField<Scalar> laplacian(const WignerField<Scalar>& f) {
    WignerField<Scalar> out = dxx(f);
    out.values += dyy(f).values;
    return out;
}

/// Separable Gaussian convolution with per-axis kernel exp(-t^2/(2 sigma^2)),
/// truncated at 6 sigma and renormalized to unit sum after truncation; zero
/// padding outside the grid. sigma == 0 is the identity; a sub-grid blur
/// (sigma < hx/2) returns the field unchanged with blur_skipped set.
template <typename Scalar>
WignerField<Scalar> convolve_gaussian(const WignerField<Scalar>& f, Scalar sigma) {
    using Array = typename WignerField<Scalar>::Array;
    using Vector = Eigen::Array<Scalar, Eigen::Dynamic, 1>;
    if (sigma < Scalar(0)) throw std::invalid_argument("convolve_gaussian: sigma must be >= 0");
    if (sigma == Scalar(0)) return f;
    const auto& g = f.grid;
    if (sigma < g.hx() / 2) {
        WignerField<Scalar> out = f;
        out.blur_skipped = true;
        return out;
    }
    const Scalar half_x = (g.x_max() - g.x_min()) / 2;
    const Scalar half_y = (g.y_max() - g.y_min()) / 2;
    if (6 * sigma > half_x || 6 * sigma > half_y)
        throw KernelExceedsGrid("convolve_gaussian: 6*sigma = " + std::to_string(6 * sigma) +
                                " exceeds half the grid extent");

    auto kernel = [sigma](Scalar h) {
        const Eigen::Index k = Eigen::Index(std::floor(6 * sigma / h));
        Vector w(2 * k + 1);
        for (Eigen::Index i = -k; i <= k; ++i)
            w(i + k) = std::exp(-(Scalar(i) * h) * (Scalar(i) * h) / (2 * sigma * sigma));
        w /= w.sum();
        return w;
    };

    const Eigen::Index nx = g.nx(), ny = g.ny();

    // Pass along x: each output column is a sum of shifted segments of the
    // input column, zero outside.
    Vector wx = kernel(g.hx());
    const Eigen::Index kx = (wx.size() - 1) / 2;
    Array tmp = Array::Zero(nx, ny);
#pragma omp parallel for
    for (Eigen::Index j = 0; j < ny; ++j) {
        for (Eigen::Index s = -kx; s <= kx; ++s) {
            const Eigen::Index lo = std::max(Eigen::Index(0), -s);
            const Eigen::Index hi = std::min(nx, nx - s);
            if (hi <= lo) continue;
            tmp.col(j).segment(lo, hi - lo) += wx(s + kx) * f.values.col(j).segment(lo + s, hi - lo);
        }
    }

    // Pass along y: each output column is a weighted sum of neighboring
    // columns of the intermediate.
    Vector wy = kernel(g.hy());
    const Eigen::Index ky = (wy.size() - 1) / 2;
    WignerField<Scalar> out{g, Array::Zero(nx, ny)};
#pragma omp parallel for
    for (Eigen::Index j = 0; j < ny; ++j) {
        for (Eigen::Index s = -ky; s <= ky; ++s) {
            const Eigen::Index jj = j + s;
            if (jj < 0 || jj >= ny) continue;
            out.values.col(j) += wy(s + ky) * tmp.col(jj);
        }
    }
    return out;
}

/// Bilinear interpolation of the field at an arbitrary point; zero outside the
/// grid. Kept out of the primary metric paths (quadrature, derivatives); used
/// by the field-input loss variant.
template <typename Scalar>
Scalar bilinear_sample(const WignerField<Scalar>& f, Scalar x, Scalar y) {
    const auto& g = f.grid;
    const Scalar fx = (x - g.x_min()) / g.hx();
    const Scalar fy = (y - g.y_min()) / g.hy();
    if (fx < 0 || fy < 0 || fx > Scalar(g.nx() - 1) || fy > Scalar(g.ny() - 1)) return Scalar(0);
    const Eigen::Index i = std::min(Eigen::Index(fx), g.nx() - 2);
    const Eigen::Index j = std::min(Eigen::Index(fy), g.ny() - 2);
    const Scalar tx = fx - Scalar(i), ty = fy - Scalar(j);
    return (1 - tx) * (1 - ty) * f.values(i, j) + tx * (1 - ty) * f.values(i + 1, j) +
           (1 - tx) * ty * f.values(i, j + 1) + tx * ty * f.values(i + 1, j + 1);
}

/// Integrals of the Hessian components over the strictly negative region,
/// computed with the stencils above (one-sided on the boundary ring):
///   ixx = integral_{W<0} Wxx, iyy = integral_{W<0} Wyy, ixy = integral_{W<0} Wxy.
template <typename Scalar>
struct NegativeRegionHessian {
    Scalar ixx, iyy, ixy;
};

template <typename Scalar>
NegativeRegionHessian<Scalar> hessian_over_negative(const WignerField<Scalar>& f) {
    const auto wxx = dxx(f), wyy = dyy(f), wxy = dxy(f);
    const auto mask = f.values < Scalar(0);
    const Scalar area = f.grid.cell_area();
    typename WignerField<Scalar>::Array zero =
        WignerField<Scalar>::Array::Zero(f.grid.nx(), f.grid.ny());
    return {mask.select(wxx.values, zero).sum() * area,
            mask.select(wyy.values, zero).sum() * area,
            mask.select(wxy.values, zero).sum() * area};
}

}  // namespace wigner
