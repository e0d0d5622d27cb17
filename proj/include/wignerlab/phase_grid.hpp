#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace wigner {

/// Uniform rectangular sampling lattice for the (x, y) quadrature plane.
/// Nodes are x_i = x_min + i*hx, i in [0, nx), and likewise in y; there are
/// no ghost cells. Spacings hx, hy are strictly positive derived values.
template <typename Scalar = double>
class PhaseGrid {
public:
    using Index = Eigen::Index;
    using Vector = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

    PhaseGrid(Scalar x_min, Scalar x_max, Scalar y_min, Scalar y_max, Index nx, Index ny)
        : x_min_(x_min), x_max_(x_max), y_min_(y_min), y_max_(y_max), nx_(nx), ny_(ny) {
        if (nx_ < 16 || ny_ < 16)
            throw std::invalid_argument("PhaseGrid: need at least 16 points per axis, got " +
                                        std::to_string(nx_) + "x" + std::to_string(ny_));
        if (!(x_max_ > x_min_) || !(y_max_ > y_min_))
            throw std::invalid_argument("PhaseGrid: bounds must satisfy max > min per axis");
    }

    /// Square grid on [-half_extent, half_extent]^2.
    static PhaseGrid centered_square(Scalar half_extent, Index n) {
        return PhaseGrid(-half_extent, half_extent, -half_extent, half_extent, n, n);
    }

    /// Rectangle centered on the origin with independent half extents.
    static PhaseGrid centered(Scalar half_x, Scalar half_y, Index nx, Index ny) {
        return PhaseGrid(-half_x, half_x, -half_y, half_y, nx, ny);
    }

    Scalar x_min() const { return x_min_; }
    Scalar x_max() const { return x_max_; }
    Scalar y_min() const { return y_min_; }
    Scalar y_max() const { return y_max_; }
    Index nx() const { return nx_; }
    Index ny() const { return ny_; }

    Scalar hx() const { return (x_max_ - x_min_) / Scalar(nx_ - 1); }
    Scalar hy() const { return (y_max_ - y_min_) / Scalar(ny_ - 1); }
    Scalar cell_area() const { return hx() * hy(); }

    Scalar x(Index i) const { return x_min_ + Scalar(i) * hx(); }
    Scalar y(Index j) const { return y_min_ + Scalar(j) * hy(); }

    Vector xs() const { return Vector::LinSpaced(nx_, x_min_, x_max_); }
    Vector ys() const { return Vector::LinSpaced(ny_, y_min_, y_max_); }

    bool operator==(const PhaseGrid& o) const = default;

private:
    Scalar x_min_, x_max_, y_min_, y_max_;
    Index nx_, ny_;
};

using PhaseGridd = PhaseGrid<double>;
using PhaseGridf = PhaseGrid<float>;

}  // namespace wigner
