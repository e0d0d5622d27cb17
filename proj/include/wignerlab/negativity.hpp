#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include "wignerlab/loss.hpp"
#include "wignerlab/wigner_field.hpp"

namespace wigner {

template <typename Scalar = double>
struct NegativityResult {
    Scalar v_neg;
    Eigen::Index negative_cell_count;
    Scalar min_value;
};

/// Negativity volume V_neg = -sum_{W<0} W * hx * hy (strict-sign membership).
/// Computed both as the region sum and as the full-grid quadrature of
/// (|W| - W)/2; the two routes must agree to rounding.
template <typename Scalar>
NegativityResult<Scalar> negativity_volume(const WignerField<Scalar>& f) {
    const auto& v = f.values;
    const Scalar area = f.grid.cell_area();
    typename WignerField<Scalar>::Array zero =
        WignerField<Scalar>::Array::Zero(f.grid.nx(), f.grid.ny());
    const Scalar region_sum = -(v < Scalar(0)).select(v, zero).sum() * area;
    const Scalar folded = ((v.abs() - v) / 2).sum() * area;
    const Scalar tol = std::numeric_limits<Scalar>::epsilon() * 1e4 *
                       std::max(Scalar(1), std::abs(region_sum));
    if (std::abs(region_sum - folded) > tol)
        throw std::logic_error("negativity_volume: region sum and folded quadrature disagree");
    return {region_sum, (v < Scalar(0)).count(), v.minCoeff()};
}

/// First-order model of the negativity under loss,
/// V_neg(eta) ~ V_neg(1) - (1 - eta) * V. Diagnostic for the linear regime.
template <typename Scalar>
Scalar taylor_estimate(Scalar v_neg_at_1, Scalar v, Efficiency<Scalar> eta) {
    return v_neg_at_1 - (1 - eta.value()) * v;
}

}  // namespace wigner
