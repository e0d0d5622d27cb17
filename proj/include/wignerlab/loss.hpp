#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "wignerlab/errors.hpp"
#include "wignerlab/states.hpp"
#include "wignerlab/wigner_field.hpp"

namespace wigner {

/// Quantum efficiency of the bosonic loss channel, eta in (0, 1].
template <typename Scalar = double>
class Efficiency {
public:
    explicit Efficiency(Scalar eta) : eta_(eta) {
        if (!(eta > 0 && eta <= 1))
            throw std::invalid_argument("Efficiency: eta must be in (0, 1], got " + std::to_string(eta));
    }
    Scalar value() const { return eta_; }

private:
    Scalar eta_;
};

using Efficiencyd = Efficiency<double>;

/// Per-axis width of the Gaussian blur the loss channel applies after the
/// sqrt(eta) coordinate dilatation.
template <typename Scalar>
Scalar loss_blur_sigma(Efficiency<Scalar> eta) {
    return std::sqrt((1 - eta.value()) / 2);
}

/// Bosonic loss channel in Wigner representation, factorized as an exact
/// analytic dilatation (scale sqrt(eta), density 1/eta) followed by a
/// separable Gaussian blur of width sigma = sqrt((1-eta)/2) per axis.
/// eta = 1 returns the unblurred field exactly.
template <typename Scalar>
WignerField<Scalar> apply_loss(const WignerEvaluator<Scalar>& w, const PhaseGrid<Scalar>& g,
                               Efficiency<Scalar> eta) {
    if (eta.value() == 1) return build_field(w, g);
    const Scalar sigma = loss_blur_sigma(eta);
    if (sigma < g.hx() / 2)
        throw BlurUnderResolved("apply_loss: blur sigma = " + std::to_string(sigma) +
                                " is below hx/2; refine the grid");
    auto scaled = build_field(scaled_evaluator(w, std::sqrt(eta.value())), g);
    return convolve_gaussian(scaled, sigma);
}

template <typename Scalar>
WignerField<Scalar> apply_loss(const StateSpec<Scalar>& s, const PhaseGrid<Scalar>& g,
                               Efficiency<Scalar> eta) {
    return apply_loss(make_evaluator(s), g, eta);
}

/// Field-input loss variant: the dilatation step resamples the stored values
/// by bilinear interpolation instead of re-evaluating an analytic form.
/// Accuracy is interpolation-limited; primary metrics go through the analytic
/// overloads, this one backs the channel-composition checks.
template <typename Scalar>
WignerField<Scalar> apply_loss(const WignerField<Scalar>& f, Efficiency<Scalar> eta) {
    if (eta.value() == 1) return f;
    const Scalar sigma = loss_blur_sigma(eta);
    const auto& g = f.grid;
    if (sigma < g.hx() / 2)
        throw BlurUnderResolved("apply_loss: blur sigma is below hx/2; refine the grid");
    const Scalar root_eta = std::sqrt(eta.value());
    WignerField<Scalar> scaled{g, typename WignerField<Scalar>::Array(g.nx(), g.ny())};
    const auto xs = g.xs();
    const auto ys = g.ys();
#pragma omp parallel for
    for (Eigen::Index j = 0; j < g.ny(); ++j)
        for (Eigen::Index i = 0; i < g.nx(); ++i)
            scaled.values(i, j) = bilinear_sample(f, xs(i) / root_eta, ys(j) / root_eta) / eta.value();
    return convolve_gaussian(scaled, sigma);
}

/// Analytic eta-derivative of the channel evaluated on a field already at
/// efficiency eta:
///   dW/deta = -(1/eta) [ 1 + (x dx + y dy)/2 + (dxx + dyy)/4 ] W.
/// The vacuum is a fixed point of the bracket.
template <typename Scalar>
WignerField<Scalar> decay_rate(const WignerField<Scalar>& f, Efficiency<Scalar> eta) {
    const auto& g = f.grid;
    auto wx = dx(f);
    auto wy = dy(f);
    auto lap = laplacian(f);
    const auto xs = g.xs();
    const auto ys = g.ys();
    WignerField<Scalar> out{g, typename WignerField<Scalar>::Array(g.nx(), g.ny())};
    out.values = f.values + Scalar(0.5) * (wx.values.colwise() * xs) +
                 Scalar(0.5) * (wy.values.rowwise() * ys.transpose()) + Scalar(0.25) * lap.values;
    out.values *= -1 / eta.value();
    return out;
}

/// dV_neg/deta at the field's efficiency: (1/(4 eta)) integral of the
/// Laplacian over the strictly negative region.
template <typename Scalar>
Scalar negativity_derivative(const WignerField<Scalar>& f, Efficiency<Scalar> eta) {
    const auto h = hessian_over_negative(f);
    return (h.ixx + h.iyy) / (4 * eta.value());
}

}  // namespace wigner
