#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "wignerlab/negativity.hpp"
#include "wignerlab/optimize.hpp"
#include "wignerlab/squeeze.hpp"

namespace wigner {

/// Pre-squeezing policy for loss-response curves. `analytic_once` squeezes by
/// the closed-form lossless optimum before the channel; `per_eta_optimized`
/// re-optimizes numerically at every efficiency.
enum class SqueezePolicy { none, analytic_once, per_eta_optimized };

inline const char* to_string(SqueezePolicy p) {
    switch (p) {
        case SqueezePolicy::none: return "none";
        case SqueezePolicy::analytic_once: return "analytic";
        case SqueezePolicy::per_eta_optimized: return "numeric";
    }
    return "?";
}

template <typename Scalar = double>
struct CurvePoint {
    Scalar eta;
    Scalar v_neg;
};

template <typename Scalar = double>
struct CurveOptions {
    GridRequest grid{};
    OptimizeConfig<Scalar> optimize{};
};

/// Negativity volume surviving the loss channel on an ascending ladder of
/// efficiencies. Below eta = 1/2 the output field is positive for any squeeze,
/// so the per-eta policy falls back to the unsqueezed channel there.
template <typename Scalar>
std::vector<CurvePoint<Scalar>> negativity_curve(const StateSpec<Scalar>& s,
                                                 const std::vector<Scalar>& etas,
                                                 SqueezePolicy policy,
                                                 const CurveOptions<Scalar>& opt = {}) {
    if (etas.empty()) throw std::invalid_argument("negativity_curve: empty eta list");
    for (std::size_t i = 0; i < etas.size(); ++i) {
        if (!(etas[i] > 0 && etas[i] <= 1))
            throw std::invalid_argument("negativity_curve: eta values must lie in (0, 1]");
        if (i > 0 && !(etas[i] > etas[i - 1]))
            throw std::invalid_argument("negativity_curve: eta values must be ascending");
    }

    SqueezeParams<Scalar> pre(0, 0);
    if (policy == SqueezePolicy::analytic_once) {
        const auto rep = vulnerability_report(build_field(s, auto_grid<Scalar>(s, 0, 0, opt.grid)));
        if (!rep.degenerate) pre = rep.params;
    }

    auto unsqueezed = [&](Efficiency<Scalar> e) {
        const auto grid = auto_grid(s, Scalar(0), loss_blur_sigma(e), opt.grid);
        return negativity_volume(apply_loss(s, grid, e)).v_neg;
    };

    std::vector<CurvePoint<Scalar>> out;
    out.reserve(etas.size());
    for (const Scalar eta : etas) {
        const Efficiency<Scalar> e(eta);
        Scalar v = 0;
        switch (policy) {
            case SqueezePolicy::none: v = unsqueezed(e); break;
            case SqueezePolicy::analytic_once:
                v = negativity_volume(squeezed_lossy_field(s, pre, e, opt.grid)).v_neg;
                break;
            case SqueezePolicy::per_eta_optimized:
                v = (eta > Scalar(0.5)) ? optimize_squeeze_at_loss(s, e, opt.optimize).v_neg
                                        : unsqueezed(e);
                break;
        }
        out.push_back({eta, v});
    }
    return out;
}

}  // namespace wigner
