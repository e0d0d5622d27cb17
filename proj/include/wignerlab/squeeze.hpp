#pragma once

#include <Eigen/Core>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "wignerlab/errors.hpp"
#include "wignerlab/loss.hpp"
#include "wignerlab/states.hpp"
#include "wignerlab/wigner_field.hpp"

namespace wigner {

/// Squeeze magnitude r >= 0 and orientation phi, normalized into [0, pi)
/// (the map has period pi in phi).
template <typename Scalar = double>
class SqueezeParams {
public:
    SqueezeParams(Scalar r, Scalar phi) : r_(r) {
        if (!(r >= 0)) throw std::invalid_argument("SqueezeParams: r must be >= 0");
        constexpr Scalar pi = std::numbers::pi_v<Scalar>;
        phi_ = std::fmod(phi, pi);
        if (phi_ < 0) phi_ += pi;
    }
    Scalar r() const { return r_; }
    Scalar phi() const { return phi_; }

private:
    Scalar r_, phi_;
};

using SqueezeParamsd = SqueezeParams<double>;

/// M(r, phi) = U^T S U with U the rotation by phi and S = diag(e^r, e^-r).
/// Symmetric, unit determinant; eigen-direction (cos phi, sin phi) carries
/// the e^r eigenvalue.
template <typename Scalar>
Eigen::Matrix<Scalar, 2, 2> squeeze_matrix(const SqueezeParams<Scalar>& p) {
    const Scalar c = std::cos(p.phi()), s = std::sin(p.phi());
    const Scalar ep = std::exp(p.r()), em = std::exp(-p.r());
    Eigen::Matrix<Scalar, 2, 2> m;
    m << ep * c * c + em * s * s, (ep - em) * c * s, (ep - em) * c * s, ep * s * s + em * c * c;
    return m;
}

/// Evaluator of the squeezed state, W_sq(x, y) = W(M (x, y)^T). Unit Jacobian,
/// so no density factor and the normalization is preserved.
template <typename Scalar>
WignerEvaluator<Scalar> squeezed_evaluator(const StateSpec<Scalar>& s,
                                           const SqueezeParams<Scalar>& p) {
    const Eigen::Matrix<Scalar, 2, 2> m = squeeze_matrix(p);
    return affine_evaluator(make_evaluator(s), m(0, 0), m(0, 1), m(1, 0), m(1, 1), Scalar(1));
}

/// Lab-frame squeezed field. The grid must cover the stretched support
/// (auto_grid with the matching stretch_r does).
template <typename Scalar>
WignerField<Scalar> apply_squeeze(const StateSpec<Scalar>& s, const SqueezeParams<Scalar>& p,
                                  const PhaseGrid<Scalar>& g) {
    return build_field(squeezed_evaluator(s, p), g);
}

// --- principal-frame sampling -------------------------------------------------

/// Anisotropic grid for sampling a squeezed state in the frame rotated by phi,
/// where the stretch is axis-aligned: along the compressed axis both support
/// and features shrink by e^-r, along the stretched axis both grow by e^r, so
/// the per-axis point count stays near the unsqueezed one until the loss blur
/// width starts to bind.
template <typename Scalar>
PhaseGrid<Scalar> principal_frame_grid(const StateSpec<Scalar>& s, Scalar r, Scalar blur_sigma,
                                       const GridRequest& req = {}) {
    Scalar extent0 = std::numbers::sqrt2_v<Scalar> * displacement_scale(s) + 6;
    if (req.extent_override > 0) extent0 = Scalar(req.extent_override);
    const Scalar stretch = std::exp(r);
    Scalar h_base = min_feature_scale(s) / Scalar(req.pts_per_wave);
    h_base = std::min(h_base, 2 * extent0 / Scalar(req.n));
    if (blur_sigma > 0) h_base = std::min(h_base, blur_sigma);
    // Both principal axes scale support and features together, so lattice /
    // fringe commensurability is settled by the base spacing alone.
    const Scalar lam = fringe_wavelength(s);
    if (lam > 0) {
        int guard = 0;
        while (guard++ < 64 && detail::offset_from_integer(lam / h_base) < Scalar(0.2))
            h_base *= Scalar(0.995);
    }

    const Scalar margin = blur_sigma > 0 ? 8 * blur_sigma : Scalar(0);
    const Scalar e1 = extent0 / stretch + margin;
    const Scalar e2 = extent0 * stretch + margin;
    const Scalar h1 = h_base / stretch;
    Scalar h2 = h_base * stretch;
    if (blur_sigma > 0) h2 = std::min(h2, blur_sigma);

    const auto count = [&req](Scalar e, Scalar h) {
        const auto n = std::max<Eigen::Index>(Eigen::Index(std::ceil(2 * e / h)) + 1, 16);
        if (n > req.n_cap)
            throw GridResolutionExceeded("principal_frame_grid: " + std::to_string(n) +
                                         " points needed on one axis, cap is " +
                                         std::to_string(req.n_cap));
        return n;
    };
    return PhaseGrid<Scalar>::centered(e1, e2, count(e1, h1), count(e2, h2));
}

/// Squeezed state pushed through the loss channel, sampled in the squeeze
/// principal frame: G(q) = W(U^T S q), dilated by sqrt(eta) and blurred. The
/// dilatation and the blur are isotropic, so rotation-invariant measures of
/// the returned field (quadrature integral, negativity volume, extrema) equal
/// those of the lab-frame lossy squeezed state.
template <typename Scalar>
WignerField<Scalar> squeezed_lossy_field(const StateSpec<Scalar>& s, const SqueezeParams<Scalar>& p,
                                         Efficiency<Scalar> eta, const GridRequest& req = {}) {
    const Scalar c = std::cos(p.phi()), sn = std::sin(p.phi());
    const Scalar ep = std::exp(p.r()), em = std::exp(-p.r());
    // B = U^T S: the squeezed state in the rotated frame samples W at B q.
    const WignerEvaluator<Scalar> rotated =
        affine_evaluator(make_evaluator(s), c * ep, -sn * em, sn * ep, c * em, Scalar(1));
    const Scalar sigma = eta.value() < 1 ? loss_blur_sigma(eta) : Scalar(0);
    const auto grid = principal_frame_grid(s, p.r(), sigma, req);
    if (eta.value() == 1) return build_field(rotated, grid);
    auto scaled = build_field(scaled_evaluator(rotated, std::sqrt(eta.value())), grid);
    return convolve_gaussian(scaled, sigma);
}

// --- Hessian coefficients and the optimal squeeze ------------------------------

/// Pauli-basis components of the Hessian of W integrated over the negative
/// region: d0 = I_xx + I_yy, d1 = 2 I_xy, d3 = I_xx - I_yy. The boundary-flux
/// matrix they encode is positive semidefinite, enforced with a relative
/// slack of 1e-6 for quadrature noise.
template <typename Scalar = double>
class DCoefficients {
public:
    DCoefficients(Scalar d0, Scalar d1, Scalar d3) : d0_(d0), d1_(d1), d3_(d3) {
        if (!(d0 >= 0)) throw std::invalid_argument("DCoefficients: d0 must be >= 0");
        if (d1 * d1 + d3 * d3 > d0 * d0 * (1 + Scalar(1e-6)))
            throw std::invalid_argument(
                "DCoefficients: d1^2 + d3^2 exceeds d0^2 beyond the PSD tolerance");
    }
    Scalar d0() const { return d0_; }
    Scalar d1() const { return d1_; }
    Scalar d3() const { return d3_; }

private:
    Scalar d0_, d1_, d3_;
};

using DCoefficientsd = DCoefficients<double>;

template <typename Scalar>
DCoefficients<Scalar> d_coefficients(const WignerField<Scalar>& f) {
    const auto h = hessian_over_negative(f);
    const Scalar d0 = h.ixx + h.iyy;
    const Scalar d1 = 2 * h.ixy;
    const Scalar d3 = h.ixx - h.iyy;
    // A positive-to-rounding field can catch a few noise cells whose curvature
    // integral is negative at the 1e-12 level; treat that as empty.
    if (d0 <= 0 && std::abs(d0) + std::hypot(d1, d3) <= Scalar(1e-9))
        return DCoefficients<Scalar>(0, 0, 0);
    return DCoefficients<Scalar>(d0, d1, d3);
}

template <typename Scalar = double>
struct SqueezeSolution {
    SqueezeParams<Scalar> params;
    /// d1 = d3 = 0 within tolerance: r = 0 is returned and any phi is optimal.
    bool degenerate;
};

/// Closed-form minimizer of the squeezed vulnerability:
///   e^{4r} = (d0 + q) / (d0 - q), cos(2 phi) = -d3/q, sin(2 phi) = -d1/q,
/// with q = sqrt(d1^2 + d3^2).
template <typename Scalar>
SqueezeSolution<Scalar> optimal_squeeze(const DCoefficients<Scalar>& d) {
    if (!(d.d0() > 0))
        throw DegenerateFlat("optimal_squeeze: d0 <= 0, the negative region is empty or flat");
    const Scalar q = std::hypot(d.d1(), d.d3());
    if (q < Scalar(1e-9) * d.d0()) return {SqueezeParams<Scalar>(0, 0), true};
    if (d.d0() - q <= Scalar(1e-9) * d.d0())
        throw UnboundedSqueeze(
            "optimal_squeeze: d0 - sqrt(d1^2 + d3^2) vanishes, the optimal ratio diverges");
    const Scalar r = std::log((d.d0() + q) / (d.d0() - q)) / 4;
    const Scalar phi = std::atan2(-d.d1(), -d.d3()) / 2;
    return {SqueezeParams<Scalar>(r, phi), false};
}

/// Vulnerability after squeezing by (r, phi):
///   V_sqz = [ d0 cosh(2r) + (d3 cos(2 phi) + d1 sin(2 phi)) sinh(2r) ] / 4.
template <typename Scalar>
Scalar squeezed_vulnerability(const DCoefficients<Scalar>& d, const SqueezeParams<Scalar>& p) {
    return (d.d0() * std::cosh(2 * p.r()) +
            (d.d3() * std::cos(2 * p.phi()) + d.d1() * std::sin(2 * p.phi())) *
                std::sinh(2 * p.r())) /
           4;
}

/// Vulnerability of the state behind the field: the rate at which its
/// negativity volume decays at the onset of loss, d0 / 4.
template <typename Scalar>
Scalar vulnerability(const WignerField<Scalar>& f) {
    return d_coefficients(f).d0() / 4;
}

template <typename Scalar = double>
struct VulnerabilityReport {
    DCoefficients<Scalar> d;
    Scalar v_org;
    Scalar v_sqz;
    SqueezeParams<Scalar> params;
    bool degenerate;
};

/// Full vulnerability analysis of a field: d coefficients, unsqueezed and
/// optimally squeezed vulnerability, and the optimal parameters. A field with
/// no curved negative region (d0 = 0) reports zeros with the degenerate flag
/// instead of failing.
template <typename Scalar>
VulnerabilityReport<Scalar> vulnerability_report(const WignerField<Scalar>& f) {
    const auto d = d_coefficients(f);
    if (!(d.d0() > 0)) return {d, 0, 0, SqueezeParams<Scalar>(0, 0), true};
    const auto sol = optimal_squeeze(d);
    return {d, d.d0() / 4, squeezed_vulnerability(d, sol.params), sol.params, sol.degenerate};
}

}  // namespace wigner
