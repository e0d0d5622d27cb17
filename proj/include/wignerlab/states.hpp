#pragma once

#include <Eigen/Core>

#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "wignerlab/errors.hpp"
#include "wignerlab/phase_grid.hpp"
#include "wignerlab/special_functions.hpp"
#include "wignerlab/wigner_field.hpp"

namespace wigner {

inline constexpr int kMaxFockIndex = 200;

/// Symbolic description of a quantum state. Coherent amplitudes are real and
/// displace along +x, matching the vacuum convention W = (1/pi) exp(-x^2-y^2)
/// with the coherent peak at x = sqrt(2) alpha.
template <typename Scalar = double>
class StateSpec {
public:
    struct Vacuum {};
    struct Coherent {
        Scalar alpha;
    };
    struct Fock {
        int n;
    };
    struct Cat {
        Scalar alpha;
    };
    struct Banana {
        Scalar alpha;
        Scalar gamma;
        /// Nonlinearity measure R = alpha^2 * gamma.
        Scalar big_r() const { return alpha * alpha * gamma; }
    };
    struct FockSuperposition {
        std::vector<std::complex<Scalar>> coefficients;
    };
    using Variant = std::variant<Vacuum, Coherent, Fock, Cat, Banana, FockSuperposition>;

    static StateSpec vacuum() { return StateSpec(Vacuum{}); }

    static StateSpec coherent(Scalar alpha) {
        if (!(alpha >= 0)) throw std::invalid_argument("coherent: alpha must be >= 0");
        return StateSpec(Coherent{alpha});
    }

    static StateSpec fock(int n) {
        if (n < 0) throw std::invalid_argument("fock: n must be >= 0");
        if (n > kMaxFockIndex)
            throw OrderTooLarge("fock: n = " + std::to_string(n) +
                                " exceeds the recurrence budget of " + std::to_string(kMaxFockIndex));
        return StateSpec(Fock{n});
    }

    static StateSpec cat(Scalar alpha) {
        if (!(alpha > 0)) throw std::invalid_argument("cat: alpha must be > 0");
        return StateSpec(Cat{alpha});
    }

    static StateSpec banana(Scalar alpha, Scalar gamma) {
        if (!(alpha > 0)) throw std::invalid_argument("banana: alpha must be > 0");
        if (!(gamma >= 0)) throw std::invalid_argument("banana: gamma must be >= 0");
        if (alpha > 8)
            throw TruncationBudget("banana: alpha = " + std::to_string(alpha) +
                                   " exceeds the Fock truncation budget (alpha <= 8)");
        return StateSpec(Banana{alpha, gamma});
    }

    /// Banana state specified by the nonlinearity measure R = alpha^2 gamma.
    static StateSpec banana_r(Scalar alpha, Scalar big_r) {
        if (!(alpha > 0)) throw std::invalid_argument("banana: alpha must be > 0");
        return banana(alpha, big_r / (alpha * alpha));
    }

    static StateSpec fock_superposition(std::vector<std::complex<Scalar>> coefficients) {
        if (coefficients.empty())
            throw std::invalid_argument("fock_superposition: empty coefficient list");
        if (Eigen::Index(coefficients.size()) - 1 > kMaxFockIndex)
            throw OrderTooLarge("fock_superposition: top index exceeds " +
                                std::to_string(kMaxFockIndex));
        Scalar norm2 = 0;
        for (const auto& c : coefficients) norm2 += std::norm(c);
        if (std::abs(norm2 - 1) > Scalar(1e-9))
            throw std::invalid_argument(
                "fock_superposition: squared-magnitude sum must be 1 +- 1e-9");
        return StateSpec(FockSuperposition{std::move(coefficients)});
    }

    const Variant& variant() const { return v_; }

    template <typename V>
    const V* get_if() const {
        return std::get_if<V>(&v_);
    }

    std::string family_name() const {
        struct Visitor {
            std::string operator()(const Vacuum&) const { return "vacuum"; }
            std::string operator()(const Coherent&) const { return "coherent"; }
            std::string operator()(const Fock&) const { return "fock"; }
            std::string operator()(const Cat&) const { return "cat"; }
            std::string operator()(const Banana&) const { return "banana"; }
            std::string operator()(const FockSuperposition&) const { return "fock_superposition"; }
        };
        return std::visit(Visitor{}, v_);
    }

    /// The sweep parameter of the family: alpha for displaced families, n for
    /// Fock, 0 for vacuum, top index for superpositions.
    Scalar family_parameter() const {
        struct Visitor {
            Scalar operator()(const Vacuum&) const { return 0; }
            Scalar operator()(const Coherent& c) const { return c.alpha; }
            Scalar operator()(const Fock& f) const { return Scalar(f.n); }
            Scalar operator()(const Cat& c) const { return c.alpha; }
            Scalar operator()(const Banana& b) const { return b.alpha; }
            Scalar operator()(const FockSuperposition& f) const {
                return Scalar(f.coefficients.size() - 1);
            }
        };
        return std::visit(Visitor{}, v_);
    }

private:
    explicit StateSpec(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

using StateSpecd = StateSpec<double>;

/// Fock truncation order used for the banana expansion: mean photon number
/// alpha^2 plus a generous number-spread margin. Validated by the
/// self-convergence tests.
template <typename Scalar>
int banana_truncation(Scalar alpha) {
    return int(std::ceil(alpha * alpha + 8 * alpha + 12));
}

// --- closed-form evaluators -----------------------------------------------

template <typename Scalar>
Scalar vacuum_wigner(Scalar x, Scalar y) {
    return std::exp(-x * x - y * y) / std::numbers::pi_v<Scalar>;
}

template <typename Scalar>
Scalar coherent_wigner(Scalar alpha, Scalar x, Scalar y) {
    const Scalar u = x - std::numbers::sqrt2_v<Scalar> * alpha;
    return std::exp(-u * u - y * y) / std::numbers::pi_v<Scalar>;
}

/// W_n(x, y) = ((-1)^n / pi) L_n(2 r^2) exp(-r^2), evaluated through the
/// damped Laguerre recurrence.
template <typename Scalar>
Scalar fock_wigner(int n, Scalar x, Scalar y) {
    if (n < 0) throw std::invalid_argument("fock_wigner: n must be >= 0");
    if (n > kMaxFockIndex)
        throw OrderTooLarge("fock_wigner: n exceeds the recurrence budget of " +
                            std::to_string(kMaxFockIndex));
    const Scalar z = 2 * (x * x + y * y);
    const Scalar sign = (n % 2 == 0) ? Scalar(1) : Scalar(-1);
    return sign * laguerre_scaled(n, z) / std::numbers::pi_v<Scalar>;
}

/// Even cat state (|alpha> + |-alpha>)/norm:
///   W = (W_- + W_+ + W_int) / (1 + exp(-2 alpha^2))
///   W_+- = (1/2pi) exp(-y^2 - (x -+ sqrt(2) alpha)^2)
///   W_int = (1/pi) exp(-y^2 - x^2) cos(2 sqrt(2) alpha y)
template <typename Scalar>
Scalar cat_wigner(Scalar alpha, Scalar x, Scalar y) {
    if (!(alpha > 0)) throw std::invalid_argument("cat_wigner: alpha must be > 0");
    constexpr Scalar pi = std::numbers::pi_v<Scalar>;
    const Scalar d = std::numbers::sqrt2_v<Scalar> * alpha;
    const Scalar wm = std::exp(-y * y - (x + d) * (x + d)) / (2 * pi);
    const Scalar wp = std::exp(-y * y - (x - d) * (x - d)) / (2 * pi);
    const Scalar wint = std::exp(-y * y - x * x) * std::cos(2 * d * y) / pi;
    return (wm + wp + wint) / (1 + std::exp(-2 * alpha * alpha));
}

// --- Fock superposition engine ---------------------------------------------

/// Wigner function of a pure state with Fock coefficients c_0..c_N,
///   W(x, y) = (1/pi) [ sum_a B(0,a) Lh_a(z)
///                      + 2 sum_{j>=1} Re( e^{i j theta} sum_a B(j,a) Lh^{(j)}_a(z) ) ]
/// with z = 2 (x^2 + y^2), theta = atan2(y, x),
///   B(j,a) = c_a conj(c_{a+j}) (-1)^a sqrt(a! / (a+j)!)
/// and Lh^{(j)}_a the associated Laguerre sequence at z pre-scaled by
/// z^{j/2} exp(-z/2). The scaling keeps the recurrence inside double range
/// for every point of a grid that covers the state.
///
/// The point-independent table B(j, a) is built once. Evaluation is O(N^2)
/// per point; points outside the classically allowed disc r > sqrt(2N) + 6
/// return zero. The batch entry point runs the recurrences across a whole
/// strip of points at once so the inner loops vectorize.
template <typename Scalar>
class FockSumTable {
public:
    explicit FockSumTable(const std::vector<std::complex<Scalar>>& coeffs) {
        n_ = int(coeffs.size()) - 1;
        if (n_ < 0) throw std::invalid_argument("FockSumTable: empty coefficient list");
        const Scalar r_cut = std::sqrt(Scalar(2 * n_)) + 6;
        r_cut2_ = r_cut * r_cut;
        row_.resize(n_ + 1);
        b_.reserve(std::size_t(n_ + 1) * std::size_t(n_ + 2) / 2);
        for (int j = 0; j <= n_; ++j) {
            row_[j] = b_.size();
            for (int a = 0; a + j <= n_; ++a) {
                const Scalar sign = (a % 2 == 0) ? Scalar(1) : Scalar(-1);
                const Scalar ratio = std::exp(Scalar(0.5) * Scalar(lfact(a) - lfact(a + j)));
                b_.push_back(coeffs[a] * std::conj(coeffs[a + j]) * sign * ratio);
            }
        }
    }

    int top_index() const { return n_; }
    Scalar support_radius() const { return std::sqrt(r_cut2_); }

    Scalar operator()(Scalar x, Scalar y) const {
        const Scalar r2 = x * x + y * y;
        if (r2 > r_cut2_) return 0;
        const Scalar z = 2 * r2;
        const Scalar log_gamma = (z > 0) ? std::log(z) / 2 : Scalar(0);
        const Scalar theta = std::atan2(y, x);
        const std::complex<Scalar> rot = std::polar(Scalar(1), theta);
        std::complex<Scalar> phase(1, 0);
        Scalar acc = 0;
        for (int j = 0; j <= n_; ++j, phase *= rot) {
            const Scalar w = (z > 0) ? std::exp(Scalar(j) * log_gamma - z / 2)
                                     : (j == 0 ? Scalar(1) : Scalar(0));
            if (w == 0) continue;
            const std::complex<Scalar>* b = b_.data() + row_[j];
            const int top_a = n_ - j;
            Scalar lkm1 = w;
            std::complex<Scalar> s = b[0] * lkm1;
            if (top_a >= 1) {
                Scalar lk = (Scalar(j + 1) - z) * w;
                s += b[1] * lk;
                for (int a = 1; a < top_a; ++a) {
                    const Scalar lkp1 =
                        ((Scalar(2 * a + j + 1) - z) * lk - Scalar(a + j) * lkm1) / Scalar(a + 1);
                    lkm1 = lk;
                    lk = lkp1;
                    s += b[a + 1] * lk;
                }
            }
            acc += (j == 0) ? s.real() : 2 * (phase * s).real();
        }
        return acc / std::numbers::pi_v<Scalar>;
    }

    /// Evaluates a strip of points (x[i], y[i]), i < n, into out[i]. The
    /// callers pass points along straight lines, so the in-support subset is
    /// a single contiguous index range and everything outside it is zero.
    void eval_batch(const Scalar* x, const Scalar* y, Eigen::Index n, Scalar* out) const {
        using Arr = Eigen::Array<Scalar, Eigen::Dynamic, 1>;
        std::fill(out, out + n, Scalar(0));
        Eigen::Index lo = 0, hi = n;
        auto r2_at = [&](Eigen::Index i) { return x[i] * x[i] + y[i] * y[i]; };
        while (lo < hi && r2_at(lo) > r_cut2_) ++lo;
        while (hi > lo && r2_at(hi - 1) > r_cut2_) --hi;
        const Eigen::Index m = hi - lo;
        if (m == 0) return;

        Eigen::Map<const Arr> vx(x + lo, m), vy(y + lo, m);
        const Arr r2 = vx.square() + vy.square();
        const Arr z = 2 * r2;
        const Arr g = z.sqrt();
        const Arr inv_r = (r2 > Scalar(0)).select(r2.sqrt().inverse(), Arr::Zero(m));
        const Arr rot_re = (r2 > Scalar(0)).select(vx * inv_r, Arr::Ones(m));
        const Arr rot_im = vy * inv_r;

        Arr w = (-z / 2).exp();
        Arr phase_re = Arr::Ones(m), phase_im = Arr::Zero(m);
        Arr acc = Arr::Zero(m);
        Arr l0(m), l1(m), l2(m), s_re(m), s_im(m), tmp(m);

        for (int j = 0; j <= n_; ++j) {
            const std::complex<Scalar>* b = b_.data() + row_[j];
            const int top_a = n_ - j;
            l0 = w;
            s_re = b[0].real() * l0;
            s_im = b[0].imag() * l0;
            if (top_a >= 1) {
                l1 = (Scalar(j + 1) - z) * w;
                s_re += b[1].real() * l1;
                s_im += b[1].imag() * l1;
                for (int a = 1; a < top_a; ++a) {
                    l2 = ((Scalar(2 * a + j + 1) - z) * l1 - Scalar(a + j) * l0) / Scalar(a + 1);
                    l0.swap(l1);
                    l1.swap(l2);
                    s_re += b[a + 1].real() * l1;
                    s_im += b[a + 1].imag() * l1;
                }
            }
            if (j == 0) {
                acc += s_re;
            } else {
                acc += 2 * (phase_re * s_re - phase_im * s_im);
            }
            w *= g;
            tmp = phase_re * rot_re - phase_im * rot_im;
            phase_im = phase_re * rot_im + phase_im * rot_re;
            phase_re.swap(tmp);
        }
        acc /= std::numbers::pi_v<Scalar>;
        for (Eigen::Index i = 0; i < m; ++i) out[lo + i] = acc(i);
    }

private:
    int n_;
    Scalar r_cut2_;
    std::vector<std::complex<Scalar>> b_;
    std::vector<std::size_t> row_;
};

namespace detail {

template <typename Scalar>
std::vector<std::complex<Scalar>> banana_coefficients(Scalar alpha, Scalar gamma, int n_max) {
    std::vector<std::complex<Scalar>> c(n_max + 1);
    const Scalar log_alpha = std::log(alpha);
    for (int a = 0; a <= n_max; ++a) {
        const Scalar mag =
            std::exp(-alpha * alpha / 2 + Scalar(a) * log_alpha - Scalar(lfact(a)) / 2);
        c[a] = std::polar(mag, -gamma * Scalar(a) * Scalar(a));
    }
    return c;
}

}  // namespace detail

/// Kerr-evolved coherent state exp(-i gamma n^2)|alpha>, expanded in the Fock
/// basis and summed through FockSumTable. One-off convenience for point
/// probes; building whole fields should go through make_evaluator so the
/// table is reused.
template <typename Scalar>
Scalar banana_wigner(Scalar alpha, Scalar gamma, Scalar x, Scalar y) {
    const auto spec = StateSpec<Scalar>::banana(alpha, gamma);  // validates the budget
    const auto& b = *spec.template get_if<typename StateSpec<Scalar>::Banana>();
    FockSumTable<Scalar> table(
        detail::banana_coefficients(b.alpha, b.gamma, banana_truncation(b.alpha)));
    return table(x, y);
}

// --- evaluators and fields ---------------------------------------------------

/// Callable view of a state producing W(x, y) at arbitrary coordinates, with
/// an optional vectorized strip evaluation for the expensive Fock-sum states.
/// Evaluators are pure and safe to share across threads.
template <typename Scalar = double>
struct WignerEvaluator {
    using PointFn = std::function<Scalar(Scalar, Scalar)>;
    using BatchFn = std::function<void(const Scalar*, const Scalar*, Eigen::Index, Scalar*)>;

    PointFn point;
    BatchFn batch;  // may be empty; when set it matches `point` values

    Scalar operator()(Scalar x, Scalar y) const { return point(x, y); }
};

template <typename Scalar>
WignerEvaluator<Scalar> make_evaluator(const StateSpec<Scalar>& s) {
    using S = StateSpec<Scalar>;
    WignerEvaluator<Scalar> ev;
    if (s.template get_if<typename S::Vacuum>()) {
        ev.point = [](Scalar x, Scalar y) { return vacuum_wigner(x, y); };
    } else if (const auto* c = s.template get_if<typename S::Coherent>()) {
        ev.point = [a = c->alpha](Scalar x, Scalar y) { return coherent_wigner(a, x, y); };
    } else if (const auto* f = s.template get_if<typename S::Fock>()) {
        ev.point = [n = f->n](Scalar x, Scalar y) { return fock_wigner(n, x, y); };
    } else if (const auto* c = s.template get_if<typename S::Cat>()) {
        ev.point = [a = c->alpha](Scalar x, Scalar y) { return cat_wigner(a, x, y); };
    } else {
        std::shared_ptr<FockSumTable<Scalar>> table;
        if (const auto* b = s.template get_if<typename S::Banana>()) {
            table = std::make_shared<FockSumTable<Scalar>>(
                detail::banana_coefficients(b->alpha, b->gamma, banana_truncation(b->alpha)));
        } else {
            const auto* fs = s.template get_if<typename S::FockSuperposition>();
            table = std::make_shared<FockSumTable<Scalar>>(fs->coefficients);
        }
        ev.point = [table](Scalar x, Scalar y) { return (*table)(x, y); };
        ev.batch = [table](const Scalar* x, const Scalar* y, Eigen::Index n, Scalar* out) {
            table->eval_batch(x, y, n, out);
        };
    }
    return ev;
}

/// Evaluator of the same function through the affine substitution
/// (x, y) -> A (x, y)^T, times a constant density factor.
template <typename Scalar>
WignerEvaluator<Scalar> affine_evaluator(const WignerEvaluator<Scalar>& w, Scalar a00, Scalar a01,
                                         Scalar a10, Scalar a11, Scalar density) {
    WignerEvaluator<Scalar> out;
    out.point = [p = w.point, a00, a01, a10, a11, density](Scalar x, Scalar y) {
        return density * p(a00 * x + a01 * y, a10 * x + a11 * y);
    };
    if (w.batch) {
        out.batch = [b = w.batch, a00, a01, a10, a11, density](const Scalar* x, const Scalar* y,
                                                               Eigen::Index n, Scalar* out_v) {
            std::vector<Scalar> tx(n), ty(n);
            for (Eigen::Index i = 0; i < n; ++i) {
                tx[i] = a00 * x[i] + a01 * y[i];
                ty[i] = a10 * x[i] + a11 * y[i];
            }
            b(tx.data(), ty.data(), n, out_v);
            if (density != Scalar(1))
                for (Eigen::Index i = 0; i < n; ++i) out_v[i] *= density;
        };
    }
    return out;
}

/// Evaluator of the same state viewed through the dilatation
/// (x, y) -> (x/scale, y/scale) with the density factor 1/scale^2.
template <typename Scalar>
WignerEvaluator<Scalar> scaled_evaluator(const WignerEvaluator<Scalar>& w, Scalar scale) {
    if (!(scale > 0)) throw std::invalid_argument("scaled_evaluator: scale must be > 0");
    const Scalar inv = 1 / scale;
    return affine_evaluator(w, inv, Scalar(0), Scalar(0), inv, inv * inv);
}

template <typename Scalar>
WignerField<Scalar> build_field(const WignerEvaluator<Scalar>& w, const PhaseGrid<Scalar>& g) {
    WignerField<Scalar> f{g, typename WignerField<Scalar>::Array(g.nx(), g.ny())};
    const auto xs = g.xs();
    const auto ys = g.ys();
    if (w.batch) {
#pragma omp parallel for
        for (Eigen::Index j = 0; j < g.ny(); ++j) {
            const std::vector<Scalar> yv(std::size_t(g.nx()), ys(j));
            w.batch(xs.data(), yv.data(), g.nx(), &f.values(0, j));
        }
    } else {
#pragma omp parallel for
        for (Eigen::Index j = 0; j < g.ny(); ++j)
            for (Eigen::Index i = 0; i < g.nx(); ++i) f.values(i, j) = w.point(xs(i), ys(j));
    }
    return f;
}

template <typename Scalar>
WignerField<Scalar> build_field(const StateSpec<Scalar>& s, const PhaseGrid<Scalar>& g) {
    return build_field(make_evaluator(s), g);
}

/// Samples the state's Wigner function at (x/scale, y/scale) / scale^2.
/// Exact (no interpolation): all states have analytic evaluators.
template <typename Scalar>
WignerField<Scalar> resample_scaled(const StateSpec<Scalar>& s, const PhaseGrid<Scalar>& g,
                                    Scalar scale) {
    return build_field(scaled_evaluator(make_evaluator(s), scale), g);
}

// --- grid auto-sizing ----------------------------------------------------------

/// Knobs for automatic grid sizing. `n` is the floor on the per-axis point
/// count, `pts_per_wave` the sampling density on the finest oscillation of the
/// state, `n_cap` the refusal threshold.
struct GridRequest {
    Eigen::Index n = 512;
    double pts_per_wave = 6.0;
    Eigen::Index n_cap = 6144;
    double extent_override = 0.0;
};

/// Displacement scale entering the extent rule +-(sqrt(2) alpha + 6).
template <typename Scalar>
Scalar displacement_scale(const StateSpec<Scalar>& s) {
    using S = StateSpec<Scalar>;
    if (const auto* f = s.template get_if<typename S::Fock>()) return std::sqrt(Scalar(f->n));
    if (const auto* fs = s.template get_if<typename S::FockSuperposition>())
        return std::sqrt(Scalar(fs->coefficients.size() - 1));
    return s.family_parameter();
}

/// Scale of the finest phase-space feature the state carries. Fock-type
/// states oscillate on the scale pi / sqrt(2n+1). Cat fringes go as
/// cos(2 sqrt(2) alpha y); their strict-sign negativity quadrature needs the
/// quarter wave resolved well, so that is the feature reported for cats.
template <typename Scalar>
Scalar min_feature_scale(const StateSpec<Scalar>& s) {
    using S = StateSpec<Scalar>;
    constexpr Scalar pi = std::numbers::pi_v<Scalar>;
    if (const auto* f = s.template get_if<typename S::Fock>())
        return pi / std::sqrt(Scalar(2 * f->n + 1));
    if (const auto* c = s.template get_if<typename S::Cat>())
        return std::min(pi / (4 * std::numbers::sqrt2_v<Scalar> * c->alpha), Scalar(2));
    if (const auto* b = s.template get_if<typename S::Banana>())
        return pi / std::sqrt(Scalar(2 * banana_truncation(b->alpha) + 1));
    if (const auto* fs = s.template get_if<typename S::FockSuperposition>())
        return pi / std::sqrt(Scalar(2 * (fs->coefficients.size() - 1) + 1));
    return Scalar(2);
}

/// Full wavelength of the state's straight interference fringes, or 0 when
/// it has none. Used to keep the sampling lattice incommensurate with the
/// fringe period.
template <typename Scalar>
Scalar fringe_wavelength(const StateSpec<Scalar>& s) {
    using S = StateSpec<Scalar>;
    if (const auto* c = s.template get_if<typename S::Cat>())
        return std::numbers::pi_v<Scalar> / (std::numbers::sqrt2_v<Scalar> * c->alpha);
    return 0;
}

namespace detail {

/// Distance of x to the nearest integer.
template <typename Scalar>
Scalar offset_from_integer(Scalar x) {
    return std::abs(x - std::round(x));
}

}  // namespace detail

/// Square grid sized to the state: half extent (sqrt(2) alpha + 6), expanded
/// by e^r when a squeeze of magnitude r is going to be sampled in the lab
/// frame, with the point count raised until both the finest (possibly
/// squeeze-compressed) oscillation and the loss blur width stay resolved.
/// A lattice spacing commensurate with a fringe period would accumulate the
/// sign-boundary quadrature error coherently across every fringe, so the
/// point count is nudged until the points-per-fringe ratio sits away from an
/// integer.
template <typename Scalar>
PhaseGrid<Scalar> auto_grid(const StateSpec<Scalar>& s, Scalar stretch_r = 0, Scalar blur_sigma = 0,
                            const GridRequest& req = {}) {
    const Scalar stretch = std::exp(stretch_r);
    Scalar extent = (std::numbers::sqrt2_v<Scalar> * displacement_scale(s) + 6) * stretch;
    if (req.extent_override > 0) extent = Scalar(req.extent_override);
    Scalar h = min_feature_scale(s) / (stretch * Scalar(req.pts_per_wave));
    if (blur_sigma > 0) h = std::min(h, blur_sigma);
    const auto needed = Eigen::Index(std::ceil(2 * extent / h)) + 1;
    auto n = std::max<Eigen::Index>(req.n, needed);

    const Scalar lam = fringe_wavelength(s) / stretch;  // worst-case compressed fringes
    if (lam > 0) {
        int guard = 0;
        while (guard++ < 64 &&
               detail::offset_from_integer(lam * Scalar(n - 1) / (2 * extent)) < Scalar(0.2))
            n += std::max<Eigen::Index>(1, n / 256);
    }
    if (n > req.n_cap)
        throw GridResolutionExceeded("auto_grid: " + std::to_string(n) +
                                     " points per axis needed, cap is " + std::to_string(req.n_cap));
    return PhaseGrid<Scalar>::centered_square(extent, n);
}

}  // namespace wigner
