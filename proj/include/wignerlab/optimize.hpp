#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "wignerlab/negativity.hpp"
#include "wignerlab/squeeze.hpp"

namespace wigner {

template <typename Scalar = double>
struct OptimizeConfig {
    Scalar r_max = Scalar(2);
    int restarts = 5;
    Scalar tol = Scalar(1e-5);
    int max_evals = 400;
    std::uint64_t seed = 0;
    GridRequest grid{};
};

template <typename Scalar = double>
struct OptimumRecord {
    SqueezeParams<Scalar> params;
    Scalar v_neg;
    int evals;
    bool converged;
};

namespace detail {

template <typename Scalar>
struct SimplexResult {
    Eigen::Matrix<Scalar, 2, 1> x;
    Scalar f;
    bool converged;
};

/// Plain 2-D Nelder-Mead (reflection 1, expansion 2, contraction 1/2,
/// shrink 1/2). Terminates when the simplex function spread falls below tol
/// or the evaluation budget runs out. Infinite objective values (out-of-bound
/// candidates) are legal and get replaced like any worst vertex.
template <typename Scalar, typename F>
SimplexResult<Scalar> nelder_mead_2d(F&& f, Eigen::Matrix<Scalar, 2, 1> x0,
                                     Eigen::Matrix<Scalar, 2, 1> step, Scalar tol, int max_evals) {
    using Vec = Eigen::Matrix<Scalar, 2, 1>;
    std::array<Vec, 3> x{x0, x0 + Vec(step(0), 0), x0 + Vec(0, step(1))};
    std::array<Scalar, 3> fx{};
    int evals = 0;
    for (int i = 0; i < 3; ++i) fx[i] = (++evals, f(x[i]));

    auto order = [&] {
        std::array<int, 3> idx{0, 1, 2};
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fx[a] < fx[b]; });
        std::array<Vec, 3> xs{x[idx[0]], x[idx[1]], x[idx[2]]};
        std::array<Scalar, 3> fs{fx[idx[0]], fx[idx[1]], fx[idx[2]]};
        x = xs;
        fx = fs;
    };

    bool converged = false;
    while (evals < max_evals) {
        order();
        if (std::isfinite(fx[2]) && fx[2] - fx[0] <= tol) {
            converged = true;
            break;
        }
        const Vec centroid = (x[0] + x[1]) / 2;
        const Vec xr = centroid + (centroid - x[2]);
        const Scalar fr = (++evals, f(xr));
        if (fr < fx[0]) {
            const Vec xe = centroid + 2 * (xr - centroid);
            const Scalar fe = (++evals, f(xe));
            if (fe < fr) {
                x[2] = xe;
                fx[2] = fe;
            } else {
                x[2] = xr;
                fx[2] = fr;
            }
        } else if (fr < fx[1]) {
            x[2] = xr;
            fx[2] = fr;
        } else {
            const bool outside = fr < fx[2];
            const Vec xc = centroid + Scalar(0.5) * ((outside ? xr : x[2]) - centroid);
            const Scalar fc = (++evals, f(xc));
            if (fc < (outside ? fr : fx[2])) {
                x[2] = xc;
                fx[2] = fc;
            } else {
                for (int i = 1; i < 3; ++i) {
                    x[i] = x[0] + Scalar(0.5) * (x[i] - x[0]);
                    fx[i] = (++evals, f(x[i]));
                }
            }
        }
    }
    order();
    return {x[0], fx[0], converged};
}

}  // namespace detail

/// Maximizes the negativity volume surviving the loss channel over the squeeze
/// parameters, by multi-start Nelder-Mead. Restarts are seeded at (0, 0), at
/// the closed-form lossless optimum when it exists, and at random draws; the
/// returned record is the best point ever evaluated, so it never falls below
/// any seed. Objective evaluations compose the analytic evaluators and re-grid
/// per candidate; candidates the grid budget cannot resolve are rejected.
/// A missed tolerance only clears the converged flag.
template <typename Scalar>
OptimumRecord<Scalar> optimize_squeeze_at_loss(const StateSpec<Scalar>& s, Efficiency<Scalar> eta,
                                               const OptimizeConfig<Scalar>& cfg = {}) {
    using Vec = Eigen::Matrix<Scalar, 2, 1>;
    if (!(eta.value() > Scalar(0.5)))
        throw std::invalid_argument("optimize_squeeze_at_loss: eta must be in (0.5, 1]");
    if (cfg.restarts < 1) throw std::invalid_argument("optimize_squeeze_at_loss: restarts >= 1");

    int evals = 0;
    Vec best_x = Vec::Zero();
    Scalar best_f = std::numeric_limits<Scalar>::infinity();
    auto objective = [&](const Vec& p) -> Scalar {
        if (p(0) < 0 || p(0) > cfg.r_max) return std::numeric_limits<Scalar>::infinity();
        Scalar value;
        try {
            ++evals;
            const auto field =
                squeezed_lossy_field(s, SqueezeParams<Scalar>(p(0), p(1)), eta, cfg.grid);
            value = -negativity_volume(field).v_neg;
        } catch (const GridResolutionExceeded&) {
            return std::numeric_limits<Scalar>::infinity();
        }
        if (value < best_f) {
            best_f = value;
            best_x = p;
        }
        return value;
    };

    std::vector<Vec> seeds;
    seeds.push_back(Vec::Zero());
    try {
        const auto lossless = build_field(s, auto_grid<Scalar>(s, 0, 0, cfg.grid));
        const auto rep = vulnerability_report(lossless);
        if (!rep.degenerate && rep.params.r() <= cfg.r_max)
            seeds.push_back(Vec(rep.params.r(), rep.params.phi()));
    } catch (const Error&) {
        // no analytic seed; random restarts still run
    }
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<Scalar> draw_r(0, std::min(cfg.r_max, Scalar(1.5)));
    std::uniform_real_distribution<Scalar> draw_phi(0, std::numbers::pi_v<Scalar>);
    while (Eigen::Index(seeds.size()) < cfg.restarts) {
        const Scalar r = draw_r(rng);
        seeds.push_back(Vec(r, draw_phi(rng)));
    }

    bool converged = false;
    for (const auto& seed : seeds) {
        const auto res = detail::nelder_mead_2d(objective, seed, Vec(Scalar(0.1), Scalar(0.15)),
                                                cfg.tol, cfg.max_evals);
        converged = converged || res.converged;
    }
    return {SqueezeParams<Scalar>(best_x(0), best_x(1)), -best_f, evals, converged};
}

template <typename Scalar = double>
struct OptimalRPoint {
    Scalar param;
    Scalar r_numeric;
    Scalar r_analytic;
};

/// Per state of a homogeneous family: the numeric optimum at the given loss
/// and the closed-form lossless value, for plotting.
template <typename Scalar>
std::vector<OptimalRPoint<Scalar>> optimal_r_curve(const std::vector<StateSpec<Scalar>>& states,
                                                   Efficiency<Scalar> eta,
                                                   const OptimizeConfig<Scalar>& cfg = {}) {
    if (states.empty()) throw std::invalid_argument("optimal_r_curve: empty state list");
    for (const auto& s : states)
        if (s.variant().index() != states.front().variant().index())
            throw std::invalid_argument("optimal_r_curve: states must be a homogeneous family");
    std::vector<OptimalRPoint<Scalar>> out;
    out.reserve(states.size());
    for (const auto& s : states) {
        const auto rep = vulnerability_report(build_field(s, auto_grid<Scalar>(s, 0, 0, cfg.grid)));
        const Scalar r_analytic = rep.degenerate ? Scalar(0) : rep.params.r();
        const auto rec = optimize_squeeze_at_loss(s, eta, cfg);
        out.push_back({s.family_parameter(), rec.params.r(), r_analytic});
    }
    return out;
}

}  // namespace wigner
