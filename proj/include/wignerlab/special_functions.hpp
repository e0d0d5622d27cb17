#pragma once

#include <cmath>

namespace wigner {

/// log(n!) via lgamma.
inline double lfact(int n) { return std::lgamma(double(n) + 1.0); }

/// Laguerre polynomial damped by the Gaussian weight, L_n(z) * exp(-z/2),
/// via the three-term recurrence run on the damped values. The damping keeps
/// every intermediate below exp(z/2) * exp(-z/2) = O(1) in the oscillatory
/// region and lets the far tail underflow to zero instead of overflowing.
template <typename Scalar>
Scalar laguerre_scaled(int n, Scalar z) {
    const Scalar damp = std::exp(-z / 2);
    Scalar lkm1 = damp;
    if (n == 0) return lkm1;
    Scalar lk = (1 - z) * damp;
    for (int k = 1; k < n; ++k) {
        const Scalar lkp1 = ((Scalar(2 * k + 1) - z) * lk - Scalar(k) * lkm1) / Scalar(k + 1);
        lkm1 = lk;
        lk = lkp1;
    }
    return lk;
}

}  // namespace wigner
