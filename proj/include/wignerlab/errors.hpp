#pragma once

#include <stdexcept>
#include <string>

namespace wigner {

/// Base class of all recoverable numerical failures. `name()` is a stable
/// identifier suitable for diagnostics and exit-code mapping in the CLI;
/// construction-time contract violations use std::invalid_argument instead.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& what)
        : std::runtime_error(what), name_(std::move(name)) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

/// Stencil operations need at least a 5-point span per axis.
class GridTooSmall : public Error {
public:
    explicit GridTooSmall(const std::string& what) : Error("GridTooSmall", what) {}
};

/// Gaussian kernel support (6 sigma) exceeds half the grid extent; the result
/// would be dominated by boundary truncation.
class KernelExceedsGrid : public Error {
public:
    explicit KernelExceedsGrid(const std::string& what) : Error("KernelExceedsGrid", what) {}
};

/// Fock index beyond the accuracy budget of the Laguerre recurrence.
class OrderTooLarge : public Error {
public:
    explicit OrderTooLarge(const std::string& what) : Error("OrderTooLarge", what) {}
};

/// Requested amplitude exceeds the Fock truncation budget.
class TruncationBudget : public Error {
public:
    explicit TruncationBudget(const std::string& what) : Error("TruncationBudget", what) {}
};

/// Loss blur narrower than half a grid step; the caller must refine the grid.
class BlurUnderResolved : public Error {
public:
    explicit BlurUnderResolved(const std::string& what) : Error("BlurUnderResolved", what) {}
};

/// Negative region is empty or carries no curvature (d0 <= 0); the optimal
/// squeeze is undefined.
class DegenerateFlat : public Error {
public:
    explicit DegenerateFlat(const std::string& what) : Error("DegenerateFlat", what) {}
};

/// The optimal-squeeze ratio diverges (d0 - |d| below tolerance); the negative
/// region curvature is rank-deficient and no finite squeeze is optimal.
class UnboundedSqueeze : public Error {
public:
    explicit UnboundedSqueeze(const std::string& what) : Error("UnboundedSqueeze", what) {}
};

/// Auto-sizing would need more points than the configured cap.
class GridResolutionExceeded : public Error {
public:
    explicit GridResolutionExceeded(const std::string& what)
        : Error("GridResolutionExceeded", what) {}
};

}  // namespace wigner
