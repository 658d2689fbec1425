#pragma once

#include "tvacov/kernel.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace tvacov {

/// A real-valued function sampled on an increasing grid in [0, 1].
struct Curve {
    std::vector<double> t;
    std::vector<double> value;
    /// First derivative estimates; empty unless requested.
    std::vector<double> slope;

    [[nodiscard]] std::size_t size() const noexcept { return t.size(); }
};

/// Nonzero local-linear weights omega(t, i) for one evaluation point.
///
/// Observation i (0-based) sits at t_i = (i + 1) / n. Weights are stored for
/// the contiguous index window [first, first + w.size()).
struct WeightSet {
    double t = 0.0;
    double b = 0.0;
    std::size_t n = 0;
    std::size_t first = 0;
    std::vector<double> w;

    [[nodiscard]] double weight(std::size_t i) const noexcept {
        return (i >= first && i - first < w.size()) ? w[i - first] : 0.0;
    }
};

/// Design point of observation i (0-based) in a series of length n.
[[nodiscard]] inline double design_point(std::size_t i, std::size_t n) noexcept {
    return static_cast<double>(i + 1) / static_cast<double>(n);
}

/// Checks 0 < b < 1/2 and n*b >= 4; throws ConfigError.
void validate_bandwidth(std::size_t n, double b);

/// Closed-form weights
///   omega(t,i) = K_b(t_i - t) [S2 - (t_i - t) S1] / [S2 S0 - S1^2].
/// Throws SingularDesignError when the normalized determinant drops below 1e-14.
[[nodiscard]] WeightSet local_linear_weights(std::size_t n, double t, double b, const Kernel& kernel);

/// Local-linear fit of `data` (on t_i = i/n) evaluated at every grid point.
/// Grid points are processed in parallel; each point is independent so the
/// result does not depend on the thread count.
[[nodiscard]] Curve fit_curve(std::span<const double> data, double b, const Kernel& kernel,
                              std::span<const double> grid, bool with_slope = false);

/// Fitted values at the design points themselves (the smoother applied to data).
[[nodiscard]] std::vector<double> fitted_values(std::span<const double> data, double b,
                                                const Kernel& kernel);

/// trace of the n x n smoother matrix, sum_i omega(t_i, i), without forming it.
[[nodiscard]] double hat_trace(std::size_t n, double b, const Kernel& kernel);

/// Data grid t_i = i/n restricted to [b, 1 - b].
[[nodiscard]] std::vector<double> evaluation_grid(std::size_t n, double b);

/// `points` equally spaced values from lo to hi inclusive.
[[nodiscard]] std::vector<double> uniform_grid(double lo, double hi, std::size_t points);

namespace reference {

/// Serial fit through explicit weight vectors. Kept as the cross-check for
/// the parallel kernel.
[[nodiscard]] Curve fit_curve(std::span<const double> data, double b, const Kernel& kernel,
                              std::span<const double> grid);

[[nodiscard]] double hat_trace(std::size_t n, double b, const Kernel& kernel);

}  // namespace reference

}  // namespace tvacov
