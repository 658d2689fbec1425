#pragma once

#include "tvacov/kernel.hpp"
#include "tvacov/locallinear.hpp"
#include "tvacov/procgen.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace tvacov {

/// Estimated lag-k autocovariance curve.
struct AcovEstimate {
    std::size_t lag = 0;
    Curve curve;
    double bandwidth = 0.0;
    /// Difference lag h (0 for the naive estimator).
    std::size_t h = 0;
    /// Length of the series whose design grid the output grid lives on.
    std::size_t working_length = 0;
    /// Factor in front of the smoother: 1/2 for the difference-based
    /// estimators, 1 for the naive one. Band widths scale with it.
    double response_scale = 0.5;
    /// Set when a variance estimate dips below zero (values are left as-is).
    bool negative_values = false;
};

/// gamma0_hat(t) = 1/2 beta_hat_{h, b_h}(t). An empty grid means
/// evaluation_grid(N - h, b_h).
[[nodiscard]] AcovEstimate estimate_gamma0(const TimeSeries& y, std::size_t h, double b_h,
                                           const Kernel& kernel, std::span<const double> grid = {});

/// gammak_hat(t) = 1/2 [beta_hat_{h, b_k}(t) - beta_hat_{k, b_k}(t)], both fits with b_k.
/// Throws InvalidLagError unless 1 <= k < h.
[[nodiscard]] AcovEstimate estimate_gammak(const TimeSeries& y, std::size_t k, std::size_t h,
                                           double b_k, const Kernel& kernel,
                                           std::span<const double> grid = {});

/// Detrend-then-smooth comparator and the pieces its band needs.
struct NaiveFit {
    AcovEstimate estimate;
    double mean_bandwidth = 0.0;
    /// e_i e_{i-k} (e_i^2 for k = 0) on its own design grid.
    std::vector<double> products;
    /// products minus their fitted values.
    std::vector<double> product_residuals;
};

/// e_i = y_i - mhat(t_i) with a local-linear mean, then smooth e_i e_{i-k}.
/// Missing bandwidths are chosen by GCV on `bandwidth_grid` (default grid when empty).
/// An empty evaluation grid means evaluation_grid(N - k, b_var).
[[nodiscard]] NaiveFit naive_fit(const TimeSeries& y, std::size_t k, std::optional<double> b_mean,
                                 std::optional<double> b_var, const Kernel& kernel,
                                 std::span<const double> grid = {},
                                 std::span<const double> bandwidth_grid = {});

[[nodiscard]] inline AcovEstimate naive_estimate(const TimeSeries& y, std::size_t k,
                                                 std::optional<double> b_mean,
                                                 std::optional<double> b_var, const Kernel& kernel,
                                                 std::span<const double> grid = {}) {
    return naive_fit(y, k, b_mean, b_var, kernel, grid).estimate;
}

}  // namespace tvacov
