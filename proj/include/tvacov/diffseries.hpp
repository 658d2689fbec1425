#pragma once

#include "tvacov/kernel.hpp"
#include "tvacov/procgen.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace tvacov {

/// Squared lag-k differences rho_j = (y_{j+k} - y_j)^2, j = 1..N-k, placed on
/// their own unit grid j/(N-k).
struct DifferenceSeries {
    std::size_t lag = 0;
    std::size_t source_length = 0;
    std::vector<double> values;

    [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
};

/// Throws InvalidLagError when k == 0 or k >= N.
[[nodiscard]] DifferenceSeries difference(const TimeSeries& y, std::size_t k);
[[nodiscard]] DifferenceSeries difference(std::span<const double> y, std::size_t k);

/// Chooses a bandwidth for the lag-k difference series.
using BandwidthRule = std::function<double(std::span<const double> series, std::size_t k)>;

struct LagSelectOptions {
    /// Largest candidate lag; 0 means the default rule ceil(n^{1/4} log n / 4) clamped to [3, 20].
    std::size_t h0 = 0;
    /// A change fires when |beta_k - beta_{k+1}| exceeds threshold times the tail scale.
    double threshold = 3.0;
    Kernel kernel{};
    /// Defaults to GCV on the default bandwidth grid.
    BandwidthRule bandwidth;
};

struct LagProfile {
    std::size_t lag = 0;
    double bandwidth = 0.0;
    /// beta_hat_{k, b_k}(t_i) on the selection grid.
    std::vector<double> beta;
};

struct LagSelection {
    std::size_t h = 1;
    std::size_t h0 = 0;
    /// Common grid t_i = i/N on which the scan runs.
    std::vector<double> grid;
    /// h*(t_i) per grid point.
    std::vector<std::size_t> local;
    /// Scan profile for k = 1..h0 (index k-1).
    std::vector<LagProfile> profile;
    double tail_scale = 0.0;
};

[[nodiscard]] std::size_t default_h0(std::size_t n);
/// Upper guard on h0: n^{1/4} log n.
[[nodiscard]] double h0_guard(std::size_t n);

[[nodiscard]] LagSelection select_lag(const TimeSeries& y, const LagSelectOptions& options = {});

}  // namespace tvacov
