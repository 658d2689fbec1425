#pragma once

#include "tvacov/acov.hpp"
#include "tvacov/diffseries.hpp"
#include "tvacov/kernel.hpp"
#include "tvacov/procgen.hpp"
#include "tvacov/scb.hpp"
#include "tvacov/tuning.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace tvacov {

/// A tuning value that can be fixed for every lag, per lag, or left to the data.
template <typename T>
struct LagOverride {
    std::optional<T> all;
    std::map<std::size_t, T> by_lag;

    [[nodiscard]] std::optional<T> get(std::size_t k) const {
        if (auto it = by_lag.find(k); it != by_lag.end()) return it->second;
        return all;
    }
    [[nodiscard]] bool empty() const noexcept { return !all && by_lag.empty(); }
};

struct AnalysisOptions {
    Kernel kernel{};
    std::vector<std::size_t> lags{0, 1};
    double alpha = 0.05;
    BandMethod method = BandMethod::Bootstrap;
    std::size_t draws = kDefaultBootstrapDraws;
    std::uint64_t bootstrap_seed = 0;
    double inflation = 1.0;

    std::optional<std::size_t> h;
    std::size_t h0 = 0;
    double lag_threshold = 3.0;

    LagOverride<double> bandwidth;
    LagOverride<std::size_t> block;
    LagOverride<double> tau;
    std::vector<double> bandwidth_grid = default_bandwidth_grid();
    /// Empty means default_block_grid(working length).
    std::vector<std::size_t> block_grid;
    std::vector<double> tau_grid = default_tau_grid();

    /// 0: data grid restricted to [b, 1-b]; otherwise that many equispaced points.
    std::size_t grid_points = 0;

    /// Off: stop after tuning and estimation (no band, no bootstrap).
    bool bands = true;

    /// Shared memo for bootstrap quantiles (optional, not owned).
    QuantileCache* cache = nullptr;
};

struct LagResult {
    std::size_t lag = 0;
    AcovEstimate estimate;
    Curve sigma;
    BandResult band;
    std::size_t m = 0;
    double tau = 0.0;
    /// Set when (m, tau) came from the minimum volatility search.
    std::optional<MinVolResult> min_volatility;
    /// Set when the bandwidth came from GCV.
    std::optional<GcvResult> gcv;
    bool sigma_clamped = false;
};

struct AnalysisResult {
    /// Lag used for the difference estimators.
    std::size_t h = 0;
    /// Lag chosen by the scan (or the override) before it was raised to max(lag) + 1.
    std::size_t h_selected = 0;
    std::optional<LagSelection> selection;
    std::vector<LagResult> lags;
};

/// Difference-based pipeline: select h, tune b by GCV and (m, tau) by
/// minimum volatility unless fixed, estimate gamma_k and build its band.
[[nodiscard]] AnalysisResult analyze(const TimeSeries& y, const AnalysisOptions& options);

/// Naive detrend-then-smooth estimates with bands of the same bootstrap form.
/// The bandwidth override applies to the variance smoother; the mean uses GCV.
[[nodiscard]] AnalysisResult analyze_naive(const TimeSeries& y, const AnalysisOptions& options);

/// true_gamma(err, k, t) on the curve's grid.
[[nodiscard]] Curve truth_curve(const ErrorModel& err, std::size_t k, std::span<const double> t);

}  // namespace tvacov
