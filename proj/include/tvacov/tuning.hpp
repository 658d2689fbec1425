#pragma once

#include "tvacov/kernel.hpp"
#include "tvacov/lrv.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace tvacov {

struct GcvResult {
    std::vector<double> grid;
    /// GCV score per candidate; +inf where the candidate is unusable for this n.
    std::vector<double> score;
    std::size_t argmin = 0;
    double bandwidth = 0.0;
};

/// 0.15, 0.16, ..., 0.45.
[[nodiscard]] std::vector<double> default_bandwidth_grid();

/// GCV(b) = n^-1 sum (x_i - xhat_i(b))^2 / (1 - tr H(b) / n)^2, minimized over
/// the grid. Near-ties (within 1e-12 of the data scale) go to the larger b.
/// Throws TuningError if no candidate is usable.
[[nodiscard]] GcvResult gcv_bandwidth(std::span<const double> series, std::span<const double> grid,
                                      const Kernel& kernel);

/// rho^h_i - rho^k_i over the common start indices (length min of the two).
[[nodiscard]] std::vector<double> paired_difference(std::span<const double> rho_h,
                                                    std::span<const double> rho_k);

struct MinVolResult {
    std::vector<std::size_t> m_grid;
    std::vector<double> tau_grid;
    /// ise[i * tau_grid.size() + j]; NaN for pairs without a full neighborhood.
    std::vector<double> ise;
    std::size_t m_index = 0;
    std::size_t tau_index = 0;
    std::size_t m = 0;
    double tau = 0.0;

    [[nodiscard]] double ise_at(std::size_t i, std::size_t j) const {
        return ise[i * tau_grid.size() + j];
    }
};

/// Seven block sizes from ceil(n^{1/3}/2) to ceil(2 n^{1/3}), deduplicated and capped at n/4.
[[nodiscard]] std::vector<std::size_t> default_block_grid(std::size_t n);
/// 0.10, 0.15, 0.20, 0.25, 0.30.
[[nodiscard]] std::vector<double> default_tau_grid();

/// Points on [0, 1] where the integrated standard error is evaluated.
inline constexpr std::size_t kIseGridPoints = 101;

/// Extended minimum volatility: for each pair with a full +-2 neighborhood in
/// both directions, pool the 9 distinct estimates Sigma(m_{i+r}, tau_j) and
/// Sigma(m_i, tau_{j+r}), and integrate over [0,1] the pointwise standard error
/// (Frobenius norm). Returns the minimizing pair. Throws ConfigError when
/// either grid has fewer than 5 entries.
[[nodiscard]] MinVolResult min_volatility(const ResidualPair& res, std::span<const std::size_t> m_grid,
                                          std::span<const double> tau_grid, const Kernel& kernel);

/// Same criterion on precomputed curves: curves[i * M2 + j] sampled on `t`.
[[nodiscard]] MinVolResult min_volatility_from_curves(const std::vector<std::vector<Cov2>>& curves,
                                                      std::span<const double> t,
                                                      std::span<const std::size_t> m_grid,
                                                      std::span<const double> tau_grid);

}  // namespace tvacov
