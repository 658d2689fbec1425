#pragma once

#include "tvacov/kernel.hpp"
#include "tvacov/locallinear.hpp"
#include "tvacov/procgen.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace tvacov {

/// Residuals of the lag-h and lag-k difference series about their local-linear
/// fits (both with the same bandwidth), aligned on the start index and cut to
/// the common length N - max(h, k).
struct ResidualPair {
    std::size_t h = 0;
    std::size_t k = 0;
    std::vector<double> eh;
    std::vector<double> ek;
    /// Bandwidth of the local-linear fit the residuals come from; 0 for raw input.
    double fit_bandwidth = 0.0;
    Kernel fit_kernel{};

    [[nodiscard]] std::size_t size() const noexcept { return eh.size(); }
};

/// Symmetric 2 x 2 matrix [[xx, xy], [xy, yy]].
struct Cov2 {
    double xx = 0.0;
    double xy = 0.0;
    double yy = 0.0;

    [[nodiscard]] double min_eigenvalue() const noexcept;
    /// C' S C with C = (1, -1).
    [[nodiscard]] double contrast() const noexcept { return xx - 2.0 * xy + yy; }
};

struct LongRunCovCurve {
    std::vector<double> t;
    std::vector<Cov2> sigma;
    std::size_t m = 0;
    double tau = 0.0;
};

/// eps_h = rho^h - beta_hat_{h,b}, eps_k = rho^k - beta_hat_{k,b}. Requires 1 <= k <= h < N.
[[nodiscard]] ResidualPair residuals(const TimeSeries& y, std::size_t k, std::size_t h, double b,
                                     const Kernel& kernel);

/// Residual pair from two explicit sequences (equal length), e.g. for injected errors.
[[nodiscard]] ResidualPair make_residual_pair(std::vector<double> eh, std::vector<double> ek);

/// Block estimator: Q_i = sum_{|j|<=m} eps_{i+j} (clipped at the ends),
/// N_i = Q_i Q_i' / (len_i kappa_i) and Sigma(t) = sum_i w_tau(t, i) N_i with
/// Nadaraya-Watson weights. For fitted residuals kappa_i = |(I - H)' 1_i|^2 / len_i,
/// H the smoother matrix and 1_i the block indicator; kappa_i = 1 for raw input.
/// Grid points must lie in [tau, 1 - tau].
[[nodiscard]] LongRunCovCurve lrv_curve(const ResidualPair& res, std::size_t m, double tau,
                                        const Kernel& kernel, std::span<const double> grid);

/// As lrv_curve, but grid points outside [tau, 1 - tau] take the value at the
/// nearest end of that interval.
[[nodiscard]] LongRunCovCurve lrv_curve_padded(const ResidualPair& res, std::size_t m, double tau,
                                               const Kernel& kernel, std::span<const double> grid);

struct SigmaFunctionals {
    /// sqrt of the (1,1) element.
    Curve sigma_h;
    /// sqrt of C' Sigma C.
    Curve sigma_c;
    /// Set when a non-positive value was clamped to zero.
    bool clamped_h = false;
    bool clamped_c = false;
};

[[nodiscard]] SigmaFunctionals sigma_functionals(const LongRunCovCurve& lrv);

/// ceil(n^{1/3}).
[[nodiscard]] std::size_t default_block_size(std::size_t n);
inline constexpr double kDefaultTau = 0.2;

}  // namespace tvacov
