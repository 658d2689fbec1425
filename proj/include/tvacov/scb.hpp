#pragma once

#include "tvacov/acov.hpp"
#include "tvacov/kernel.hpp"
#include "tvacov/locallinear.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string_view>
#include <tuple>
#include <vector>

namespace tvacov {

inline constexpr std::size_t kMinBootstrapDraws = 1000;
inline constexpr std::size_t kDefaultBootstrapDraws = 10000;

/// Empirical quantile with linear interpolation between order statistics
/// (R type 7). `sorted` must be ascending and nonempty.
[[nodiscard]] double quantile_type7(std::span<const double> sorted, double p);

/// Quantile of sup_t |mu(t)| where mu(t) = sum_i omega(t, i) u_i / 2, u iid N(0,1).
struct BootstrapQuantile {
    std::size_t n = 0;
    double b = 0.0;
    std::size_t draws = 0;
    double alpha = 0.05;
    std::uint64_t seed = 0;
    double q = 0.0;
    /// All draws of the supremum, ascending.
    std::vector<double> sup_sorted;

    /// (1 - level) quantile of the same draw set.
    [[nodiscard]] double quantile(double level) const { return quantile_type7(sup_sorted, 1.0 - level); }
};

/// Weight sets for every grid point (shared, read-only, by the draws).
[[nodiscard]] std::vector<WeightSet> grid_weights(std::size_t n, double b, const Kernel& kernel,
                                                  std::span<const double> grid);

/// One draw of mu(t) on the grid; u comes from the stream (seed, draw).
[[nodiscard]] std::vector<double> multiplier_process(const std::vector<WeightSet>& weights,
                                                     std::uint64_t seed, std::size_t draw);

/// sup_t |mu(t)| for draws 0..draws-1, in draw order. Draws run in parallel,
/// each on its own substream, so the result does not depend on threads.
[[nodiscard]] std::vector<double> bootstrap_sup_draws(std::size_t n, double b, const Kernel& kernel,
                                                      std::size_t draws, std::uint64_t seed,
                                                      std::span<const double> grid = {});

/// Default grid is evaluation_grid(n, b). Throws ConfigError for draws < 1000
/// or alpha outside (0, 1).
[[nodiscard]] BootstrapQuantile bootstrap_quantile(std::size_t n, double b, const Kernel& kernel,
                                                   std::size_t draws, double alpha,
                                                   std::uint64_t seed,
                                                   std::span<const double> grid = {});

/// B_K(m*) = sqrt(2 log m*) + log( sqrt(int|K'|^2 / (4 phi0)) / pi ) / sqrt(2 log m*), m* = 1/b.
[[nodiscard]] double gumbel_bk(double b, const Kernel& kernel);

/// B_K(m*) - log(log((1-alpha)^{-1/2})) / sqrt(2 log m*). The band half-width is
/// sigma(t) sqrt(phi0 / (4 n b)) times this multiplier. Throws ConfigError for b >= 1/e.
[[nodiscard]] double gumbel_critical(double b, const Kernel& kernel, double alpha, std::size_t n);

/// sqrt(phi0 / (4 n b)).
[[nodiscard]] double gumbel_scale(double b, const Kernel& kernel, std::size_t n);

enum class BandMethod { Bootstrap, Gumbel };

[[nodiscard]] std::string_view band_method_name(BandMethod m) noexcept;
[[nodiscard]] BandMethod band_method_from_name(std::string_view name);

struct BandResult {
    Curve center;
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<double> sigma;
    BandMethod method = BandMethod::Bootstrap;
    double alpha = 0.05;
    double domain_lo = 0.0;
    double domain_hi = 1.0;
    /// q_hat for the bootstrap, the Gumbel multiplier otherwise.
    double critical = 0.0;
    /// Half-width is half_width_factor * sigma(t).
    double half_width_factor = 0.0;
};

struct BandOptions {
    BandMethod method = BandMethod::Bootstrap;
    double alpha = 0.05;
    std::size_t draws = kDefaultBootstrapDraws;
    std::uint64_t seed = 0;
    /// Precomputed bootstrap quantile for this (n, b); skips the draws.
    std::optional<double> quantile;
    /// Multiplies the critical value.
    double inflation = 1.0;
};

/// center +- critical * sigma(t) (bootstrap) or
/// center +- sigma(t) sqrt(phi0/(4nb)) * multiplier (Gumbel), scaled by the
/// estimator's response_scale / (1/2). The domain is [b, 1-b] on the
/// estimate's grid. Throws DegenerateVarianceError if sigma <= 0 on the domain.
[[nodiscard]] BandResult build_band(const AcovEstimate& estimate, const Curve& sigma,
                                    const Kernel& kernel, const BandOptions& options);

/// True iff lower <= truth <= upper at every grid point of the band domain.
/// Throws AlignmentError when the grids differ.
[[nodiscard]] bool coverage_check(const BandResult& band, const Curve& truth);

/// Thread-safe memo of bootstrap quantiles keyed by (n, b, draws, alpha, kernel, seed).
class QuantileCache {
public:
    [[nodiscard]] double get(std::size_t n, double b, const Kernel& kernel, std::size_t draws,
                             double alpha, std::uint64_t seed);

private:
    using Key = std::tuple<std::size_t, double, std::size_t, double, int, std::uint64_t>;
    std::mutex mutex_;
    std::map<Key, double> table_;
};

namespace reference {

/// Serial version of bootstrap_sup_draws through explicit per-draw weights.
[[nodiscard]] std::vector<double> bootstrap_sup_draws(std::size_t n, double b, const Kernel& kernel,
                                                      std::size_t draws, std::uint64_t seed,
                                                      std::span<const double> grid = {});

}  // namespace reference

}  // namespace tvacov
