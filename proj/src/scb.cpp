#include "tvacov/scb.hpp"

#include "tvacov/errors.hpp"
#include "tvacov/parallel.hpp"
#include "tvacov/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace tvacov {

namespace {

std::vector<double> standard_normals(std::size_t n, std::uint64_t seed, std::size_t draw) {
    Engine eng = make_engine(derive_seed(seed, stream::kBootstrap, draw));
    std::normal_distribution<double> z(0.0, 1.0);
    std::vector<double> u(n);
    for (double& v : u) v = z(eng);
    return u;
}

std::vector<double> default_grid(std::size_t n, double b, std::span<const double> grid) {
    if (!grid.empty()) return {grid.begin(), grid.end()};
    std::vector<double> g = evaluation_grid(n, b);
    if (g.empty()) throw ConfigError("bootstrap grid [b, 1-b] is empty");
    return g;
}

void check_draws(std::size_t draws, double alpha) {
    if (draws < kMinBootstrapDraws) {
        std::ostringstream os;
        os << "bootstrap needs at least " << kMinBootstrapDraws << " draws, got " << draws;
        throw ConfigError(os.str());
    }
    if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
}

double log_mstar(double b) {
    if (!(b > 0.0 && b < std::exp(-1.0))) {
        std::ostringstream os;
        os << "Gumbel band needs 1/b > e, got b=" << b;
        throw ConfigError(os.str());
    }
    return std::log(1.0 / b);
}

}  // namespace

double quantile_type7(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw ConfigError("quantile of an empty sample");
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("quantile level outside [0, 1]");
    const double h = static_cast<double>(sorted.size() - 1) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= sorted.size()) return sorted.back();
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

std::vector<WeightSet> grid_weights(std::size_t n, double b, const Kernel& kernel,
                                    std::span<const double> grid) {
    validate_bandwidth(n, b);
    std::vector<WeightSet> out(grid.size());
    parallel_for(grid.size(), [&](std::size_t g) { out[g] = local_linear_weights(n, grid[g], b, kernel); });
    return out;
}

std::vector<double> multiplier_process(const std::vector<WeightSet>& weights, std::uint64_t seed,
                                       std::size_t draw) {
    if (weights.empty()) return {};
    const std::vector<double> u = standard_normals(weights.front().n, seed, draw);
    std::vector<double> mu(weights.size());
    for (std::size_t g = 0; g < weights.size(); ++g) {
        const WeightSet& ws = weights[g];
        double s = 0.0;
        for (std::size_t j = 0; j < ws.w.size(); ++j) s += ws.w[j] * u[ws.first + j];
        mu[g] = 0.5 * s;
    }
    return mu;
}

std::vector<double> bootstrap_sup_draws(std::size_t n, double b, const Kernel& kernel,
                                        std::size_t draws, std::uint64_t seed,
                                        std::span<const double> grid) {
    const std::vector<double> g = default_grid(n, b, grid);
    const std::vector<WeightSet> weights = grid_weights(n, b, kernel, g);
    std::vector<double> sup(draws);
    parallel_for(draws, [&](std::size_t d) {
        const std::vector<double> mu = multiplier_process(weights, seed, d);
        double m = 0.0;
        for (double v : mu) m = std::max(m, std::fabs(v));
        sup[d] = m;
    });
    return sup;
}

BootstrapQuantile bootstrap_quantile(std::size_t n, double b, const Kernel& kernel,
                                     std::size_t draws, double alpha, std::uint64_t seed,
                                     std::span<const double> grid) {
    check_draws(draws, alpha);
    BootstrapQuantile out;
    out.n = n;
    out.b = b;
    out.draws = draws;
    out.alpha = alpha;
    out.seed = seed;
    out.sup_sorted = bootstrap_sup_draws(n, b, kernel, draws, seed, grid);
    std::sort(out.sup_sorted.begin(), out.sup_sorted.end());
    out.q = quantile_type7(out.sup_sorted, 1.0 - alpha);
    return out;
}

double gumbel_bk(double b, const Kernel& kernel) {
    const double root = std::sqrt(2.0 * log_mstar(b));
    const double c = std::sqrt(kernel.roughness() / (4.0 * kernel.phi(0))) / std::numbers::pi;
    return root + std::log(c) / root;
}

double gumbel_critical(double b, const Kernel& kernel, double alpha, std::size_t n) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
    validate_bandwidth(n, b);
    const double root = std::sqrt(2.0 * log_mstar(b));
    const double inner = 0.5 * std::log(1.0 / (1.0 - alpha));
    return gumbel_bk(b, kernel) - std::log(inner) / root;
}

double gumbel_scale(double b, const Kernel& kernel, std::size_t n) {
    return std::sqrt(kernel.phi(0) / (4.0 * static_cast<double>(n) * b));
}

std::string_view band_method_name(BandMethod m) noexcept {
    return m == BandMethod::Gumbel ? "gumbel" : "bootstrap";
}

BandMethod band_method_from_name(std::string_view name) {
    if (name == "bootstrap") return BandMethod::Bootstrap;
    if (name == "gumbel") return BandMethod::Gumbel;
    throw ConfigError("unknown band method '" + std::string(name) + "'");
}

namespace {

bool same_grid(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::fabs(a[i] - b[i]) > 1e-12) return false;
    }
    return true;
}

bool in_domain(double t, double lo, double hi) { return t >= lo - 1e-12 && t <= hi + 1e-12; }

}  // namespace

BandResult build_band(const AcovEstimate& estimate, const Curve& sigma, const Kernel& kernel,
                      const BandOptions& options) {
    const std::vector<double>& t = estimate.curve.t;
    if (!same_grid(t, sigma.t) || sigma.value.size() != t.size()) {
        throw AlignmentError("sigma curve is not on the estimate's grid");
    }
    if (!(options.inflation > 0.0)) throw ConfigError("band inflation must be positive");
    const double b = estimate.bandwidth;
    const std::size_t n = estimate.working_length;

    BandResult out;
    out.center = estimate.curve;
    out.sigma = sigma.value;
    out.method = options.method;
    out.alpha = options.alpha;
    out.domain_lo = b;
    out.domain_hi = 1.0 - b;

    bool any = false;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!in_domain(t[i], out.domain_lo, out.domain_hi)) continue;
        any = true;
        if (!(sigma.value[i] > 0.0)) {
            std::ostringstream os;
            os << "sigma(t) = " << sigma.value[i] << " at t=" << t[i] << "; band undefined";
            throw DegenerateVarianceError(os.str());
        }
    }
    if (!any) throw AlignmentError("no grid point inside the band domain [b, 1-b]");

    // the weights inside mu carry the 1/2 of the difference estimators
    const double scale = estimate.response_scale / 0.5;
    if (options.method == BandMethod::Bootstrap) {
        if (options.quantile) {
            out.critical = *options.quantile;
        } else {
            check_draws(options.draws, options.alpha);
            out.critical = bootstrap_quantile(n, b, kernel, options.draws, options.alpha, options.seed, t).q;
        }
        out.half_width_factor = options.inflation * out.critical * scale;
    } else {
        out.critical = gumbel_critical(b, kernel, options.alpha, n);
        out.half_width_factor = options.inflation * out.critical * gumbel_scale(b, kernel, n) * scale;
    }

    out.lower.resize(t.size());
    out.upper.resize(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double half = out.half_width_factor * sigma.value[i];
        out.lower[i] = estimate.curve.value[i] - half;
        out.upper[i] = estimate.curve.value[i] + half;
    }
    return out;
}

bool coverage_check(const BandResult& band, const Curve& truth) {
    const std::vector<double>& t = band.center.t;
    if (!same_grid(t, truth.t) || truth.value.size() != t.size()) {
        throw AlignmentError("truth curve is not on the band's grid");
    }
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!in_domain(t[i], band.domain_lo, band.domain_hi)) continue;
        const double v = truth.value[i];
        if (!(band.lower[i] <= v && v <= band.upper[i])) return false;
    }
    return true;
}

double QuantileCache::get(std::size_t n, double b, const Kernel& kernel, std::size_t draws,
                          double alpha, std::uint64_t seed) {
    const Key key{n, b, draws, alpha, static_cast<int>(kernel.type()), seed};
    {
        std::lock_guard<std::mutex> lock(mutex_);
        if (auto it = table_.find(key); it != table_.end()) return it->second;
    }
    // computed outside the lock; a racing duplicate produces the same value
    const double q = bootstrap_quantile(n, b, kernel, draws, alpha, seed).q;
    std::lock_guard<std::mutex> lock(mutex_);
    table_.emplace(key, q);
    return q;
}

namespace reference {

std::vector<double> bootstrap_sup_draws(std::size_t n, double b, const Kernel& kernel,
                                        std::size_t draws, std::uint64_t seed,
                                        std::span<const double> grid) {
    const std::vector<double> g = default_grid(n, b, grid);
    validate_bandwidth(n, b);
    std::vector<WeightSet> weights;
    for (double t : g) weights.push_back(local_linear_weights(n, t, b, kernel));
    std::vector<double> sup(draws);
    for (std::size_t d = 0; d < draws; ++d) {
        const std::vector<double> u = standard_normals(n, seed, d);
        double m = 0.0;
        for (const WeightSet& ws : weights) {
            double s = 0.0;
            for (std::size_t i = ws.first; i < ws.first + ws.w.size(); ++i) s += ws.weight(i) * u[i];
            m = std::max(m, std::fabs(0.5 * s));
        }
        sup[d] = m;
    }
    return sup;
}

}  // namespace reference

}  // namespace tvacov
