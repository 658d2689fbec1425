#include "tvacov/tuning.hpp"

#include "tvacov/errors.hpp"
#include "tvacov/locallinear.hpp"
#include "tvacov/summation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tvacov {

std::vector<double> default_bandwidth_grid() {
    std::vector<double> grid;
    for (int i = 15; i <= 45; ++i) grid.push_back(static_cast<double>(i) / 100.0);
    return grid;
}

GcvResult gcv_bandwidth(std::span<const double> series, std::span<const double> grid,
                        const Kernel& kernel) {
    if (grid.empty()) throw ConfigError("GCV bandwidth grid is empty");
    const std::size_t n = series.size();
    const double nd = static_cast<double>(n);

    CompensatedSum ms;
    for (double x : series) ms += x * x;
    const double scale = ms.value() / nd;

    GcvResult out;
    out.grid.assign(grid.begin(), grid.end());
    out.score.assign(grid.size(), std::numeric_limits<double>::infinity());
    for (std::size_t g = 0; g < grid.size(); ++g) {
        const double b = grid[g];
        if (!(b > 0.0 && b < 0.5)) throw ConfigError("GCV bandwidth candidate outside (0, 1/2)");
        if (nd * b < 4.0) continue;
        try {
            const std::vector<double> fit = fitted_values(series, b, kernel);
            const double trace = hat_trace(n, b, kernel);
            if (!(trace < nd)) continue;
            CompensatedSum rss;
            for (std::size_t i = 0; i < n; ++i) {
                const double r = series[i] - fit[i];
                rss += r * r;
            }
            const double denom = 1.0 - trace / nd;
            out.score[g] = (rss.value() / nd) / (denom * denom);
        } catch (const SingularDesignError&) {
            // candidate unusable at this n
        }
    }

    const auto best_it = std::min_element(out.score.begin(), out.score.end());
    if (!std::isfinite(*best_it)) throw TuningError("GCV: every bandwidth candidate is singular");
    const double tol = 1e-12 * (scale + *best_it);
    std::size_t arg = 0;
    double arg_b = -1.0;
    for (std::size_t g = 0; g < grid.size(); ++g) {
        if (out.score[g] <= *best_it + tol && grid[g] > arg_b) {
            arg = g;
            arg_b = grid[g];
        }
    }
    out.argmin = arg;
    out.bandwidth = grid[arg];
    return out;
}

std::vector<double> paired_difference(std::span<const double> rho_h, std::span<const double> rho_k) {
    const std::size_t n = std::min(rho_h.size(), rho_k.size());
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = rho_h[i] - rho_k[i];
    return out;
}

std::vector<std::size_t> default_block_grid(std::size_t n) {
    const double c = std::cbrt(static_cast<double>(n));
    const double lo = std::ceil(c / 2.0);
    const double hi = std::ceil(2.0 * c);
    const std::size_t cap = std::max<std::size_t>(1, n / 4);
    std::vector<std::size_t> grid;
    for (int i = 0; i < 7; ++i) {
        const double v = std::round(lo + (hi - lo) * static_cast<double>(i) / 6.0);
        const std::size_t m = std::min(cap, static_cast<std::size_t>(std::max(1.0, v)));
        if (grid.empty() || grid.back() != m) grid.push_back(m);
    }
    return grid;
}

std::vector<double> default_tau_grid() { return {0.10, 0.15, 0.20, 0.25, 0.30}; }

namespace {

double frobenius_sq(const Cov2& a, const Cov2& b) {
    const double dxx = a.xx - b.xx;
    const double dxy = a.xy - b.xy;
    const double dyy = a.yy - b.yy;
    return dxx * dxx + 2.0 * dxy * dxy + dyy * dyy;
}

void check_grids(std::size_t m_count, std::size_t tau_count) {
    if (m_count < 5 || tau_count < 5) {
        throw ConfigError("minimum volatility needs at least 5 block sizes and 5 bandwidths");
    }
}

}  // namespace

MinVolResult min_volatility_from_curves(const std::vector<std::vector<Cov2>>& curves,
                                        std::span<const double> t,
                                        std::span<const std::size_t> m_grid,
                                        std::span<const double> tau_grid) {
    const std::size_t M1 = m_grid.size();
    const std::size_t M2 = tau_grid.size();
    check_grids(M1, M2);
    if (curves.size() != M1 * M2) throw ConfigError("curve count does not match the tuning grids");
    for (const auto& c : curves) {
        if (c.size() != t.size()) throw AlignmentError("tuning curve length does not match its grid");
    }

    MinVolResult out;
    out.m_grid.assign(m_grid.begin(), m_grid.end());
    out.tau_grid.assign(tau_grid.begin(), tau_grid.end());
    out.ise.assign(M1 * M2, std::numeric_limits<double>::quiet_NaN());

    double best = std::numeric_limits<double>::infinity();
    std::vector<const std::vector<Cov2>*> pool;
    std::vector<double> integrand(t.size());
    for (std::size_t i = 2; i + 2 < M1; ++i) {
        for (std::size_t j = 2; j + 2 < M2; ++j) {
            pool.clear();
            for (int r = -2; r <= 2; ++r) pool.push_back(&curves[(i + r) * M2 + j]);
            for (int r = -2; r <= 2; ++r) {
                if (r != 0) pool.push_back(&curves[i * M2 + (j + r)]);
            }
            const double l = static_cast<double>(pool.size());
            for (std::size_t g = 0; g < t.size(); ++g) {
                Cov2 mean;
                for (const auto* c : pool) {
                    mean.xx += (*c)[g].xx;
                    mean.xy += (*c)[g].xy;
                    mean.yy += (*c)[g].yy;
                }
                mean.xx /= l;
                mean.xy /= l;
                mean.yy /= l;
                double ss = 0.0;
                for (const auto* c : pool) ss += frobenius_sq((*c)[g], mean);
                integrand[g] = std::sqrt(ss / (l - 1.0));
            }
            CompensatedSum area;
            for (std::size_t g = 1; g < t.size(); ++g) {
                area += 0.5 * (t[g] - t[g - 1]) * (integrand[g] + integrand[g - 1]);
            }
            const double ise = area.value();
            out.ise[i * M2 + j] = ise;
            // strict comparison in index order keeps the choice deterministic
            if (ise < best) {
                best = ise;
                out.m_index = i;
                out.tau_index = j;
            }
        }
    }
    out.m = m_grid[out.m_index];
    out.tau = tau_grid[out.tau_index];
    return out;
}

MinVolResult min_volatility(const ResidualPair& res, std::span<const std::size_t> m_grid,
                            std::span<const double> tau_grid, const Kernel& kernel) {
    // neighborhoods are defined in value order, whatever order the caller used
    std::vector<std::size_t> ms(m_grid.begin(), m_grid.end());
    std::vector<double> taus(tau_grid.begin(), tau_grid.end());
    std::sort(ms.begin(), ms.end());
    ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
    std::sort(taus.begin(), taus.end());
    taus.erase(std::unique(taus.begin(), taus.end()), taus.end());
    check_grids(ms.size(), taus.size());

    const std::vector<double> t = uniform_grid(0.0, 1.0, kIseGridPoints);
    std::vector<std::vector<Cov2>> curves;
    curves.reserve(ms.size() * taus.size());
    for (std::size_t m : ms) {
        for (double tau : taus) {
            curves.push_back(lrv_curve_padded(res, m, tau, kernel, t).sigma);
        }
    }
    return min_volatility_from_curves(curves, t, ms, taus);
}

}  // namespace tvacov
