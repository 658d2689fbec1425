#include "tvacov/lrv.hpp"

#include "tvacov/diffseries.hpp"
#include "tvacov/errors.hpp"
#include "tvacov/parallel.hpp"
#include "tvacov/summation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tvacov {

double Cov2::min_eigenvalue() const noexcept {
    const double mean = 0.5 * (xx + yy);
    const double half_gap = std::hypot(0.5 * (xx - yy), xy);
    return mean - half_gap;
}

ResidualPair residuals(const TimeSeries& y, std::size_t k, std::size_t h, double b,
                       const Kernel& kernel) {
    if (k == 0 || k > h) throw InvalidLagError("residuals need 1 <= k <= h");
    const DifferenceSeries rho_h = difference(y, h);
    const DifferenceSeries rho_k = difference(y, k);
    const std::vector<double> fit_h = fitted_values(rho_h.values, b, kernel);
    const std::vector<double> fit_k = fitted_values(rho_k.values, b, kernel);

    const std::size_t n = rho_h.size();
    ResidualPair out;
    out.fit_bandwidth = b;
    out.fit_kernel = kernel;
    out.h = h;
    out.k = k;
    out.eh.resize(n);
    out.ek.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        out.eh[j] = rho_h.values[j] - fit_h[j];
        out.ek[j] = rho_k.values[j] - fit_k[j];
    }
    return out;
}

ResidualPair make_residual_pair(std::vector<double> eh, std::vector<double> ek) {
    if (eh.size() != ek.size()) throw ConfigError("residual components differ in length");
    if (eh.size() < 2) throw ConfigError("residual pair needs at least 2 entries");
    ResidualPair out;
    out.eh = std::move(eh);
    out.ek = std::move(ek);
    return out;
}

namespace {

void validate_lrv(std::size_t n, std::size_t m, double tau) {
    if (m < 1 || 4 * m > n) {
        std::ostringstream os;
        os << "block half-width m=" << m << " outside [1, n/4] for n=" << n;
        throw ConfigError(os.str());
    }
    if (!(tau > 0.0 && tau < 0.5)) {
        std::ostringstream os;
        os << "lrv bandwidth tau=" << tau << " outside (0, 1/2)";
        throw ConfigError(os.str());
    }
}

// kappa_i = |(I - H)' 1_i|^2 / len_i for blocks of fitted residuals, 1 for raw ones.
// Block rows of H are accumulated in a sliding window.
std::vector<double> block_shrinkage(const ResidualPair& res, std::size_t m) {
    const std::size_t n = res.size();
    std::vector<double> kappa(n, 1.0);
    if (!(res.fit_bandwidth > 0.0)) return kappa;

    std::vector<WeightSet> rows(n);
    for (std::size_t a = 0; a < n; ++a) {
        rows[a] = local_linear_weights(n, design_point(a, n), res.fit_bandwidth, res.fit_kernel);
    }
    std::vector<double> col(n, 0.0);  // column sums of H over the current block rows
    double sq = 0.0;
    auto add_row = [&](std::size_t a, double sign) {
        const WeightSet& w = rows[a];
        for (std::size_t j = 0; j < w.w.size(); ++j) {
            double& v = col[w.first + j];
            const double nv = v + sign * w.w[j];
            sq += nv * nv - v * v;
            v = nv;
        }
    };
    std::size_t cur_lo = 0, cur_hi = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i >= m ? i - m : 0;
        const std::size_t hi = std::min(n, i + m + 1);
        while (cur_hi < hi) add_row(cur_hi++, 1.0);
        while (cur_lo < lo) add_row(cur_lo++, -1.0);
        double inside = 0.0;
        for (std::size_t j = lo; j < hi; ++j) inside += col[j];
        const double len = static_cast<double>(hi - lo);
        kappa[i] = (sq - 2.0 * inside + len) / len;
    }
    return kappa;
}

// Per-index block outer products N_i, from prefix sums of the residuals.
std::vector<Cov2> block_products(const ResidualPair& res, std::size_t m) {
    const std::size_t n = res.size();
    std::vector<double> ph(n + 1, 0.0), pk(n + 1, 0.0);
    CompensatedSum sh, sk;
    for (std::size_t i = 0; i < n; ++i) {
        sh += res.eh[i];
        sk += res.ek[i];
        ph[i + 1] = sh.value();
        pk[i + 1] = sk.value();
    }
    const std::vector<double> kappa = block_shrinkage(res, m);
    std::vector<Cov2> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i >= m ? i - m : 0;
        const std::size_t hi = std::min(n, i + m + 1);
        const double len = static_cast<double>(hi - lo) * kappa[i];
        const double qh = ph[hi] - ph[lo];
        const double qk = pk[hi] - pk[lo];
        out[i] = Cov2{qh * qh / len, qh * qk / len, qk * qk / len};
    }
    return out;
}

Cov2 smooth_at(const std::vector<Cov2>& blocks, double t, double tau, const Kernel& kernel) {
    const std::size_t n = blocks.size();
    const double nd = static_cast<double>(n);
    const double lo_d = std::max(std::ceil(nd * (t - tau) - 1e-9) - 1.0, 0.0);
    const double hi_d = std::min(std::floor(nd * (t + tau) + 1e-9) - 1.0, nd - 1.0);
    CompensatedSum wsum, axx, axy, ayy;
    if (hi_d >= lo_d) {
        const auto lo = static_cast<std::size_t>(lo_d);
        const auto hi = static_cast<std::size_t>(hi_d);
        for (std::size_t i = lo; i <= hi; ++i) {
            const double w = kernel((design_point(i, n) - t) / tau);
            if (w == 0.0) continue;
            wsum += w;
            axx += w * blocks[i].xx;
            axy += w * blocks[i].xy;
            ayy += w * blocks[i].yy;
        }
    }
    const double total = wsum.value();
    if (!(total > 0.0)) {
        std::ostringstream os;
        os << "empty kernel window for long-run covariance at t=" << t << " (tau=" << tau << ")";
        throw SingularDesignError(os.str(), t);
    }
    return Cov2{axx.value() / total, axy.value() / total, ayy.value() / total};
}

LongRunCovCurve lrv_impl(const ResidualPair& res, std::size_t m, double tau, const Kernel& kernel,
                         std::span<const double> grid, bool pad) {
    validate_lrv(res.size(), m, tau);
    const std::vector<Cov2> blocks = block_products(res, m);
    LongRunCovCurve out;
    out.m = m;
    out.tau = tau;
    out.t.assign(grid.begin(), grid.end());
    out.sigma.resize(grid.size());
    parallel_for(grid.size(), [&](std::size_t g) {
        double t = grid[g];
        if (pad) {
            t = std::clamp(t, tau, 1.0 - tau);
        } else if (t < tau - 1e-12 || t > 1.0 - tau + 1e-12) {
            std::ostringstream os;
            os << "long-run covariance grid point " << t << " outside [" << tau << ", " << 1.0 - tau
               << "]";
            throw ConfigError(os.str());
        }
        out.sigma[g] = smooth_at(blocks, t, tau, kernel);
    });
    return out;
}

}  // namespace

LongRunCovCurve lrv_curve(const ResidualPair& res, std::size_t m, double tau, const Kernel& kernel,
                          std::span<const double> grid) {
    return lrv_impl(res, m, tau, kernel, grid, false);
}

LongRunCovCurve lrv_curve_padded(const ResidualPair& res, std::size_t m, double tau,
                                 const Kernel& kernel, std::span<const double> grid) {
    return lrv_impl(res, m, tau, kernel, grid, true);
}

SigmaFunctionals sigma_functionals(const LongRunCovCurve& lrv) {
    SigmaFunctionals out;
    out.sigma_h.t = lrv.t;
    out.sigma_c.t = lrv.t;
    out.sigma_h.value.reserve(lrv.t.size());
    out.sigma_c.value.reserve(lrv.t.size());
    for (const Cov2& s : lrv.sigma) {
        double vh = s.xx;
        double vc = s.contrast();
        if (!(vh > 0.0)) {
            out.clamped_h = true;
            vh = 0.0;
        }
        if (!(vc > 0.0)) {
            out.clamped_c = true;
            vc = 0.0;
        }
        out.sigma_h.value.push_back(std::sqrt(vh));
        out.sigma_c.value.push_back(std::sqrt(vc));
    }
    return out;
}

std::size_t default_block_size(std::size_t n) {
    return static_cast<std::size_t>(std::ceil(std::cbrt(static_cast<double>(n)) - 1e-12));
}

}  // namespace tvacov
