#include "tvacov/diffseries.hpp"

#include "tvacov/errors.hpp"
#include "tvacov/locallinear.hpp"
#include "tvacov/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace tvacov {

DifferenceSeries difference(std::span<const double> y, std::size_t k) {
    const std::size_t n = y.size();
    if (k == 0 || k >= n) {
        std::ostringstream os;
        os << "difference lag " << k << " invalid for series of length " << n;
        throw InvalidLagError(os.str());
    }
    DifferenceSeries out;
    out.lag = k;
    out.source_length = n;
    out.values.resize(n - k);
    for (std::size_t j = 0; j + k < n; ++j) {
        const double d = y[j + k] - y[j];
        out.values[j] = d * d;
    }
    return out;
}

DifferenceSeries difference(const TimeSeries& y, std::size_t k) { return difference(y.values(), k); }

double h0_guard(std::size_t n) {
    const double nd = static_cast<double>(n);
    return std::pow(nd, 0.25) * std::log(nd);
}

std::size_t default_h0(std::size_t n) {
    const double raw = std::ceil(h0_guard(n) / 4.0);
    return static_cast<std::size_t>(std::clamp(raw, 3.0, 20.0));
}

LagSelection select_lag(const TimeSeries& y, const LagSelectOptions& options) {
    const std::size_t N = y.size();
    const std::size_t h0 = options.h0 == 0 ? default_h0(N) : options.h0;
    if (h0 < 2) throw ConfigError("lag selection needs h0 >= 2");
    if (static_cast<double>(h0) > h0_guard(N)) {
        std::ostringstream os;
        os << "h0=" << h0 << " exceeds the n^{1/4} log n guard (" << h0_guard(N) << ") for n=" << N;
        throw ConfigError(os.str());
    }
    if (h0 >= N) throw InvalidLagError("h0 must be smaller than the series length");
    if (!(options.threshold > 0.0)) throw ConfigError("lag selection threshold must be positive");

    BandwidthRule rule = options.bandwidth;
    if (!rule) {
        const Kernel kernel = options.kernel;
        rule = [kernel](std::span<const double> series, std::size_t) {
            const std::vector<double> grid = default_bandwidth_grid();
            return gcv_bandwidth(series, grid, kernel).bandwidth;
        };
    }

    LagSelection out;
    out.h0 = h0;
    out.grid.resize(N);
    for (std::size_t i = 0; i < N; ++i) out.grid[i] = design_point(i, N);
    out.profile.resize(h0);
    for (std::size_t k = 1; k <= h0; ++k) {
        const DifferenceSeries rho = difference(y, k);
        const double b = rule(rho.values, k);
        LagProfile& p = out.profile[k - 1];
        p.lag = k;
        p.bandwidth = b;
        p.beta = fit_curve(rho.values, b, options.kernel, out.grid).value;
    }

    // Scale of the flat tail: the largest gap between the two top candidate lags.
    const std::vector<double>& top = out.profile[h0 - 1].beta;
    const std::vector<double>& next = out.profile[h0 - 2].beta;
    double tail = 0.0;
    double level = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        tail = std::max(tail, std::fabs(top[i] - next[i]));
        level = std::max(level, std::fabs(top[i]));
    }
    out.tail_scale = std::max(tail, 1e-12 * (1.0 + level));

    out.local.assign(N, 1);
    double total = 0.0;
    if (std::isfinite(options.threshold)) {
        const double cut = options.threshold * out.tail_scale;
        for (std::size_t i = 0; i < N; ++i) {
            std::size_t hstar = 1;
            for (std::size_t k = h0 - 1; k >= 1; --k) {
                const double gap = std::fabs(out.profile[k - 1].beta[i] - out.profile[k].beta[i]);
                if (gap > cut) {
                    hstar = k + 1;
                    break;
                }
            }
            out.local[i] = hstar;
        }
    }
    for (std::size_t v : out.local) total += static_cast<double>(v);
    const double mean = total / static_cast<double>(N);
    out.h = std::clamp<std::size_t>(static_cast<std::size_t>(std::llround(mean)), 1, h0);
    return out;
}

}  // namespace tvacov
