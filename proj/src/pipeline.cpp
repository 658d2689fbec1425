#include "tvacov/pipeline.hpp"

#include "tvacov/errors.hpp"
#include "tvacov/lrv.hpp"

#include <algorithm>
#include <sstream>

namespace tvacov {

namespace {

std::vector<double> band_grid(const AnalysisOptions& o, double b) {
    if (o.grid_points == 0) return {};
    if (o.grid_points < 2) throw ConfigError("grid resolution must be at least 2 points");
    return uniform_grid(b, 1.0 - b, o.grid_points);
}

double pick_bandwidth(const AnalysisOptions& o, std::size_t lag, std::span<const double> series,
                      std::optional<GcvResult>& gcv) {
    if (auto b = o.bandwidth.get(lag)) return *b;
    gcv = gcv_bandwidth(series, o.bandwidth_grid, o.kernel);
    return gcv->bandwidth;
}

// Fixed (m, tau), or the minimum volatility pair when neither is fixed; a lone
// fixed value pairs with the default for the other.
void attach_sigma(const AnalysisOptions& o, const ResidualPair& res, bool contrast, LagResult& out) {
    const auto m_fixed = o.block.get(out.lag);
    const auto tau_fixed = o.tau.get(out.lag);
    if (!m_fixed && !tau_fixed) {
        const std::vector<std::size_t> ms = o.block_grid.empty() ? default_block_grid(res.size()) : o.block_grid;
        out.min_volatility = min_volatility(res, ms, o.tau_grid, o.kernel);
        out.m = out.min_volatility->m;
        out.tau = out.min_volatility->tau;
    } else {
        out.m = m_fixed.value_or(default_block_size(res.size()));
        out.tau = tau_fixed.value_or(kDefaultTau);
    }
    const LongRunCovCurve lrv = lrv_curve_padded(res, out.m, out.tau, o.kernel, out.estimate.curve.t);
    const SigmaFunctionals f = sigma_functionals(lrv);
    out.sigma = contrast ? f.sigma_c : f.sigma_h;
    out.sigma_clamped = contrast ? f.clamped_c : f.clamped_h;
}

void attach_band(const AnalysisOptions& o, LagResult& out) {
    if (!o.bands) return;
    BandOptions bo;
    bo.method = o.method;
    bo.alpha = o.alpha;
    bo.draws = o.draws;
    bo.seed = o.bootstrap_seed;
    bo.inflation = o.inflation;
    if (o.method == BandMethod::Bootstrap && o.cache != nullptr && o.grid_points == 0) {
        bo.quantile = o.cache->get(out.estimate.working_length, out.estimate.bandwidth, o.kernel,
                                   o.draws, o.alpha, o.bootstrap_seed);
    }
    out.band = build_band(out.estimate, out.sigma, o.kernel, bo);
}

void check_options(const AnalysisOptions& o) {
    if (o.lags.empty()) throw ConfigError("no lags requested");
    if (!(o.alpha > 0.0 && o.alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
    if (o.bandwidth_grid.empty()) throw ConfigError("bandwidth grid is empty");
}

}  // namespace

AnalysisResult analyze(const TimeSeries& y, const AnalysisOptions& o) {
    check_options(o);
    const std::size_t N = y.size();
    const std::size_t max_lag = *std::max_element(o.lags.begin(), o.lags.end());

    AnalysisResult out;
    if (o.h) {
        if (*o.h == 0) throw InvalidLagError("h must be at least 1");
        out.h_selected = *o.h;
    } else {
        LagSelectOptions lo;
        lo.h0 = o.h0;
        lo.threshold = o.lag_threshold;
        lo.kernel = o.kernel;
        const std::vector<double> grid = o.bandwidth_grid;
        const Kernel kernel = o.kernel;
        lo.bandwidth = [grid, kernel](std::span<const double> s, std::size_t) {
            return gcv_bandwidth(s, grid, kernel).bandwidth;
        };
        out.selection = select_lag(y, lo);
        out.h_selected = out.selection->h;
    }
    out.h = std::max(out.h_selected, max_lag + 1);
    if (out.h >= N) {
        std::ostringstream os;
        os << "difference lag " << out.h << " too large for a series of length " << N;
        throw InvalidLagError(os.str());
    }
    const std::size_t h = out.h;
    const DifferenceSeries rho_h = difference(y, h);

    for (std::size_t k : o.lags) {
        LagResult r;
        r.lag = k;
        if (k == 0) {
            const double b = pick_bandwidth(o, 0, rho_h.values, r.gcv);
            r.estimate = estimate_gamma0(y, h, b, o.kernel, band_grid(o, b));
            attach_sigma(o, residuals(y, h, h, b, o.kernel), false, r);
        } else {
            const DifferenceSeries rho_k = difference(y, k);
            const std::vector<double> paired = paired_difference(rho_h.values, rho_k.values);
            const double b = pick_bandwidth(o, k, paired, r.gcv);
            r.estimate = estimate_gammak(y, k, h, b, o.kernel, band_grid(o, b));
            attach_sigma(o, residuals(y, k, h, b, o.kernel), true, r);
        }
        attach_band(o, r);
        out.lags.push_back(std::move(r));
    }
    return out;
}

AnalysisResult analyze_naive(const TimeSeries& y, const AnalysisOptions& o) {
    check_options(o);
    AnalysisResult out;
    for (std::size_t k : o.lags) {
        LagResult r;
        r.lag = k;
        const std::optional<double> b_var = o.bandwidth.get(k);
        std::vector<double> grid;
        if (b_var) grid = band_grid(o, *b_var);
        NaiveFit fit = naive_fit(y, k, std::nullopt, b_var, o.kernel, grid, o.bandwidth_grid);
        if (!b_var && o.grid_points != 0) {
            grid = band_grid(o, fit.estimate.bandwidth);
            fit = naive_fit(y, k, fit.mean_bandwidth, fit.estimate.bandwidth, o.kernel, grid,
                            o.bandwidth_grid);
        }
        r.estimate = fit.estimate;
        ResidualPair res = make_residual_pair(fit.product_residuals, fit.product_residuals);
        res.fit_bandwidth = fit.estimate.bandwidth;
        res.fit_kernel = o.kernel;
        attach_sigma(o, res, false, r);
        attach_band(o, r);
        out.lags.push_back(std::move(r));
    }
    return out;
}

Curve truth_curve(const ErrorModel& err, std::size_t k, std::span<const double> t) {
    Curve c;
    c.t.assign(t.begin(), t.end());
    c.value.resize(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) c.value[i] = true_gamma(err, k, t[i]);
    return c;
}

}  // namespace tvacov
