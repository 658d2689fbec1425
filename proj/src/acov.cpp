#include "tvacov/acov.hpp"

#include "tvacov/diffseries.hpp"
#include "tvacov/errors.hpp"
#include "tvacov/tuning.hpp"

#include <algorithm>
#include <sstream>

namespace tvacov {

namespace {

std::vector<double> grid_or_default(std::span<const double> grid, std::size_t n, double b) {
    if (!grid.empty()) return {grid.begin(), grid.end()};
    std::vector<double> g = evaluation_grid(n, b);
    if (g.empty()) throw ConfigError("evaluation grid [b, 1-b] is empty");
    return g;
}

void flag_negative(AcovEstimate& est) {
    est.negative_values =
        std::any_of(est.curve.value.begin(), est.curve.value.end(), [](double v) { return v < 0.0; });
}

}  // namespace

AcovEstimate estimate_gamma0(const TimeSeries& y, std::size_t h, double b_h, const Kernel& kernel,
                             std::span<const double> grid) {
    if (h == 0) throw InvalidLagError("difference lag h must be at least 1");
    const DifferenceSeries rho = difference(y, h);
    const std::vector<double> g = grid_or_default(grid, rho.size(), b_h);

    AcovEstimate est;
    est.lag = 0;
    est.h = h;
    est.bandwidth = b_h;
    est.working_length = rho.size();
    est.response_scale = 0.5;
    est.curve = fit_curve(rho.values, b_h, kernel, g);
    for (double& v : est.curve.value) v *= 0.5;
    flag_negative(est);
    return est;
}

AcovEstimate estimate_gammak(const TimeSeries& y, std::size_t k, std::size_t h, double b_k,
                             const Kernel& kernel, std::span<const double> grid) {
    if (k == 0 || k >= h) {
        std::ostringstream os;
        os << "autocovariance lag k=" << k << " needs 1 <= k < h (h=" << h << ")";
        throw InvalidLagError(os.str());
    }
    const DifferenceSeries rho_h = difference(y, h);
    const DifferenceSeries rho_k = difference(y, k);
    const std::vector<double> g = grid_or_default(grid, rho_h.size(), b_k);

    const Curve fit_h = fit_curve(rho_h.values, b_k, kernel, g);
    const Curve fit_k = fit_curve(rho_k.values, b_k, kernel, g);

    AcovEstimate est;
    est.lag = k;
    est.h = h;
    est.bandwidth = b_k;
    est.working_length = rho_h.size();
    est.response_scale = 0.5;
    est.curve.t = g;
    est.curve.value.resize(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        est.curve.value[i] = 0.5 * (fit_h.value[i] - fit_k.value[i]);
    }
    return est;
}

NaiveFit naive_fit(const TimeSeries& y, std::size_t k, std::optional<double> b_mean,
                   std::optional<double> b_var, const Kernel& kernel, std::span<const double> grid,
                   std::span<const double> bandwidth_grid) {
    const std::size_t N = y.size();
    if (k >= N) throw InvalidLagError("naive estimator lag must be below the series length");
    std::vector<double> default_grid;
    if (bandwidth_grid.empty()) {
        default_grid = default_bandwidth_grid();
        bandwidth_grid = default_grid;
    }

    NaiveFit out;
    out.mean_bandwidth = b_mean ? *b_mean : gcv_bandwidth(y.values(), bandwidth_grid, kernel).bandwidth;
    const std::vector<double> mean_fit = fitted_values(y.values(), out.mean_bandwidth, kernel);
    std::vector<double> e(N);
    for (std::size_t i = 0; i < N; ++i) e[i] = y[i] - mean_fit[i];

    // products p_j = e_{j+k} e_j, attributed to the start index like the difference series
    out.products.resize(N - k);
    for (std::size_t j = 0; j + k < N; ++j) out.products[j] = e[j + k] * e[j];

    const double bv = b_var ? *b_var : gcv_bandwidth(out.products, bandwidth_grid, kernel).bandwidth;
    const std::vector<double> g = grid_or_default(grid, out.products.size(), bv);

    AcovEstimate& est = out.estimate;
    est.lag = k;
    est.h = 0;
    est.bandwidth = bv;
    est.working_length = out.products.size();
    est.response_scale = 1.0;
    est.curve = fit_curve(out.products, bv, kernel, g);
    if (k == 0) flag_negative(est);

    const std::vector<double> pf = fitted_values(out.products, bv, kernel);
    out.product_residuals.resize(out.products.size());
    for (std::size_t j = 0; j < pf.size(); ++j) out.product_residuals[j] = out.products[j] - pf[j];
    return out;
}

}  // namespace tvacov
