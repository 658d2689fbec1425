#include "oracles.hpp"

#include "tvacov/errors.hpp"
#include "tvacov/locallinear.hpp"
#include "tvacov/lrv.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace tvacov;

namespace {

// Sigma(t) straight from the definitions; `hat` (optional) is the smoother
// matrix the residuals came from.
Cov2 brute_sigma(const std::vector<double>& eh, const std::vector<double>& ek, std::size_t m, double tau,
                 double t, const std::vector<std::vector<double>>* hat = nullptr) {
    const std::size_t n = eh.size();
    double wsum = 0, xx = 0, xy = 0, yy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = oracle::kernel_value(KernelType::Epanechnikov, (oracle::design(i, n) - t) / tau);
        if (w == 0.0) continue;
        double qh = 0, qk = 0, len = 0;
        std::vector<double> ind(n, 0.0);
        for (long j = long(i) - long(m); j <= long(i + m); ++j) {
            if (j < 0 || j >= long(n)) continue;
            qh += eh[std::size_t(j)];
            qk += ek[std::size_t(j)];
            ind[std::size_t(j)] = 1.0;
            len += 1;
        }
        double scale = len;
        if (hat) {
            // |(I - H)' 1|^2
            double s = 0;
            for (std::size_t c = 0; c < n; ++c) {
                double v = ind[c];
                for (std::size_t r = 0; r < n; ++r) v -= (*hat)[r][c] * ind[r];
                s += v * v;
            }
            scale = s;
        }
        wsum += w;
        xx += w * qh * qh / scale;
        xy += w * qh * qk / scale;
        yy += w * qk * qk / scale;
    }
    return {xx / wsum, xy / wsum, yy / wsum};
}

std::vector<double> normals(std::size_t n, std::mt19937_64& eng) {
    std::normal_distribution<double> z;
    std::vector<double> v(n);
    for (double& x : v) x = z(eng);
    return v;
}

}  // namespace

TEST_CASE("residuals of a noise-free linear trend vanish") {
    std::vector<double> v(300);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = 1.0 + 2.0 * oracle::design(i, v.size());
    const ResidualPair r = residuals(TimeSeries(v), 1, 3, 0.2, Kernel());
    REQUIRE(r.size() == 297);
    for (std::size_t i = 0; i < r.size(); ++i) {
        CHECK(std::fabs(r.eh[i]) < 1e-10);
        CHECK(std::fabs(r.ek[i]) < 1e-10);
    }
    CHECK(r.fit_bandwidth == 0.2);
}

TEST_CASE("residuals are the difference series minus its fit") {
    const TimeSeries y = generate(MeanSpec::constant(0.0), model_preset(ModelPreset::Model3).error, 250, 4);
    const ResidualPair r = residuals(y, 2, 4, 0.25, Kernel());
    std::vector<double> rho(y.size() - 2);
    for (std::size_t j = 0; j < rho.size(); ++j) rho[j] = std::pow(y[j + 2] - y[j], 2);
    const std::vector<double> fit = fitted_values(rho, 0.25, Kernel());
    for (std::size_t j = 0; j < r.size(); j += 9) {
        CHECK(std::fabs(r.ek[j] - (rho[j] - oracle::wls_intercept(rho, oracle::design(j, rho.size()), 0.25, KernelType::Epanechnikov))) < 1e-10);
        CHECK(r.ek[j] == rho[j] - fit[j]);
    }
    CHECK_THROWS_AS((void)residuals(y, 5, 4, 0.25, Kernel()), InvalidLagError);
    CHECK_THROWS_AS((void)residuals(y, 0, 4, 0.25, Kernel()), InvalidLagError);
}

TEST_CASE("residuals ignore a linear trend in the smoothed series") {
    std::mt19937_64 eng(3);
    std::vector<double> rho = normals(400, eng);
    std::vector<double> trended = rho;
    for (std::size_t i = 0; i < rho.size(); ++i) trended[i] += 0.7 - 1.3 * oracle::design(i, rho.size());
    const std::vector<double> a = fitted_values(rho, 0.2, Kernel());
    const std::vector<double> b = fitted_values(trended, 0.2, Kernel());
    for (std::size_t i = 0; i < rho.size(); ++i) CHECK(std::fabs((trended[i] - b[i]) - (rho[i] - a[i])) < 1e-10);
}

TEST_CASE("white-noise residuals average to zero") {
    double total = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        const TimeSeries y = generate(MeanSpec::constant(0.0), oracle::white_noise(), 2000, s);
        const ResidualPair r = residuals(y, 1, 3, 0.2, Kernel());
        double mh = 0;
        std::size_t count = 0;
        for (std::size_t i = 0; i < r.size(); ++i) {
            const double t = oracle::design(i, r.size());
            if (t < 0.2 || t > 0.8) continue;
            mh += r.eh[i];
            ++count;
        }
        total += mh / double(count);
    }
    CHECK(std::fabs(total / 100) < 0.05);
}

TEST_CASE("residual pair construction") {
    CHECK_THROWS_AS((void)make_residual_pair({1, 2, 3}, {1, 2}), ConfigError);
    CHECK_THROWS_AS((void)make_residual_pair({1}, {1}), ConfigError);
    CHECK(make_residual_pair({1, 2}, {3, 4}).fit_bandwidth == 0.0);
}

TEST_CASE("alternating residuals by hand") {
    const double c = 1.5;
    std::vector<double> e(8);
    for (std::size_t i = 0; i < 8; ++i) e[i] = (i % 2 ? -c : c);
    const ResidualPair r = make_residual_pair(e, e);
    const std::vector<double> grid{0.5};
    const LongRunCovCurve l = lrv_curve(r, 1, 0.3, Kernel(), grid);
    // interior blocks of three alternating terms sum to +-c, so N_i = c^2 / 3
    CHECK(l.sigma[0].xx == doctest::Approx(c * c / 3).epsilon(1e-14));
    CHECK(l.sigma[0].xy == doctest::Approx(c * c / 3).epsilon(1e-14));
    CHECK(l.sigma[0].yy == doctest::Approx(c * c / 3).epsilon(1e-14));
}

TEST_CASE("block estimator matches the brute-force construction") {
    std::mt19937_64 eng(12);
    const std::size_t n = 120;
    const std::vector<double> eh = normals(n, eng), ek = normals(n, eng);
    const ResidualPair raw = make_residual_pair(eh, ek);
    for (std::size_t m : {1u, 4u, 10u}) {
        for (double tau : {0.1, 0.25}) {
            const std::vector<double> grid = uniform_grid(tau, 1 - tau, 9);
            const LongRunCovCurve l = lrv_curve(raw, m, tau, Kernel(), grid);
            for (std::size_t g = 0; g < grid.size(); ++g) {
                const Cov2 ref = brute_sigma(eh, ek, m, tau, grid[g]);
                CHECK(std::fabs(l.sigma[g].xx - ref.xx) < 1e-12);
                CHECK(std::fabs(l.sigma[g].xy - ref.xy) < 1e-12);
                CHECK(std::fabs(l.sigma[g].yy - ref.yy) < 1e-12);
            }
        }
    }
}

TEST_CASE("fitted residuals use the smoother shrinkage of each block") {
    const TimeSeries y = generate(MeanSpec::constant(0.0), model_preset(ModelPreset::Model1).error, 90, 5);
    const double b = 0.3;
    const ResidualPair r = residuals(y, 1, 2, b, Kernel());
    const auto hat = oracle::hat_matrix(r.size(), b, KernelType::Epanechnikov);
    const std::vector<double> grid = uniform_grid(0.2, 0.8, 7);
    const LongRunCovCurve l = lrv_curve(r, 3, 0.2, Kernel(), grid);
    for (std::size_t g = 0; g < grid.size(); ++g) {
        const Cov2 ref = brute_sigma(r.eh, r.ek, 3, 0.2, grid[g], &hat);
        CHECK(std::fabs(l.sigma[g].xx - ref.xx) < 1e-10);
        CHECK(std::fabs(l.sigma[g].xy - ref.xy) < 1e-10);
        CHECK(std::fabs(l.sigma[g].yy - ref.yy) < 1e-10);
    }
}

TEST_CASE("smoothing weights sum to one") {
    const ResidualPair r = make_residual_pair(std::vector<double>(100, 0.7), std::vector<double>(100, -0.7));
    const std::vector<double> grid = uniform_grid(0.25, 0.75, 11);
    const LongRunCovCurve l = lrv_curve(r, 1, 0.2, Kernel(), grid);
    for (const Cov2& s : l.sigma) {
        CHECK(std::fabs(s.xx / (3 * 0.49) - 1) < 1e-12);
        CHECK(std::fabs(s.xy / (-3 * 0.49) - 1) < 1e-12);
    }
}

TEST_CASE("injected iid residuals recover the identity on average") {
    const std::size_t n = 4000, m = default_block_size(n), seeds = 50;
    CHECK(m == 16);
    const std::vector<double> grid = evaluation_grid(n, 0.2);
    std::vector<Cov2> avg(grid.size());
    for (std::uint64_t s = 0; s < seeds; ++s) {
        std::mt19937_64 eng(s);
        const LongRunCovCurve l = lrv_curve(make_residual_pair(normals(n, eng), normals(n, eng)), m, 0.2, Kernel(), grid);
        for (std::size_t g = 0; g < grid.size(); ++g) {
            const Cov2& c = l.sigma[g];
            CHECK(c.min_eigenvalue() >= -1e-12);
            CHECK(c.contrast() >= -1e-12);
            avg[g].xx += c.xx / double(seeds);
            avg[g].xy += c.xy / double(seeds);
            avg[g].yy += c.yy / double(seeds);
        }
    }
    for (const Cov2& c : avg) {
        CHECK(std::fabs(c.xx - 1) < 0.1);
        CHECK(std::fabs(c.xy) < 0.1);
        CHECK(std::fabs(c.yy - 1) < 0.1);
    }
}

TEST_CASE("larger blocks are noisier on iid residuals") {
    const std::size_t n = 2000;
    const std::vector<double> grid = evaluation_grid(n, 0.2);
    double err_small = 0, err_large = 0;
    for (std::uint64_t s = 0; s < 20; ++s) {
        std::mt19937_64 eng(50 + s);
        const ResidualPair r = make_residual_pair(normals(n, eng), normals(n, eng));
        for (auto [m, acc] : {std::pair<std::size_t, double*>{1, &err_small}, {default_block_size(n), &err_large}}) {
            const LongRunCovCurve l = lrv_curve(r, m, 0.2, Kernel(), grid);
            double e = 0;
            for (const Cov2& c : l.sigma) e = std::max({e, std::fabs(c.xx - 1), std::fabs(c.xy), std::fabs(c.yy - 1)});
            *acc += e;
        }
    }
    CHECK(err_large > err_small);
}

TEST_CASE("scaling residuals scales the estimate by the square") {
    std::mt19937_64 eng(9);
    const std::vector<double> eh = normals(300, eng), ek = normals(300, eng);
    std::vector<double> eh2 = eh, ek2 = ek, eh3 = eh, ek3 = ek;
    for (std::size_t i = 0; i < eh.size(); ++i) {
        eh2[i] *= 2;
        ek2[i] *= 2;
        eh3[i] *= 3;
        ek3[i] *= 3;
    }
    const std::vector<double> grid = evaluation_grid(300, 0.2);
    const LongRunCovCurve a = lrv_curve(make_residual_pair(eh, ek), 5, 0.2, Kernel(), grid);
    const LongRunCovCurve b = lrv_curve(make_residual_pair(eh2, ek2), 5, 0.2, Kernel(), grid);
    const LongRunCovCurve c = lrv_curve(make_residual_pair(eh3, ek3), 5, 0.2, Kernel(), grid);
    for (std::size_t g = 0; g < grid.size(); ++g) {
        CHECK(b.sigma[g].xx == 4 * a.sigma[g].xx);
        CHECK(b.sigma[g].xy == 4 * a.sigma[g].xy);
        CHECK(c.sigma[g].yy == doctest::Approx(9 * a.sigma[g].yy).epsilon(1e-13));
    }
}

TEST_CASE("argument checks and padding") {
    const ResidualPair r = make_residual_pair(std::vector<double>(40, 1.0), std::vector<double>(40, 0.5));
    const std::vector<double> inside{0.5};
    CHECK_THROWS_AS((void)lrv_curve(r, 0, 0.2, Kernel(), inside), ConfigError);
    CHECK_THROWS_AS((void)lrv_curve(r, 11, 0.2, Kernel(), inside), ConfigError);
    CHECK_THROWS_AS((void)lrv_curve(r, 2, 0.5, Kernel(), inside), ConfigError);
    const std::vector<double> outside{0.1};
    CHECK_THROWS_AS((void)lrv_curve(r, 2, 0.2, Kernel(), outside), ConfigError);

    std::mt19937_64 eng(1);
    const ResidualPair noisy = make_residual_pair(normals(200, eng), normals(200, eng));
    const std::vector<double> edge{0.05, 0.2, 0.95, 0.8};
    const LongRunCovCurve p = lrv_curve_padded(noisy, 3, 0.2, Kernel(), edge);
    CHECK(p.sigma[0].xx == p.sigma[1].xx);
    CHECK(p.sigma[2].yy == p.sigma[3].yy);
    CHECK(p.t == edge);
}

TEST_CASE("sigma functionals") {
    LongRunCovCurve l;
    l.t = {0.3, 0.6, 0.9};
    l.sigma = {Cov2{1, 0, 1}, Cov2{4, 1, 1}, Cov2{-1e-18, 0, 1}};
    const SigmaFunctionals f = sigma_functionals(l);
    CHECK(f.sigma_h.value[0] == 1.0);
    CHECK(f.sigma_c.value[0] == doctest::Approx(std::sqrt(2.0)));
    CHECK(f.sigma_h.value[1] == 2.0);
    CHECK(f.sigma_c.value[1] == doctest::Approx(std::sqrt(3.0)));
    CHECK(f.sigma_h.value[2] == 0.0);
    CHECK(f.clamped_h);
    CHECK_FALSE(f.clamped_c);
    CHECK(f.sigma_h.t == l.t);
    CHECK(Cov2{4, 1, 1}.min_eigenvalue() == doctest::Approx(2.5 - std::sqrt(2.25 + 1)));
}
