#include "oracles.hpp"

#include "tvacov/errors.hpp"
#include "tvacov/procgen.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace tvacov;

namespace {

double sample_mean(std::span<const double> v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / double(v.size());
}

double sample_sd(std::span<const double> v) {
    const double m = sample_mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / double(v.size() - 1));
}

}  // namespace

TEST_CASE("mean spec validation and evaluation") {
    CHECK_THROWS_AS(MeanSpec({0.5, 0.4}, {Segment{}, Segment{}, Segment{}}), ConfigError);
    CHECK_THROWS_AS(MeanSpec({0.0}, {Segment{}, Segment{}}), ConfigError);
    CHECK_THROWS_AS(MeanSpec({0.5}, {Segment{}}), ConfigError);
    const MeanSpec m({0.5}, {Segment{1.0, 2.0}, Segment{-1.0, 0.0}});
    CHECK(m(0.25) == doctest::Approx(1.5));
    CHECK(m(0.5) == -1.0);
    CHECK(m(1.0) == -1.0);
    CHECK(m.segment_index(0.49) == 0);
    CHECK(m.segment_index(1.0) == 1);
    CHECK(MeanSpec::constant(3.0)(0.7) == 3.0);
}

TEST_CASE("time series rejects short or non-finite input") {
    CHECK_THROWS_AS(TimeSeries(std::vector<double>{1.0}), NumericError);
    CHECK_THROWS_AS(TimeSeries(std::vector<double>{1.0, NAN}), NumericError);
}

TEST_CASE("noise-free model generates the zero series") {
    const ErrorModel silent = LinearLS{PowerCoefficients{0.0, INFINITY}, 1, 1, 1.0};
    const TimeSeries y = generate(MeanSpec::constant(0.0), silent, 50, 3);
    for (double v : y.values()) CHECK(v == 0.0);
}

TEST_CASE("generation is deterministic in the seed") {
    const ModelSpec spec = model_preset(ModelPreset::Model1);
    const TimeSeries a = generate(spec.mean, spec.error, 300, 11);
    const TimeSeries b = generate(spec.mean, spec.error, 300, 11);
    const TimeSeries c = generate(spec.mean, spec.error, 300, 12);
    CHECK(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
    CHECK_FALSE(std::equal(a.values().begin(), a.values().end(), c.values().begin()));
}

TEST_CASE("mean injection adds mu(t_i) to the zero-mean series") {
    for (ModelPreset p : {ModelPreset::Model1, ModelPreset::Model2, ModelPreset::Model3}) {
        const ModelSpec spec = model_preset(p);
        const std::size_t n = 500;
        const TimeSeries with = generate(spec.mean, spec.error, n, 5);
        const TimeSeries without = generate(MeanSpec::constant(0.0), spec.error, n, 5);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(std::fabs(with[i] - without[i] - spec.mean(oracle::design(i, n))) <= 1e-12);
        }
    }
}

TEST_CASE("model 1 segment means sit at 0 and 1") {
    const ModelSpec spec = model_preset(ModelPreset::Model1);
    const std::size_t n = 400;
    const TimeSeries y = generate(spec.mean, spec.error, n, 2024);
    std::vector<double> seg0, seg1;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t s = spec.mean.segment_index(oracle::design(i, n));
        if (s == 0) seg0.push_back(y[i]);
        if (s == 1) seg1.push_back(y[i]);
    }
    CHECK(std::fabs(sample_mean(seg0)) < 3 * sample_sd(seg0) / std::sqrt(double(seg0.size())));
    CHECK(std::fabs(sample_mean(seg1) - 1.0) < 3 * sample_sd(seg1) / std::sqrt(double(seg1.size())));
}

TEST_CASE("model 3 variance near t=1 follows the frozen-time formula") {
    const ModelSpec spec = model_preset(ModelPreset::Model3);
    const std::size_t n = 100000;
    const TimeSeries y = generate(MeanSpec::constant(0.0), spec.error, n, 77);
    const std::size_t window = 4000;
    double ss = 0.0, expected = 0.0;
    for (std::size_t i = n - window; i < n; ++i) {
        ss += y[i] * y[i];
        double a2 = 0.0;
        for (std::size_t j = 0; j <= 2; ++j) a2 += std::pow(coefficient(spec.error, j, oracle::design(i, n)), 2);
        expected += 0.3 * a2;
    }
    CHECK(std::fabs(ss / expected - 1.0) < 0.05);
}

TEST_CASE("presets") {
    const std::vector<double> bp = preset_breakpoints();
    REQUIRE(bp.size() == 6);
    CHECK(bp[2] == doctest::Approx(3.0 / 6 - 2.0 / 36));
    CHECK(bp[3] == doctest::Approx(3.0 / 6 + 2.0 / 36));
    CHECK(model_preset(ModelPreset::Model1).mean(0.16) == 1.0);
    CHECK(model_preset(ModelPreset::Model2).mean(0.16) == 2.0);
    CHECK(model_preset(ModelPreset::Model1).mean(0.3) == 0.0);
    const ErrorModel m3 = model_preset(ModelPreset::Model3).error;
    for (double t : {0.0, 0.3, 1.0}) {
        CHECK(coefficient(m3, 0, t) == doctest::Approx(1.0));
        CHECK(coefficient(m3, 1, t) == doctest::Approx((t + 0.05) / 2));
        CHECK(coefficient(m3, 2, t) == doctest::Approx((t + 0.05) * (t + 0.05) / 4));
    }
    CHECK(innovation_variance(m3) == 0.3);
    CHECK(preset_from_name("model2") == ModelPreset::Model2);
    CHECK(preset_name(ModelPreset::Model3) == "model3");
    CHECK_THROWS_AS((void)preset_from_name("model4"), ConfigError);
}

TEST_CASE("error model validation") {
    CHECK_THROWS_AS(validate(ErrorModel{MA2LS{PowerCoefficients{}, 0.0}}), ConfigError);
    CHECK_THROWS_AS(validate(ErrorModel{LinearLS{PowerCoefficients{0.0, 2.0}, 1, 5, 1.0}}), ConfigError);
    CHECK_NOTHROW(validate(model_preset(ModelPreset::Model1).error));
}

TEST_CASE("true_gamma closed forms") {
    const ErrorModel m1 = model_preset(ModelPreset::Model1).error;
    for (double t = 0.0; t <= 1.0; t += 0.05) {
        CHECK(true_gamma(m1, 0, t) == doctest::Approx(oracle::model1_gamma0(t)).epsilon(1e-12));
        CHECK(true_gamma(m1, 1, t) == doctest::Approx(oracle::model1_gamma1(t)).epsilon(1e-12));
    }
    const ErrorModel m3 = model_preset(ModelPreset::Model3).error;
    for (double t : {0.1, 0.5, 0.9}) {
        const double a1 = (t + 0.05) / 2, a2 = a1 * a1;
        CHECK(true_gamma(m3, 1, t) == doctest::Approx(0.3 * (a1 + a1 * a2)));
        CHECK(true_gamma(m3, 2, t) == doctest::Approx(0.3 * a2));
        CHECK(true_gamma(m3, 3, t) == 0.0);
    }
    CHECK_THROWS_AS((void)true_gamma(m1, 0, 1.5), ConfigError);
}

TEST_CASE("true_gamma matches the frozen-time Monte Carlo") {
    for (ModelPreset p : {ModelPreset::Model1, ModelPreset::Model2, ModelPreset::Model3}) {
        const ErrorModel err = model_preset(p).error;
        for (double t : {0.25, 0.5, 0.75}) {
            for (std::size_t k : {0u, 1u, 2u}) {
                const oracle::MonteCarlo mc = oracle::frozen_gamma(err, k, t, 200000, 9);
                CAPTURE(t);
                CAPTURE(k);
                CHECK(std::fabs(true_gamma(err, k, t) - mc.mean) < 3.5 * mc.se);
            }
        }
    }
}

TEST_CASE("autocovariances decay at least like k^-2") {
    // k^2 |gamma_k(t)| peaks at a small lag and then decreases
    for (ModelPreset p : {ModelPreset::Model1, ModelPreset::Model3}) {
        const ErrorModel err = model_preset(p).error;
        for (double t = 0.0; t <= 1.0; t += 0.1) {
            double prev = INFINITY;
            double peak = 0.0;
            for (std::size_t k = 1; k <= 3; ++k) peak = std::max(peak, double(k * k) * std::fabs(true_gamma(err, k, t)));
            for (std::size_t k = 3; k <= 40; ++k) {
                const double v = double(k * k) * std::fabs(true_gamma(err, k, t));
                CHECK(v <= peak + 1e-15);
                CHECK(v <= prev + 1e-15);
                prev = v;
            }
        }
    }
}
