#include "oracles.hpp"

#include "tvacov/errors.hpp"
#include "tvacov/kernel.hpp"

#include <doctest.h>

#include <cmath>

using namespace tvacov;

TEST_CASE("epanechnikov constants have their closed forms") {
    const Kernel k(KernelType::Epanechnikov);
    CHECK(k.phi(0) == doctest::Approx(0.6).epsilon(1e-14));
    CHECK(k.mu(2) == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(k.roughness() == doctest::Approx(1.5).epsilon(1e-14));
}

TEST_CASE("kernel constants match quadrature") {
    for (KernelType type : {KernelType::Epanechnikov, KernelType::Biweight}) {
        const Kernel k(type);
        CAPTURE(k.name());
        for (int l = 0; l <= 4; ++l) {
            const double mu = oracle::simpson([&](double x) { return std::pow(x, l) * oracle::kernel_value(type, x); }, -1, 1);
            const double phi = oracle::simpson(
                [&](double x) { return std::pow(x, l) * std::pow(oracle::kernel_value(type, x), 2); }, -1, 1);
            CHECK(std::fabs(k.mu(l) - mu) < 1e-10);
            CHECK(std::fabs(k.phi(l) - phi) < 1e-10);
        }
        const double rough = oracle::simpson(
            [&](double x) { return std::pow(oracle::kernel_derivative(type, x), 2); }, -1, 1);
        CHECK(std::fabs(k.roughness() - rough) < 1e-10);
    }
}

TEST_CASE("kernel values, support and derivative") {
    for (KernelType type : {KernelType::Epanechnikov, KernelType::Biweight}) {
        const Kernel k(type);
        for (double x = -1.5; x <= 1.5; x += 0.01) {
            CHECK(k(x) == doctest::Approx(oracle::kernel_value(type, x)).epsilon(1e-14));
            CHECK(k(x) == k(-x));
            if (std::fabs(x) < 1.0) CHECK(k.derivative(x) == doctest::Approx(oracle::kernel_derivative(type, x)).epsilon(1e-14));
        }
        CHECK(k(1.0) == 0.0);
        CHECK(k(1.2) == 0.0);
    }
}

TEST_CASE("kernel names") {
    CHECK(kernel_from_name("epanechnikov").type() == KernelType::Epanechnikov);
    CHECK(kernel_from_name("biweight").type() == KernelType::Biweight);
    CHECK(Kernel(KernelType::Biweight).name() == "biweight");
    CHECK_THROWS_AS((void)kernel_from_name("gaussian"), ConfigError);
    CHECK_THROWS_AS((void)Kernel().mu(5), ConfigError);
}
