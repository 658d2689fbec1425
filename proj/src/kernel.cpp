#include "tvacov/kernel.hpp"

#include "tvacov/errors.hpp"

#include <array>
#include <cmath>

namespace tvacov {

namespace {

struct KernelConstants {
    std::array<double, 5> mu;
    std::array<double, 5> phi;
    double roughness;
};

// K(x) = 3/4 (1 - x^2)
constexpr KernelConstants kEpanechnikov{
    {1.0, 0.0, 1.0 / 5.0, 0.0, 3.0 / 35.0},
    {3.0 / 5.0, 0.0, 3.0 / 35.0, 0.0, 1.0 / 35.0},
    3.0 / 2.0,
};

// K(x) = 15/16 (1 - x^2)^2
constexpr KernelConstants kBiweight{
    {1.0, 0.0, 1.0 / 7.0, 0.0, 1.0 / 21.0},
    {5.0 / 7.0, 0.0, 5.0 / 77.0, 0.0, 15.0 / 1001.0},
    15.0 / 7.0,
};

const KernelConstants& constants(KernelType type) {
    return type == KernelType::Biweight ? kBiweight : kEpanechnikov;
}

}  // namespace

std::string_view Kernel::name() const noexcept {
    return type_ == KernelType::Biweight ? "biweight" : "epanechnikov";
}

double Kernel::value(double x) const noexcept {
    if (!(std::fabs(x) <= 1.0)) return 0.0;
    const double s = 1.0 - x * x;
    switch (type_) {
        case KernelType::Biweight:
            return 0.9375 * s * s;
        case KernelType::Epanechnikov:
        default:
            return 0.75 * s;
    }
}

double Kernel::derivative(double x) const noexcept {
    if (!(std::fabs(x) < 1.0)) return 0.0;
    switch (type_) {
        case KernelType::Biweight:
            return -3.75 * x * (1.0 - x * x);
        case KernelType::Epanechnikov:
        default:
            return -1.5 * x;
    }
}

double Kernel::mu(int l) const {
    if (l < 0 || l > 4) throw ConfigError("kernel moment order out of range: " + std::to_string(l));
    return constants(type_).mu[static_cast<std::size_t>(l)];
}

double Kernel::phi(int l) const {
    if (l < 0 || l > 4) throw ConfigError("kernel moment order out of range: " + std::to_string(l));
    return constants(type_).phi[static_cast<std::size_t>(l)];
}

double Kernel::roughness() const noexcept { return constants(type_).roughness; }

Kernel kernel_from_name(std::string_view name) {
    if (name == "epanechnikov") return Kernel(KernelType::Epanechnikov);
    if (name == "biweight") return Kernel(KernelType::Biweight);
    throw ConfigError("unknown kernel '" + std::string(name) + "'");
}

}  // namespace tvacov
