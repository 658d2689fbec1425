#pragma once

#include <string>
#include <string_view>

namespace tvacov {

enum class KernelType { Epanechnikov, Biweight };

/// Symmetric compactly supported smoothing kernel on [-1, 1].
///
/// Besides K and K' the kernel carries the constants the inference needs:
/// the moments mu_l = int x^l K, phi_l = int x^l K^2 and the roughness
/// int |K'|^2. They are stored in closed form; tests check them against
/// quadrature.
class Kernel {
public:
    constexpr Kernel() noexcept = default;
    constexpr explicit Kernel(KernelType type) noexcept : type_(type) {}

    [[nodiscard]] constexpr KernelType type() const noexcept { return type_; }
    [[nodiscard]] std::string_view name() const noexcept;

    [[nodiscard]] double operator()(double x) const noexcept { return value(x); }
    [[nodiscard]] double value(double x) const noexcept;
    [[nodiscard]] double derivative(double x) const noexcept;

    /// int x^l K(x) dx for l = 0..4.
    [[nodiscard]] double mu(int l) const;
    /// int x^l K(x)^2 dx for l = 0..4.
    [[nodiscard]] double phi(int l) const;
    /// int_{-1}^{1} |K'(u)|^2 du.
    [[nodiscard]] double roughness() const noexcept;

private:
    KernelType type_ = KernelType::Epanechnikov;
};

/// Parses "epanechnikov" / "biweight"; throws ConfigError otherwise.
Kernel kernel_from_name(std::string_view name);

}  // namespace tvacov
