#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace tvacov {

/// Observations y_1..y_n on the implicit grid t_i = i/n.
class TimeSeries {
public:
    TimeSeries() = default;
    /// Requires n >= 2 and finite values; throws NumericError otherwise.
    explicit TimeSeries(std::vector<double> values);

    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] double operator[](std::size_t i) const noexcept { return values_[i]; }

private:
    std::vector<double> values_;
};

/// Affine piece c0 + c1 t of a piecewise trend.
struct Segment {
    double intercept = 0.0;
    double slope = 0.0;
};

/// Piecewise-affine trend with abrupt changes at the breakpoints.
/// Segment j covers [a_j, a_{j+1}) with a_0 = 0 and a_{d+1} = 1; t = 1 belongs
/// to the last segment.
class MeanSpec {
public:
    MeanSpec() : segments_{Segment{}} {}
    /// Throws ConfigError unless breakpoints are strictly increasing inside (0,1)
    /// and there is exactly one more segment than breakpoints.
    MeanSpec(std::vector<double> breakpoints, std::vector<Segment> segments);

    static MeanSpec constant(double level);

    [[nodiscard]] double operator()(double t) const noexcept;
    [[nodiscard]] std::size_t segment_index(double t) const noexcept;
    [[nodiscard]] const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
    [[nodiscard]] const std::vector<Segment>& segments() const noexcept { return segments_; }

private:
    std::vector<double> breakpoints_;
    std::vector<Segment> segments_;
};

/// Coefficients a_j(t) = ((t + shift) / divisor)^j.
struct PowerCoefficients {
    double shift = 0.0;
    double divisor = 2.0;

    [[nodiscard]] double operator()(std::size_t j, double t) const noexcept;
    /// sup over t in [0,1] of |a_j(t)|.
    [[nodiscard]] double sup_abs(std::size_t j) const noexcept;
};

/// Truncated locally stationary linear process
///   x_i = sum_{j=first}^{order} a_j(t_i) zeta_{i-j},  zeta ~ N(0, innovation_variance).
struct LinearLS {
    PowerCoefficients coefficients{};
    std::size_t first = 1;
    std::size_t order = 60;
    double innovation_variance = 1.0;
};

/// Locally stationary MA(2): x_i = a_0(t) zeta_i + a_1(t) zeta_{i-1} + a_2(t) zeta_{i-2}.
struct MA2LS {
    PowerCoefficients coefficients{0.05, 2.0};
    double innovation_variance = 0.3;
};

using ErrorModel = std::variant<LinearLS, MA2LS>;

/// Smallest truncation order with sup_t |a_J(t)| < tol, times a 1.5 safety factor.
[[nodiscard]] std::size_t default_truncation(const PowerCoefficients& coef, double tol = 1e-12);

/// Throws ConfigError when the model is unusable (variance <= 0, truncation too coarse).
void validate(const ErrorModel& err, double truncation_tol = 1e-9);

/// Coefficient a_j(t) of the model (zero outside its index range).
[[nodiscard]] double coefficient(const ErrorModel& err, std::size_t j, double t) noexcept;
[[nodiscard]] std::size_t first_index(const ErrorModel& err) noexcept;
[[nodiscard]] std::size_t last_index(const ErrorModel& err) noexcept;
[[nodiscard]] double innovation_variance(const ErrorModel& err) noexcept;

/// y_i = mu(t_i) + x_i with t_i = i/n. Deterministic in (mean, err, n, seed).
[[nodiscard]] TimeSeries generate(const MeanSpec& mean, const ErrorModel& err, std::size_t n,
                                  std::uint64_t seed);

/// Frozen-time autocovariance var(zeta) sum_j a_j(t) a_{j+k}(t).
[[nodiscard]] double true_gamma(const ErrorModel& err, std::size_t k, double t);

enum class ModelPreset { Model1, Model2, Model3 };

struct ModelSpec {
    MeanSpec mean;
    ErrorModel error;
};

/// Change points 1/6 +- 1/36, 3/6 +- 2/36, 5/6 +- 3/36.
[[nodiscard]] std::vector<double> preset_breakpoints();
[[nodiscard]] ModelSpec model_preset(ModelPreset preset);
[[nodiscard]] ModelPreset preset_from_name(std::string_view name);
[[nodiscard]] std::string_view preset_name(ModelPreset preset) noexcept;

}  // namespace tvacov
