#include "tvacov/procgen.hpp"

#include "tvacov/errors.hpp"
#include "tvacov/rng.hpp"
#include "tvacov/summation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tvacov {

TimeSeries::TimeSeries(std::vector<double> values) : values_(std::move(values)) {
    if (values_.size() < 2) throw NumericError("time series needs at least 2 observations");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw NumericError("non-finite observation at index " + std::to_string(i + 1));
        }
    }
}

MeanSpec::MeanSpec(std::vector<double> breakpoints, std::vector<Segment> segments)
    : breakpoints_(std::move(breakpoints)), segments_(std::move(segments)) {
    if (segments_.size() != breakpoints_.size() + 1) {
        throw ConfigError("mean spec needs exactly one more segment than breakpoints");
    }
    for (std::size_t j = 0; j < breakpoints_.size(); ++j) {
        const double a = breakpoints_[j];
        if (!(a > 0.0 && a < 1.0)) throw ConfigError("breakpoint outside (0, 1)");
        if (j > 0 && !(a > breakpoints_[j - 1])) {
            throw ConfigError("breakpoints must be strictly increasing");
        }
    }
    for (const Segment& s : segments_) {
        if (!std::isfinite(s.intercept) || !std::isfinite(s.slope)) {
            throw ConfigError("non-finite segment coefficient");
        }
    }
}

MeanSpec MeanSpec::constant(double level) { return MeanSpec({}, {Segment{level, 0.0}}); }

std::size_t MeanSpec::segment_index(double t) const noexcept {
    // number of breakpoints <= t
    return static_cast<std::size_t>(
        std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t) - breakpoints_.begin());
}

double MeanSpec::operator()(double t) const noexcept {
    const Segment& s = segments_[segment_index(t)];
    return s.intercept + s.slope * t;
}

double PowerCoefficients::operator()(std::size_t j, double t) const noexcept {
    return std::pow((t + shift) / divisor, static_cast<double>(j));
}

double PowerCoefficients::sup_abs(std::size_t j) const noexcept {
    return std::max(std::fabs((*this)(j, 0.0)), std::fabs((*this)(j, 1.0)));
}

std::size_t default_truncation(const PowerCoefficients& coef, double tol) {
    std::size_t j = 1;
    while (coef.sup_abs(j) >= tol) {
        if (++j > 10000) throw ConfigError("coefficients do not decay; cannot truncate");
    }
    return (3 * j + 1) / 2;
}

double coefficient(const ErrorModel& err, std::size_t j, double t) noexcept {
    return std::visit(
        [&](const auto& m) -> double {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, LinearLS>) {
                return (j >= m.first && j <= m.order) ? m.coefficients(j, t) : 0.0;
            } else {
                return j <= 2 ? m.coefficients(j, t) : 0.0;
            }
        },
        err);
}

std::size_t first_index(const ErrorModel& err) noexcept {
    if (const auto* lin = std::get_if<LinearLS>(&err)) return lin->first;
    return 0;
}

std::size_t last_index(const ErrorModel& err) noexcept {
    if (const auto* lin = std::get_if<LinearLS>(&err)) return lin->order;
    return 2;
}

double innovation_variance(const ErrorModel& err) noexcept {
    return std::visit([](const auto& m) { return m.innovation_variance; }, err);
}

void validate(const ErrorModel& err, double truncation_tol) {
    const double var = innovation_variance(err);
    if (!(var > 0.0) || !std::isfinite(var)) throw ConfigError("innovation variance must be > 0");
    if (const auto* lin = std::get_if<LinearLS>(&err)) {
        if (lin->order < lin->first) throw ConfigError("truncation order below first coefficient");
        if (!(lin->coefficients.divisor != 0.0)) throw ConfigError("coefficient divisor is zero");
        if (lin->coefficients.sup_abs(lin->order) >= truncation_tol) {
            std::ostringstream os;
            os << "truncation order " << lin->order << " too small: sup|a_J| = "
               << lin->coefficients.sup_abs(lin->order);
            throw ConfigError(os.str());
        }
    }
}

TimeSeries generate(const MeanSpec& mean, const ErrorModel& err, std::size_t n, std::uint64_t seed) {
    if (n < 2) throw ConfigError("sample size must be at least 2");
    validate(err);
    const std::size_t first = first_index(err);
    const std::size_t last = last_index(err);
    const double sd = std::sqrt(innovation_variance(err));

    // zeta[burn + i] is the innovation at time i; burn-in covers lags up to `last`.
    const std::size_t burn = last;
    std::vector<double> zeta(n + burn);
    Engine engine = make_engine(derive_seed(seed, stream::kData));
    std::normal_distribution<double> normal(0.0, sd);
    for (double& z : zeta) z = normal(engine);

    std::vector<double> y(n);
    std::vector<double> a(last + 1);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i + 1) / static_cast<double>(n);
        for (std::size_t j = first; j <= last; ++j) a[j] = coefficient(err, j, t);
        double x = 0.0;
        for (std::size_t j = first; j <= last; ++j) x += a[j] * zeta[burn + i - j];
        if (!std::isfinite(x)) throw NumericError("non-finite process value at t=" + std::to_string(t));
        y[i] = mean(t) + x;
    }
    return TimeSeries(std::move(y));
}

double true_gamma(const ErrorModel& err, std::size_t k, double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw ConfigError("true_gamma: t outside [0, 1]");
    const std::size_t first = first_index(err);
    const std::size_t last = last_index(err);
    CompensatedSum acc;
    for (std::size_t j = first; j + k <= last; ++j) {
        acc += coefficient(err, j, t) * coefficient(err, j + k, t);
    }
    return innovation_variance(err) * acc.value();
}

std::vector<double> preset_breakpoints() {
    std::vector<double> bp{1.0 / 6.0 - 1.0 / 36.0, 1.0 / 6.0 + 1.0 / 36.0,
                           3.0 / 6.0 - 2.0 / 36.0, 3.0 / 6.0 + 2.0 / 36.0,
                           5.0 / 6.0 - 3.0 / 36.0, 5.0 / 6.0 + 3.0 / 36.0};
    return bp;
}

ModelSpec model_preset(ModelPreset preset) {
    std::vector<Segment> levels{{0, 0}, {1, 0}, {0, 0}, {1, 0}, {0, 0}, {1, 0}, {0, 0}};
    if (preset == ModelPreset::Model2) levels[1].intercept = 2.0;
    MeanSpec mean(preset_breakpoints(), std::move(levels));

    if (preset == ModelPreset::Model3) {
        return {std::move(mean), MA2LS{PowerCoefficients{0.05, 2.0}, 0.3}};
    }
    LinearLS lin;
    lin.coefficients = PowerCoefficients{0.0, 2.0};
    lin.first = 1;
    lin.order = default_truncation(lin.coefficients);
    lin.innovation_variance = 1.0;
    return {std::move(mean), lin};
}

ModelPreset preset_from_name(std::string_view name) {
    if (name == "model1") return ModelPreset::Model1;
    if (name == "model2") return ModelPreset::Model2;
    if (name == "model3") return ModelPreset::Model3;
    throw ConfigError("unknown model preset '" + std::string(name) + "'");
}

std::string_view preset_name(ModelPreset preset) noexcept {
    switch (preset) {
        case ModelPreset::Model2:
            return "model2";
        case ModelPreset::Model3:
            return "model3";
        case ModelPreset::Model1:
        default:
            return "model1";
    }
}

}  // namespace tvacov
