#pragma once

#include "tvacov/pipeline.hpp"
#include "tvacov/procgen.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tvacov {

/// Trend used by a study: the preset's, none, or a smooth line without jumps.
enum class MeanVariant { Preset, Zero, Linear };

[[nodiscard]] std::string_view mean_variant_name(MeanVariant v) noexcept;
[[nodiscard]] MeanVariant mean_variant_from_name(std::string_view name);

inline constexpr std::size_t kDeskReplications = 200;
inline constexpr std::size_t kDeskDraws = 2000;
inline constexpr std::size_t kFullReplications = 500;
inline constexpr std::size_t kFullDraws = 10000;
/// Largest tolerated fraction of failed replications.
inline constexpr double kMaxFailureFraction = 0.05;

struct StudyConfig {
    ModelPreset model = ModelPreset::Model1;
    MeanVariant mean = MeanVariant::Preset;
    std::size_t n = 400;
    std::size_t replications = kDeskReplications;
    std::uint64_t seed = 1;
    /// Tuning, band and lag settings; draws default to the desk-scale value.
    AnalysisOptions analysis = [] {
        AnalysisOptions o;
        o.draws = kDeskDraws;
        return o;
    }();
};

/// Throws ConfigError unless R >= 1, n >= 50 and the bandwidth grid lies in (0, 1/2).
void validate(const StudyConfig& cfg);

[[nodiscard]] ModelSpec study_model(const StudyConfig& cfg);

/// Seed of the series in replication r.
[[nodiscard]] std::uint64_t replication_seed(std::uint64_t root, std::size_t r) noexcept;
/// Seed of the bootstrap draws; shared by every replication so quantiles can be reused.
[[nodiscard]] std::uint64_t study_bootstrap_seed(std::uint64_t root) noexcept;

struct LagOutcome {
    std::size_t lag = 0;
    bool covered = false;
    double bandwidth = 0.0;
    std::size_t m = 0;
    double tau = 0.0;
    double critical = 0.0;
    /// Mean of upper - lower over the band domain.
    double mean_width = 0.0;
};

struct ReplicationOutcome {
    std::size_t index = 0;
    std::uint64_t seed = 0;
    bool failed = false;
    std::string message;
    std::size_t h = 0;
    std::vector<LagOutcome> lags;
};

struct TargetSummary {
    std::size_t lag = 0;
    std::size_t covered = 0;
    std::size_t valid = 0;
    double coverage = 0.0;
    double mean_width = 0.0;
};

struct StudyReport {
    StudyConfig config;
    bool naive = false;
    std::vector<TargetSummary> targets;
    std::vector<ReplicationOutcome> replications;
    std::size_t failures = 0;
    double seconds = 0.0;

    [[nodiscard]] const TargetSummary& target(std::size_t lag) const;
};

/// Replications run in parallel, each on its own derived seed. Replications
/// that hit a numeric error are excluded and counted; more than 5% failed
/// raises NumericError.
[[nodiscard]] StudyReport run_study(const StudyConfig& cfg);
[[nodiscard]] StudyReport run_naive_study(const StudyConfig& cfg);

/// One replication on its own, as run_study would do it.
[[nodiscard]] ReplicationOutcome run_replication(const StudyConfig& cfg, std::size_t r, bool naive,
                                                 QuantileCache* cache = nullptr);

}  // namespace tvacov
