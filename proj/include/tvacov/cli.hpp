#pragma once

#include "tvacov/errors.hpp"
#include "tvacov/pipeline.hpp"
#include "tvacov/procgen.hpp"
#include "tvacov/study.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tvacov {

inline constexpr std::string_view kVersion = "0.1.0";
inline constexpr std::size_t kMinEstimateLength = 50;

enum class Command { Estimate, Study, NaiveStudy, Tune, LagSelect };

[[nodiscard]] std::string_view command_name(Command c) noexcept;
[[nodiscard]] Command command_from_name(std::string_view name);

struct RunConfig {
    Command command = Command::Estimate;
    std::string input;
    std::optional<ModelPreset> model;
    MeanVariant mean = MeanVariant::Preset;
    std::size_t n = 400;
    std::string out = "out";
    std::vector<std::size_t> lags{0, 1};
    double alpha = 0.05;
    /// Unset: 10^4 for estimate, the desk or full value for studies.
    std::optional<std::size_t> draws;
    std::uint64_t seed = 1;
    BandMethod method = BandMethod::Bootstrap;
    KernelType kernel = KernelType::Epanechnikov;
    LagOverride<double> bandwidth;
    std::optional<std::size_t> h;
    std::size_t h0 = 0;
    double lag_threshold = 3.0;
    LagOverride<std::size_t> block;
    LagOverride<double> tau;
    std::size_t grid_points = 0;
    std::optional<std::size_t> reps;
    bool full = false;
    double inflation = 1.0;
    int threads = 0;
};

/// Every key accepted by apply_setting, in manifest order. Each is also a
/// command-line flag (--key).
[[nodiscard]] const std::vector<std::string>& setting_keys();

/// Sets one field from its text form; throws ConfigError on unknown keys or bad values.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);

/// The text form of every output-relevant setting (threads and out are left out).
[[nodiscard]] std::vector<std::pair<std::string, std::string>> settings(const RunConfig& cfg);

/// Flat key=value text; '#' starts a comment, blank lines are skipped, keys
/// starting with "resolved." are informational and ignored. Throws ParseError
/// with the line number on malformed lines.
void read_config(std::istream& in, RunConfig& cfg);
void read_config_file(const std::string& path, RunConfig& cfg);

/// Shortest text that round-trips: printf "%.17g".
[[nodiscard]] std::string format_double(double v);

/// Header-optional CSV: a single value column, or index/date first and the
/// value in the second column. Throws ParseError naming the line for
/// malformed or missing values.
[[nodiscard]] TimeSeries ingest_csv(std::istream& in);
[[nodiscard]] TimeSeries ingest_csv_file(const std::string& path);

/// Writes a header row and the columns (all the same length) at 17 significant digits.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<const std::vector<double>*>& columns);

[[nodiscard]] AnalysisOptions analysis_options(const RunConfig& cfg);
[[nodiscard]] StudyConfig study_config(const RunConfig& cfg);

/// Executes the command, writing files under cfg.out and a summary to `log`.
void run(const RunConfig& cfg, std::ostream& log);

/// 0 ok, 2 config, 3 parse, 4 numeric, 5 tuning.
[[nodiscard]] int exit_code(ErrorCategory category) noexcept;

}  // namespace tvacov
