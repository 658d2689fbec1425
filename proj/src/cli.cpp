#include "tvacov/cli.hpp"

#include "tvacov/parallel.hpp"
#include "tvacov/rng.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <type_traits>

namespace tvacov {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

bool parse_double(std::string_view s, double& out) {
    s = trim(s);
    if (s.empty()) return false;
    if (s.front() == '+') s.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view want) {
    std::ostringstream os;
    os << "invalid value '" << value << "' for " << key << " (expected " << want << ")";
    throw ConfigError(os.str());
}

double to_double(std::string_view key, std::string_view value) {
    double v = 0.0;
    if (!parse_double(value, v) || !std::isfinite(v)) bad_value(key, value, "a number");
    return v;
}

std::uint64_t to_u64(std::string_view key, std::string_view value) {
    value = trim(value);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (value.empty() || ec != std::errc{} || ptr != value.data() + value.size()) {
        bad_value(key, value, "a non-negative integer");
    }
    return v;
}

std::size_t to_size(std::string_view key, std::string_view value) {
    return static_cast<std::size_t>(to_u64(key, value));
}

bool to_bool(std::string_view key, std::string_view value) {
    value = trim(value);
    if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
    if (value == "false" || value == "0" || value == "no" || value == "off") return false;
    bad_value(key, value, "true or false");
}

// "v" fixes every lag, "k:v" one lag; entries are comma separated; empty clears.
template <typename T, typename Parse>
LagOverride<T> to_override(std::string_view key, std::string_view value, Parse parse) {
    LagOverride<T> out;
    value = trim(value);
    if (value.empty() || value == "auto") return out;
    for (std::string_view item : split(value, ',')) {
        const std::size_t colon = item.find(':');
        if (colon == std::string_view::npos) {
            out.all = parse(key, item);
        } else {
            out.by_lag[to_size(key, item.substr(0, colon))] = parse(key, item.substr(colon + 1));
        }
    }
    return out;
}

template <typename T, typename Format>
std::string format_override(const LagOverride<T>& o, Format fmt) {
    std::string s;
    if (o.all) s = fmt(*o.all);
    for (const auto& [k, v] : o.by_lag) {
        if (!s.empty()) s += ',';
        s += std::to_string(k) + ':' + fmt(v);
    }
    return s;
}

std::string format_size(std::size_t v) { return std::to_string(v); }

std::string format_lags(const std::vector<std::size_t>& lags) {
    std::string s;
    for (std::size_t k : lags) {
        if (!s.empty()) s += ',';
        s += std::to_string(k);
    }
    return s;
}

}  // namespace

std::string_view command_name(Command c) noexcept {
    switch (c) {
        case Command::Study: return "study";
        case Command::NaiveStudy: return "naive-study";
        case Command::Tune: return "tune";
        case Command::LagSelect: return "lag-select";
        default: return "estimate";
    }
}

Command command_from_name(std::string_view name) {
    for (Command c : {Command::Estimate, Command::Study, Command::NaiveStudy, Command::Tune,
                      Command::LagSelect}) {
        if (command_name(c) == name) return c;
    }
    throw ConfigError("unknown command '" + std::string(name) + "'");
}

const std::vector<std::string>& setting_keys() {
    static const std::vector<std::string> keys{
        "command", "input", "model",   "mean",          "n",   "lags", "alpha",
        "draws",   "seed",  "method",  "kernel",        "bandwidth", "h",  "h0",
        "lag-threshold", "m", "tau",   "grid-points",   "reps", "full", "inflation",
        "out",     "threads"};
    return keys;
}

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value) {
    value = trim(value);
    if (key == "command") {
        cfg.command = command_from_name(value);
    } else if (key == "input") {
        cfg.input = std::string(value);
    } else if (key == "model") {
        if (value.empty()) cfg.model.reset();
        else cfg.model = preset_from_name(value);
    } else if (key == "mean") {
        cfg.mean = mean_variant_from_name(value);
    } else if (key == "n") {
        cfg.n = to_size(key, value);
    } else if (key == "lags") {
        cfg.lags.clear();
        for (std::string_view item : split(value, ',')) cfg.lags.push_back(to_size(key, item));
        std::sort(cfg.lags.begin(), cfg.lags.end());
        cfg.lags.erase(std::unique(cfg.lags.begin(), cfg.lags.end()), cfg.lags.end());
    } else if (key == "alpha") {
        cfg.alpha = to_double(key, value);
        if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) bad_value(key, value, "a level in (0, 1)");
    } else if (key == "draws") {
        if (value.empty() || value == "auto") cfg.draws.reset();
        else cfg.draws = to_size(key, value);
    } else if (key == "seed") {
        cfg.seed = to_u64(key, value);
    } else if (key == "method") {
        cfg.method = band_method_from_name(value);
    } else if (key == "kernel") {
        cfg.kernel = kernel_from_name(value).type();
    } else if (key == "bandwidth") {
        cfg.bandwidth = to_override<double>(key, value, to_double);
    } else if (key == "h") {
        if (value.empty() || value == "auto") cfg.h.reset();
        else cfg.h = to_size(key, value);
    } else if (key == "h0") {
        cfg.h0 = to_size(key, value);
    } else if (key == "lag-threshold") {
        if (value == "inf") cfg.lag_threshold = std::numeric_limits<double>::infinity();
        else cfg.lag_threshold = to_double(key, value);
    } else if (key == "m") {
        cfg.block = to_override<std::size_t>(key, value, to_size);
    } else if (key == "tau") {
        cfg.tau = to_override<double>(key, value, to_double);
    } else if (key == "grid-points") {
        cfg.grid_points = to_size(key, value);
    } else if (key == "reps") {
        if (value.empty() || value == "auto") cfg.reps.reset();
        else cfg.reps = to_size(key, value);
    } else if (key == "full") {
        cfg.full = to_bool(key, value);
    } else if (key == "inflation") {
        cfg.inflation = to_double(key, value);
    } else if (key == "out") {
        cfg.out = std::string(value);
    } else if (key == "threads") {
        cfg.threads = static_cast<int>(to_size(key, value));
    } else {
        throw ConfigError("unknown setting '" + std::string(key) + "'");
    }
}

std::vector<std::pair<std::string, std::string>> settings(const RunConfig& cfg) {
    std::vector<std::pair<std::string, std::string>> s;
    s.emplace_back("command", command_name(cfg.command));
    s.emplace_back("input", cfg.input);
    s.emplace_back("model", cfg.model ? std::string(preset_name(*cfg.model)) : "");
    s.emplace_back("mean", mean_variant_name(cfg.mean));
    s.emplace_back("n", std::to_string(cfg.n));
    s.emplace_back("lags", format_lags(cfg.lags));
    s.emplace_back("alpha", format_double(cfg.alpha));
    s.emplace_back("draws", cfg.draws ? std::to_string(*cfg.draws) : "auto");
    s.emplace_back("seed", std::to_string(cfg.seed));
    s.emplace_back("method", band_method_name(cfg.method));
    s.emplace_back("kernel", Kernel(cfg.kernel).name());
    s.emplace_back("bandwidth", format_override(cfg.bandwidth, format_double));
    s.emplace_back("h", cfg.h ? std::to_string(*cfg.h) : "auto");
    s.emplace_back("h0", std::to_string(cfg.h0));
    s.emplace_back("lag-threshold",
                   std::isinf(cfg.lag_threshold) ? "inf" : format_double(cfg.lag_threshold));
    s.emplace_back("m", format_override(cfg.block, format_size));
    s.emplace_back("tau", format_override(cfg.tau, format_double));
    s.emplace_back("grid-points", std::to_string(cfg.grid_points));
    s.emplace_back("reps", cfg.reps ? std::to_string(*cfg.reps) : "auto");
    s.emplace_back("full", cfg.full ? "true" : "false");
    s.emplace_back("inflation", format_double(cfg.inflation));
    return s;
}

void read_config(std::istream& in, RunConfig& cfg) {
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        std::string_view v = trim(line);
        if (v.empty() || v.front() == '#') continue;
        const std::size_t eq = v.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError("config line " + std::to_string(number) + ": expected key=value", number);
        }
        const std::string_view key = trim(v.substr(0, eq));
        if (key.empty()) {
            throw ParseError("config line " + std::to_string(number) + ": empty key", number);
        }
        if (key.starts_with("resolved.") || key == "version") continue;
        try {
            apply_setting(cfg, key, v.substr(eq + 1));
        } catch (const ConfigError& e) {
            throw ConfigError("config line " + std::to_string(number) + ": " + e.what());
        }
    }
}

void read_config_file(const std::string& path, RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    read_config(in, cfg);
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

TimeSeries ingest_csv(std::istream& in) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();

    std::vector<double> values;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t number = i + 1;
        const std::string_view row = trim(lines[i]);
        if (row.empty()) throw ParseError("line " + std::to_string(number) + ": missing value", number);
        const std::vector<std::string_view> fields = split(row, ',');
        const std::string_view field = fields.size() >= 2 ? fields[1] : fields[0];
        double v = 0.0;
        const bool ok = parse_double(field, v);
        if (!ok && i == 0) continue;  // header
        if (!ok || !std::isfinite(v)) {
            std::ostringstream os;
            os << "line " << number << ": value '" << field << "' is not a finite number";
            throw ParseError(os.str(), number);
        }
        values.push_back(v);
    }
    if (values.size() < 2) throw ParseError("input has fewer than two values", 0);
    return TimeSeries(std::move(values));
}

TimeSeries ingest_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open input '" + path + "'");
    return ingest_csv(in);
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<const std::vector<double>*>& columns) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path + "'");
    for (std::size_t j = 0; j < header.size(); ++j) out << (j ? "," : "") << header[j];
    out << '\n';
    const std::size_t rows = columns.empty() ? 0 : columns.front()->size();
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < columns.size(); ++j) {
            out << (j ? "," : "") << format_double((*columns[j])[i]);
        }
        out << '\n';
    }
}

AnalysisOptions analysis_options(const RunConfig& cfg) {
    AnalysisOptions o;
    o.kernel = Kernel(cfg.kernel);
    o.lags = cfg.lags;
    o.alpha = cfg.alpha;
    o.method = cfg.method;
    o.draws = cfg.draws.value_or(kDefaultBootstrapDraws);
    o.bootstrap_seed = derive_seed(cfg.seed, stream::kBootstrap);
    o.inflation = cfg.inflation;
    o.h = cfg.h;
    o.h0 = cfg.h0;
    o.lag_threshold = cfg.lag_threshold;
    o.bandwidth = cfg.bandwidth;
    o.block = cfg.block;
    o.tau = cfg.tau;
    o.grid_points = cfg.grid_points;
    return o;
}

StudyConfig study_config(const RunConfig& cfg) {
    if (!cfg.model) throw ConfigError("studies need --model");
    if (!cfg.input.empty()) throw ConfigError("studies simulate their data; drop --input");
    StudyConfig s;
    s.model = *cfg.model;
    s.mean = cfg.mean;
    s.n = cfg.n;
    s.seed = cfg.seed;
    s.replications = cfg.reps.value_or(cfg.full ? kFullReplications : kDeskReplications);
    s.analysis = analysis_options(cfg);
    s.analysis.draws = cfg.draws.value_or(cfg.full ? kFullDraws : kDeskDraws);
    return s;
}

namespace {

namespace fs = std::filesystem;

std::string out_path(const RunConfig& cfg, const std::string& name) {
    return (fs::path(cfg.out) / name).string();
}

class Manifest {
public:
    explicit Manifest(const RunConfig& cfg) : entries_(settings(cfg)) {
        entries_.insert(entries_.begin(), {"version", std::string(kVersion)});
    }
    void resolved(const std::string& key, const std::string& value) {
        entries_.emplace_back("resolved." + key, value);
    }
    void write(const std::string& path) const {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw ConfigError("cannot write '" + path + "'");
        for (const auto& [k, v] : entries_) out << k << '=' << v << '\n';
    }

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

TimeSeries load_series(const RunConfig& cfg, std::ostream& log) {
    const bool has_input = !cfg.input.empty();
    if (has_input == cfg.model.has_value()) {
        throw ConfigError("give exactly one of --input and --model");
    }
    if (has_input) return ingest_csv_file(cfg.input);
    if (cfg.n < 2) throw ConfigError("--n must be at least 2");
    StudyConfig s;
    s.model = *cfg.model;
    s.mean = cfg.mean;
    const ModelSpec spec = study_model(s);
    log << "simulated " << preset_name(*cfg.model) << " with n=" << cfg.n << " seed=" << cfg.seed << '\n';
    return generate(spec.mean, spec.error, cfg.n, cfg.seed);
}

void require_length(const TimeSeries& y) {
    if (y.size() < kMinEstimateLength) {
        std::ostringstream os;
        os << "series has " << y.size() << " values; at least " << kMinEstimateLength << " are needed";
        throw ConfigError(os.str());
    }
}

template <typename T>
std::string join(const std::vector<T>& v) {
    std::string s;
    for (const T& x : v) {
        if (!s.empty()) s += ',';
        if constexpr (std::is_floating_point_v<T>) {
            s += format_double(x);
        } else {
            s += std::to_string(x);
        }
    }
    return s;
}

void record_tuning(Manifest& man, const AnalysisOptions& o, const AnalysisResult& res, bool naive) {
    man.resolved("bandwidth_grid", join(o.bandwidth_grid));
    man.resolved("tau_grid", join(o.tau_grid));
    if (!naive) {
        man.resolved("h", std::to_string(res.h));
        man.resolved("h_selected", std::to_string(res.h_selected));
    }
    for (const LagResult& lr : res.lags) {
        const std::string p = "lag" + std::to_string(lr.lag) + ".";
        man.resolved(p + "bandwidth", format_double(lr.estimate.bandwidth));
        man.resolved(p + "m", std::to_string(lr.m));
        man.resolved(p + "tau", format_double(lr.tau));
        man.resolved(p + "grid_size", std::to_string(lr.estimate.curve.size()));
        if (lr.min_volatility) man.resolved(p + "block_grid", join(lr.min_volatility->m_grid));
        if (!lr.band.lower.empty()) {
            man.resolved(p + "critical", format_double(lr.band.critical));
            man.resolved(p + "half_width_factor", format_double(lr.band.half_width_factor));
        }
        if (lr.estimate.negative_values) man.resolved(p + "negative_values", "true");
        if (lr.sigma_clamped) man.resolved(p + "sigma_clamped", "true");
    }
}

void run_estimate(const RunConfig& cfg, std::ostream& log) {
    const TimeSeries y = load_series(cfg, log);
    require_length(y);
    const AnalysisOptions o = analysis_options(cfg);
    const AnalysisResult res = analyze(y, o);

    Manifest man(cfg);
    man.resolved("series_length", std::to_string(y.size()));
    man.resolved("bootstrap_seed", std::to_string(o.bootstrap_seed));
    man.resolved("draws", std::to_string(o.draws));
    record_tuning(man, o, res, false);

    log << "h=" << res.h << " (selected " << res.h_selected << ")\n";
    for (const LagResult& lr : res.lags) {
        const std::string k = std::to_string(lr.lag);
        write_csv(out_path(cfg, "gamma" + k + ".csv"), {"t", "center", "lower", "upper"},
                  {&lr.estimate.curve.t, &lr.estimate.curve.value, &lr.band.lower, &lr.band.upper});
        write_csv(out_path(cfg, "sigma" + k + ".csv"), {"t", "sigma"}, {&lr.sigma.t, &lr.sigma.value});
        bool zero_inside = true;
        for (std::size_t i = 0; i < lr.band.lower.size(); ++i) {
            if (lr.band.lower[i] > 0.0 || lr.band.upper[i] < 0.0) zero_inside = false;
        }
        log << "lag " << lr.lag << ": b=" << lr.estimate.bandwidth << " m=" << lr.m << " tau=" << lr.tau
            << " critical=" << lr.band.critical << " zero_inside_band=" << (zero_inside ? "yes" : "no")
            << '\n';
    }
    man.write(out_path(cfg, "manifest.txt"));
}

void run_study_command(const RunConfig& cfg, std::ostream& log, bool naive) {
    const StudyConfig sc = study_config(cfg);
    const StudyReport rep = naive ? run_naive_study(sc) : run_study(sc);

    std::ofstream table(out_path(cfg, "report.csv"), std::ios::binary);
    if (!table) throw ConfigError("cannot write report.csv");
    table << "target,lag,covered,valid,coverage,mean_width\n";
    for (const TargetSummary& s : rep.targets) {
        table << "gamma" << s.lag << ',' << s.lag << ',' << s.covered << ',' << s.valid << ','
              << format_double(s.coverage) << ',' << format_double(s.mean_width) << '\n';
    }

    std::ofstream reps(out_path(cfg, "replications.csv"), std::ios::binary);
    if (!reps) throw ConfigError("cannot write replications.csv");
    reps << "replication,seed,failed,h,lag,covered,bandwidth,m,tau,critical,mean_width\n";
    for (const ReplicationOutcome& r : rep.replications) {
        if (r.failed) {
            reps << r.index << ',' << r.seed << ",1,,,,,,,,\n";
            continue;
        }
        for (const LagOutcome& l : r.lags) {
            reps << r.index << ',' << r.seed << ",0," << r.h << ',' << l.lag << ',' << (l.covered ? 1 : 0)
                 << ',' << format_double(l.bandwidth) << ',' << l.m << ',' << format_double(l.tau) << ','
                 << format_double(l.critical) << ',' << format_double(l.mean_width) << '\n';
        }
    }

    Manifest man(cfg);
    man.resolved("study", naive ? "naive" : "difference");
    man.resolved("replications", std::to_string(sc.replications));
    man.resolved("draws", std::to_string(sc.analysis.draws));
    man.resolved("bootstrap_seed", std::to_string(study_bootstrap_seed(sc.seed)));
    man.resolved("failures", std::to_string(rep.failures));
    for (const TargetSummary& s : rep.targets) {
        const std::string p = "gamma" + std::to_string(s.lag) + ".";
        man.resolved(p + "covered", std::to_string(s.covered));
        man.resolved(p + "valid", std::to_string(s.valid));
        man.resolved(p + "coverage", format_double(s.coverage));
        man.resolved(p + "mean_width", format_double(s.mean_width));
    }
    man.write(out_path(cfg, "report.txt"));
    Manifest(cfg).write(out_path(cfg, "manifest.txt"));

    log << (naive ? "naive study " : "study ") << preset_name(sc.model) << " n=" << sc.n
        << " R=" << sc.replications << " B=" << sc.analysis.draws << " failures=" << rep.failures << '\n';
    for (const TargetSummary& s : rep.targets) {
        log << "  gamma" << s.lag << " coverage " << s.coverage << " (" << s.covered << "/" << s.valid
            << ") mean width " << s.mean_width << '\n';
    }
    log << "  elapsed " << rep.seconds << " s\n";
}

void run_tune(const RunConfig& cfg, std::ostream& log) {
    const TimeSeries y = load_series(cfg, log);
    require_length(y);
    AnalysisOptions o = analysis_options(cfg);
    o.bands = false;
    const AnalysisResult res = analyze(y, o);
    Manifest man(cfg);
    man.resolved("series_length", std::to_string(y.size()));
    record_tuning(man, o, res, false);
    for (const LagResult& lr : res.lags) {
        const std::string k = std::to_string(lr.lag);
        if (lr.gcv) {
            write_csv(out_path(cfg, "gcv" + k + ".csv"), {"bandwidth", "score"}, {&lr.gcv->grid, &lr.gcv->score});
        }
        if (lr.min_volatility) {
            const MinVolResult& mv = *lr.min_volatility;
            std::vector<double> ms, taus;
            for (std::size_t i = 0; i < mv.m_grid.size(); ++i) {
                for (std::size_t j = 0; j < mv.tau_grid.size(); ++j) {
                    ms.push_back(static_cast<double>(mv.m_grid[i]));
                    taus.push_back(mv.tau_grid[j]);
                }
            }
            write_csv(out_path(cfg, "minvol" + k + ".csv"), {"m", "tau", "ise"}, {&ms, &taus, &mv.ise});
        }
        log << "lag " << lr.lag << ": b=" << lr.estimate.bandwidth << " m=" << lr.m << " tau=" << lr.tau << '\n';
    }
    log << "h=" << res.h << " (selected " << res.h_selected << ")\n";
    man.write(out_path(cfg, "manifest.txt"));
}

void run_lag_select(const RunConfig& cfg, std::ostream& log) {
    const TimeSeries y = load_series(cfg, log);
    require_length(y);
    LagSelectOptions lo;
    lo.h0 = cfg.h0;
    lo.threshold = cfg.lag_threshold;
    lo.kernel = Kernel(cfg.kernel);
    const LagSelection sel = select_lag(y, lo);

    std::vector<double> local(sel.local.begin(), sel.local.end());
    std::vector<std::string> header{"t", "hstar"};
    std::vector<const std::vector<double>*> cols{&sel.grid, &local};
    for (const LagProfile& p : sel.profile) {
        header.push_back("beta" + std::to_string(p.lag));
        cols.push_back(&p.beta);
    }
    write_csv(out_path(cfg, "lag_select.csv"), header, cols);

    Manifest man(cfg);
    man.resolved("series_length", std::to_string(y.size()));
    man.resolved("h", std::to_string(sel.h));
    man.resolved("h0", std::to_string(sel.h0));
    man.resolved("tail_scale", format_double(sel.tail_scale));
    for (const LagProfile& p : sel.profile) {
        man.resolved("lag" + std::to_string(p.lag) + ".bandwidth", format_double(p.bandwidth));
    }
    man.write(out_path(cfg, "manifest.txt"));
    log << "h=" << sel.h << " (h0=" << sel.h0 << ")\n";
}

}  // namespace

void run(const RunConfig& cfg, std::ostream& log) {
    if (cfg.threads > 0) set_threads(cfg.threads);
    std::error_code ec;
    fs::create_directories(cfg.out, ec);
    if (ec) throw ConfigError("cannot create output directory '" + cfg.out + "': " + ec.message());
    switch (cfg.command) {
        case Command::Estimate: run_estimate(cfg, log); break;
        case Command::Study: run_study_command(cfg, log, false); break;
        case Command::NaiveStudy: run_study_command(cfg, log, true); break;
        case Command::Tune: run_tune(cfg, log); break;
        case Command::LagSelect: run_lag_select(cfg, log); break;
    }
}

int exit_code(ErrorCategory category) noexcept {
    switch (category) {
        case ErrorCategory::Config: return 2;
        case ErrorCategory::Parse: return 3;
        case ErrorCategory::Numeric: return 4;
        case ErrorCategory::Tuning: return 5;
    }
    return 1;
}

}  // namespace tvacov
