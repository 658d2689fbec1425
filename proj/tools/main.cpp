#include "tvacov/cli.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>

namespace {

const std::map<std::string, std::string>& help_text() {
    static const std::map<std::string, std::string> h{
        {"input", "CSV with one value column, or index/date then value"},
        {"model", "simulate a preset instead: model1 | model2 | model3"},
        {"mean", "trend for simulated data: preset | zero | linear"},
        {"n", "length of the simulated series"},
        {"lags", "autocovariance lags, e.g. 0,1"},
        {"alpha", "1 - confidence level"},
        {"draws", "bootstrap draws B"},
        {"seed", "root seed"},
        {"method", "band method: bootstrap | gumbel"},
        {"kernel", "epanechnikov | biweight"},
        {"bandwidth", "fixed bandwidth: b or lag:b,... (default GCV)"},
        {"h", "difference lag (default: scan)"},
        {"h0", "largest lag in the scan (0 = default rule)"},
        {"lag-threshold", "scan threshold in tail-scale units"},
        {"m", "block size: m or lag:m,... (default minimum volatility)"},
        {"tau", "LRV bandwidth: tau or lag:tau,... (default minimum volatility)"},
        {"grid-points", "band grid resolution (0 = data grid)"},
        {"reps", "study replications"},
        {"full", "full-scale study (R=500, B=10000)"},
        {"inflation", "multiply the critical value"},
        {"out", "output directory"},
        {"threads", "OpenMP threads (0 = runtime default)"},
    };
    return h;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Time-varying variance and autocovariance with simultaneous confidence bands"};
    app.set_help_flag("--help", "Print this help and exit");
    app.set_version_flag("--version", std::string(tvacov::kVersion));

    std::string command;
    std::string config_path;
    app.add_option("command", command, "estimate | study | naive-study | tune | lag-select");
    app.add_option("--config", config_path, "key=value file; flags given here override it");

    std::map<std::string, std::string> raw;
    std::map<std::string, CLI::Option*> opts;
    for (const std::string& key : tvacov::setting_keys()) {
        if (key == "command") continue;
        const std::string& help = help_text().at(key);
        if (key == "full") {
            opts[key] = app.add_flag_callback("--full", [&raw] { raw["full"] = "true"; }, help);
        } else {
            opts[key] = app.add_option("--" + key, raw[key], help);
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : tvacov::exit_code(tvacov::ErrorCategory::Config);
    }

    try {
        tvacov::RunConfig cfg;
        if (!config_path.empty()) tvacov::read_config_file(config_path, cfg);
        if (!command.empty()) tvacov::apply_setting(cfg, "command", command);
        for (const std::string& key : tvacov::setting_keys()) {
            if (key == "command" || key == "full") continue;
            if (opts[key]->count() > 0) tvacov::apply_setting(cfg, key, raw[key]);
        }
        if (opts["full"]->count() > 0) tvacov::apply_setting(cfg, "full", "true");
        if (command.empty() && config_path.empty()) {
            std::cerr << app.help();
            return tvacov::exit_code(tvacov::ErrorCategory::Config);
        }
        tvacov::run(cfg, std::cout);
    } catch (const tvacov::Error& e) {
        std::cerr << "error (" << [&] {
            switch (e.category()) {
                case tvacov::ErrorCategory::Config: return "config";
                case tvacov::ErrorCategory::Parse: return "parse";
                case tvacov::ErrorCategory::Numeric: return "numeric";
                default: return "tuning";
            }
        }() << "): " << e.what() << '\n';
        return tvacov::exit_code(e.category());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
