#include "tvacov/study.hpp"

#include "tvacov/errors.hpp"
#include "tvacov/parallel.hpp"
#include "tvacov/rng.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

namespace tvacov {

namespace {

constexpr std::uint64_t kReplicationStream = 0x5245504cULL;

double mean_width(const BandResult& band) {
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < band.center.t.size(); ++i) {
        const double t = band.center.t[i];
        if (t < band.domain_lo - 1e-12 || t > band.domain_hi + 1e-12) continue;
        sum += band.upper[i] - band.lower[i];
        ++count;
    }
    return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

StudyReport run(const StudyConfig& cfg, bool naive) {
    validate(cfg);
    const auto start = std::chrono::steady_clock::now();

    StudyReport report;
    report.config = cfg;
    report.naive = naive;
    report.replications.resize(cfg.replications);

    QuantileCache cache;
    parallel_for(cfg.replications, [&](std::size_t r) {
        report.replications[r] = run_replication(cfg, r, naive, &cache);
    });

    for (std::size_t k : cfg.analysis.lags) {
        TargetSummary s;
        s.lag = k;
        report.targets.push_back(s);
    }
    for (const ReplicationOutcome& rep : report.replications) {
        if (rep.failed) {
            ++report.failures;
            continue;
        }
        for (std::size_t j = 0; j < rep.lags.size(); ++j) {
            TargetSummary& s = report.targets[j];
            ++s.valid;
            if (rep.lags[j].covered) ++s.covered;
            s.mean_width += rep.lags[j].mean_width;
        }
    }
    for (TargetSummary& s : report.targets) {
        if (s.valid > 0) {
            s.coverage = static_cast<double>(s.covered) / static_cast<double>(s.valid);
            s.mean_width /= static_cast<double>(s.valid);
        }
    }
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const double limit = kMaxFailureFraction * static_cast<double>(cfg.replications);
    if (static_cast<double>(report.failures) > limit) {
        std::ostringstream os;
        os << report.failures << " of " << cfg.replications << " replications failed";
        for (const ReplicationOutcome& rep : report.replications) {
            if (rep.failed) {
                os << " (first: replication " << rep.index << ": " << rep.message << ")";
                break;
            }
        }
        throw NumericError(os.str());
    }
    return report;
}

}  // namespace

std::string_view mean_variant_name(MeanVariant v) noexcept {
    switch (v) {
        case MeanVariant::Zero: return "zero";
        case MeanVariant::Linear: return "linear";
        default: return "preset";
    }
}

MeanVariant mean_variant_from_name(std::string_view name) {
    if (name == "preset") return MeanVariant::Preset;
    if (name == "zero") return MeanVariant::Zero;
    if (name == "linear") return MeanVariant::Linear;
    throw ConfigError("unknown mean variant '" + std::string(name) + "'");
}

void validate(const StudyConfig& cfg) {
    if (cfg.replications < 1) throw ConfigError("study needs at least one replication");
    if (cfg.n < 50) throw ConfigError("study needs n >= 50");
    if (cfg.analysis.bandwidth_grid.empty()) throw ConfigError("bandwidth grid is empty");
    for (double b : cfg.analysis.bandwidth_grid) {
        if (!(b > 0.0 && b < 0.5)) throw ConfigError("bandwidth grid must lie in (0, 1/2)");
    }
}

ModelSpec study_model(const StudyConfig& cfg) {
    ModelSpec spec = model_preset(cfg.model);
    if (cfg.mean == MeanVariant::Zero) spec.mean = MeanSpec::constant(0.0);
    if (cfg.mean == MeanVariant::Linear) spec.mean = MeanSpec({}, {Segment{0.0, 1.0}});
    return spec;
}

std::uint64_t replication_seed(std::uint64_t root, std::size_t r) noexcept {
    return derive_seed(root, kReplicationStream, r);
}

std::uint64_t study_bootstrap_seed(std::uint64_t root) noexcept {
    return derive_seed(root, stream::kBootstrap);
}

const TargetSummary& StudyReport::target(std::size_t lag) const {
    for (const TargetSummary& s : targets) {
        if (s.lag == lag) return s;
    }
    throw ConfigError("lag not part of this study");
}

ReplicationOutcome run_replication(const StudyConfig& cfg, std::size_t r, bool naive,
                                   QuantileCache* cache) {
    ReplicationOutcome out;
    out.index = r;
    out.seed = replication_seed(cfg.seed, r);
    const ModelSpec spec = study_model(cfg);
    AnalysisOptions o = cfg.analysis;
    o.bootstrap_seed = study_bootstrap_seed(cfg.seed);
    o.cache = cache;
    try {
        const TimeSeries y = generate(spec.mean, spec.error, cfg.n, out.seed);
        const AnalysisResult res = naive ? analyze_naive(y, o) : analyze(y, o);
        out.h = res.h;
        for (const LagResult& lr : res.lags) {
            LagOutcome lo;
            lo.lag = lr.lag;
            lo.bandwidth = lr.estimate.bandwidth;
            lo.m = lr.m;
            lo.tau = lr.tau;
            lo.critical = lr.band.critical;
            lo.mean_width = mean_width(lr.band);
            lo.covered = coverage_check(lr.band, truth_curve(spec.error, lr.lag, lr.band.center.t));
            out.lags.push_back(lo);
        }
    } catch (const NumericError& e) {
        out.failed = true;
        out.message = e.what();
        out.lags.clear();
    }
    return out;
}

StudyReport run_study(const StudyConfig& cfg) { return run(cfg, false); }

StudyReport run_naive_study(const StudyConfig& cfg) { return run(cfg, true); }

}  // namespace tvacov
