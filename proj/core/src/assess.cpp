#include "qbs/assess.hpp"

#include "qbs/error.hpp"
#include "qbs/rng.hpp"
#include "qbs/version.hpp"

namespace qbs {

namespace {

constexpr std::uint64_t kSampleStream = 0x73616d706c65ULL;     // "sample"
constexpr std::uint64_t kReplicateStream = 0x7265706c6963ULL;  // "replic"

template <typename F>
auto stage(const char* name, F&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(name, e.what());
    }
}

}  // namespace

BootstrapReport assess(const TableData& table, const QuerySpec& query, const AssessOptions& options) {
    BootstrapReport report;
    report.version = std::string(kVersion);
    report.aggregate = query.aggregate;
    report.mode = options.mode;
    report.seed = options.seed;
    report.alpha = options.alpha;
    report.replication_count = options.replications;

    report.z = stage("options", [&] {
        if (options.replications < 2) throw InvalidArgument("need at least 2 bootstrap replications");
        query.validate(table);
        return z_value(options.alpha);
    });
    const SampledRows rows = stage("draw_sample", [&] {
        return draw_sample(table, options.sample_size, derive_seed(options.seed, kSampleStream));
    });
    report.sample_rows = rows.rows;
    report.n = rows.n();
    report.population = rows.population;
    report.f = rows.f();

    const SampleResults results = stage("tuple_results", [&] { return tuple_results(table, rows, query); });
    report.point_estimate = stage("estimate", [&] { return estimate(results); });
    report.replications = stage("replicate", [&] {
        return replicate(results, options.replications, options.mode,
                         derive_seed(options.seed, kReplicateStream));
    });
    report.se = stage("bootstrap_se", [&] { return bootstrap_se(report.replications); });
    report.ci = stage("confidence_interval",
                      [&] { return confidence_interval(report.point_estimate, report.se, options.alpha); });
    return report;
}

}  // namespace qbs
