#pragma once

#include <cstdint>
#include <string>

#include "qbs/bootstrap.hpp"
#include "qbs/query.hpp"
#include "qbs/replication.hpp"
#include "qbs/table.hpp"

namespace qbs {

struct AssessOptions {
    std::size_t sample_size = 8;  // n
    std::size_t replications = 1000;  // B
    double alpha = 0.05;
    Mode mode = Mode::QuantumSequential;
    std::uint64_t seed = 0;
};

struct BootstrapReport {
    std::string version;
    Aggregate aggregate = Aggregate::Count;
    Mode mode = Mode::QuantumSequential;
    std::uint64_t seed = 0;
    std::size_t replication_count = 0;  // B
    double f = 1.0;
    std::size_t n = 0;
    std::uint64_t population = 0;  // N
    double alpha = 0.05;
    double z = 0.0;
    double point_estimate = 0.0;
    double se = 0.0;
    ConfidenceInterval ci;
    std::vector<std::size_t> sample_rows;
    ReplicationSet replications;

    friend bool operator==(const BootstrapReport&, const BootstrapReport&) = default;
};

/// End-to-end error assessment:
/// draw_sample -> tuple_results -> estimate -> replicate -> bootstrap_se ->
/// confidence_interval.
///
/// The sample and the replications use separate child seeds of
/// options.seed, so the whole report is a pure function of its inputs.
/// Failures are rethrown as StageError naming the stage.
BootstrapReport assess(const TableData& table, const QuerySpec& query, const AssessOptions& options);

}  // namespace qbs
