#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "qbs/circuit.hpp"
#include "qbs/simulator.hpp"

namespace qbs {

enum class Aggregate { Count, Sum, Avg };

std::string_view to_string(Aggregate aggregate);
Aggregate parse_aggregate(std::string_view text);

enum class Mode { QuantumSequential, QuantumParallel, ClassicalOracle };

std::string_view to_string(Mode mode);
// Accepts the canonical names and the short forms sequential/parallel/oracle.
Mode parse_mode(std::string_view text);

/// Per-tuple query results of the AQP sample S.
///
/// For COUNT, y holds the predicate bit of each sampled tuple. For SUM and
/// AVG, y holds the target value when the predicate holds and 0 otherwise,
/// and `matches` flags the tuples that satisfied the predicate.
struct SampleResults {
    Aggregate aggregate = Aggregate::Count;
    std::vector<std::uint64_t> y;
    std::vector<std::uint8_t> matches;
    std::uint64_t population = 0;  // N

    std::size_t n() const noexcept { return y.size(); }
    double f() const noexcept { return static_cast<double>(y.size()) / static_cast<double>(population); }
    std::uint64_t total() const noexcept;
    std::size_t matched() const noexcept;

    // Throws InvalidArgument if the fields are inconsistent.
    void validate() const;

    static SampleResults count(std::vector<std::uint8_t> bits, std::uint64_t population);
    static SampleResults values(Aggregate aggregate, std::vector<std::uint64_t> values,
                                std::vector<std::uint8_t> matches, std::uint64_t population);
};

struct Replication {
    std::uint64_t raw = 0;      // resampled count (COUNT) or sum (SUM/AVG)
    std::uint64_t matched = 0;  // resampled predicate matches
    double estimate = 0.0;

    friend bool operator==(const Replication&, const Replication&) = default;
};

struct ReplicationSet {
    Mode mode = Mode::QuantumSequential;
    Aggregate aggregate = Aggregate::Count;
    std::uint64_t seed = 0;
    double f = 1.0;
    std::vector<Replication> replications;

    std::size_t size() const noexcept { return replications.size(); }
    std::vector<double> estimates() const;
    std::vector<std::uint64_t> raw_counts() const;

    friend bool operator==(const ReplicationSet&, const ReplicationSet&) = default;
};

/// Produces bootstrap replications of one sample in one execution mode.
///
/// Construction builds and simulates the circuits once; run() is const and
/// may be called concurrently with different seeds.
///
/// quantum_sequential runs the resampler n times (draw i uses
/// derive_seed(seed, i)), then feeds the n measured data bits as basis
/// inputs into the counter circuit. SUM/AVG tuples are accumulated through
/// the ripple-carry adder, one draw at a time, while their match flags go
/// through the counter.
///
/// quantum_parallel simulates one circuit holding n resamplers on disjoint
/// registers wired into a counter and reads one shot per replication. It
/// supports COUNT only and must fit the simulator capacity.
///
/// classical_oracle draws n indices with replacement from Rng(seed).
class Replicator {
public:
    Replicator(const SampleResults& sample, Mode mode);

    Mode mode() const noexcept { return mode_; }
    Replication run(std::uint64_t seed) const;

    // Circuits in use, for inspection (empty for classical_oracle).
    const std::optional<Circuit>& resampler() const noexcept { return resampler_; }
    const std::optional<Circuit>& counter() const noexcept { return counter_; }
    const std::optional<Circuit>& adder() const noexcept { return adder_; }

private:
    Replication run_sequential(std::uint64_t seed) const;
    Replication run_parallel(std::uint64_t seed) const;
    Replication run_classical(std::uint64_t seed) const;
    Replication finish(std::uint64_t raw, std::uint64_t matched) const;

    SampleResults sample_;
    Mode mode_;
    std::optional<Circuit> resampler_;
    std::optional<Circuit> counter_;
    std::optional<Circuit> adder_;
    std::optional<Sampler> sampler_;
    std::size_t accumulator_width_ = 0;
};

// One quantum_sequential replication.
Replication run_replication_sequential(const SampleResults& sample, std::uint64_t seed);

/// Single circuit with n resamplers on disjoint registers feeding a counter.
/// Block k occupies qubits [k(a+1), (k+1)(a+1)) with its data qubit last;
/// the counter register follows the blocks. Throws ConfigError (suggesting
/// sequential mode) when n(a+1) + ceil(log2(n+1)) exceeds capacity.
Circuit build_parallel_replication_circuit(const SampleResults& sample);

// B >= 2 replications; replication j uses derive_seed(seed, j).
ReplicationSet replicate(const SampleResults& sample, std::size_t replications, Mode mode,
                         std::uint64_t seed);

// Classical resampling with replacement; same shape as replicate().
ReplicationSet classical_bootstrap_oracle(const SampleResults& sample, std::size_t replications,
                                          std::uint64_t seed);

}  // namespace qbs
