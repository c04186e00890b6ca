#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "qbs/bootstrap.hpp"
#include "qbs/chi_square.hpp"
#include "qbs/error.hpp"
#include "qbs/json.hpp"
#include "qbs/replication.hpp"

namespace qbs {
namespace {

SampleResults alternating() { return SampleResults::count({0, 1, 0, 1, 0, 1, 0, 1}, 16); }

double mean_raw(const ReplicationSet& set) {
    const auto raw = set.raw_counts();
    return static_cast<double>(std::accumulate(raw.begin(), raw.end(), std::uint64_t{0})) /
           static_cast<double>(raw.size());
}

TEST(SampleResults, Validation) {
    EXPECT_THROW(SampleResults::count({0, 2}, 4), InvalidArgument);
    EXPECT_THROW(SampleResults::count({0, 1}, 1), InvalidArgument);
    EXPECT_THROW(SampleResults::count({}, 4), InvalidArgument);
    EXPECT_THROW(SampleResults::values(Aggregate::Sum, {1, 2}, {1}, 4), InvalidArgument);
    EXPECT_DOUBLE_EQ(alternating().f(), 0.5);
}

TEST(Names, RoundTrip) {
    for (Mode m : {Mode::QuantumSequential, Mode::QuantumParallel, Mode::ClassicalOracle}) {
        EXPECT_EQ(parse_mode(to_string(m)), m);
    }
    EXPECT_EQ(parse_mode("oracle"), Mode::ClassicalOracle);
    EXPECT_EQ(parse_aggregate("avg"), Aggregate::Avg);
    EXPECT_THROW(parse_mode("bogus"), ParseError);
}

TEST(Sequential, AllOnesGivesN) {
    const SampleResults s = SampleResults::count(std::vector<std::uint8_t>(8, 1), 16);
    const Replicator r(s, Mode::QuantumSequential);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const Replication rep = r.run(seed);
        EXPECT_EQ(rep.raw, 8u);
        EXPECT_DOUBLE_EQ(rep.estimate, 16.0);
    }
}

TEST(Sequential, AllZerosGivesZero) {
    const ReplicationSet set = replicate(SampleResults::count(std::vector<std::uint8_t>(8, 0), 16), 2,
                                         Mode::QuantumSequential, 5);
    ASSERT_EQ(set.size(), 2u);
    for (const Replication& r : set.replications) EXPECT_EQ(r.raw, 0u);
    EXPECT_EQ(bootstrap_se(set), 0.0);
}

TEST(Sequential, AlternatingMatchesBinomial) {
    const ReplicationSet set = replicate(alternating(), 5000, Mode::QuantumSequential, 11);
    const auto hist = histogram(set.raw_counts(), 9);
    const auto pmf = testing::binomial_oracle(8, 0.5);
    EXPECT_NEAR(pmf[4], 70.0 / 256.0, 1e-15);
    EXPECT_NEAR(static_cast<double>(hist[4]) / 5000.0, pmf[4], 0.03);
    EXPECT_FALSE(chi_square_gof(hist, pmf).rejects(0.001));
    const double m = mean_raw(set);
    EXPECT_GE(m, 3.8);
    EXPECT_LE(m, 4.2);
}

TEST(Sequential, MeanOverThousandReplications) {
    const double m = mean_raw(replicate(alternating(), 1000, Mode::QuantumSequential, 12));
    EXPECT_GE(m, 3.8);
    EXPECT_LE(m, 4.2);
}

TEST(Sequential, Deterministic) {
    EXPECT_EQ(replicate(alternating(), 200, Mode::QuantumSequential, 99),
              replicate(alternating(), 200, Mode::QuantumSequential, 99));
    EXPECT_NE(replicate(alternating(), 200, Mode::QuantumSequential, 99),
              replicate(alternating(), 200, Mode::QuantumSequential, 100));
}

TEST(Sequential, RejectsNonPowerOfTwoSample) {
    EXPECT_THROW(Replicator(SampleResults::count({0, 1, 1}, 6), Mode::QuantumSequential), InvalidArgument);
    EXPECT_NO_THROW(Replicator(SampleResults::count({0, 1, 1}, 6), Mode::ClassicalOracle));
}

TEST(Replicate, NeedsTwoReplications) {
    EXPECT_THROW(replicate(alternating(), 1, Mode::QuantumSequential, 0), InvalidArgument);
}

TEST(Oracle, ConstantSampleGivesN) {
    const ReplicationSet set = classical_bootstrap_oracle(SampleResults::count({1, 1, 1}, 3), 50, 1);
    for (const Replication& r : set.replications) EXPECT_EQ(r.raw, 3u);
}

TEST(Oracle, TwoElementSampleIsBinomial) {
    const ReplicationSet set = classical_bootstrap_oracle(SampleResults::count({0, 1}, 4), 10000, 2);
    const auto hist = histogram(set.raw_counts(), 3);
    EXPECT_FALSE(chi_square_gof(hist, testing::binomial_oracle(2, 0.5)).rejects(0.001));
}

TEST(Oracle, ResamplesWithReplacement) {
    // With distinct values, sums that exceed the sum of distinct picks show repeats.
    const SampleResults s = SampleResults::values(Aggregate::Sum, {1, 2, 4, 8}, {1, 1, 1, 1}, 8);
    const ReplicationSet set = classical_bootstrap_oracle(s, 200, 3);
    std::size_t not_permutation = 0;
    for (const Replication& r : set.replications) not_permutation += r.raw != 15 ? 1 : 0;
    EXPECT_GT(not_permutation, 150u);
}

TEST(Sequential, AgreesWithOracle) {
    const SampleResults s = alternating();
    const ReplicationSet q = replicate(s, 2000, Mode::QuantumSequential, 21);
    const ReplicationSet c = classical_bootstrap_oracle(s, 2000, 22);
    EXPECT_FALSE(chi_square_two_sample(histogram(q.raw_counts(), 9), histogram(c.raw_counts(), 9)).rejects(0.001));
}

TEST(Parallel, TwoOnesGiveTwo) {
    const ReplicationSet set = replicate(SampleResults::count({1, 1}, 4), 20, Mode::QuantumParallel, 3);
    for (const Replication& r : set.replications) EXPECT_EQ(r.raw, 2u);
}

TEST(Parallel, CircuitLayout) {
    const Circuit c = build_parallel_replication_circuit(SampleResults::count({0, 1, 1, 0}, 8));
    EXPECT_EQ(c.num_qubits(), 15u);
    EXPECT_EQ(c.count(GateKind::H), 8u);
}

TEST(Parallel, FourTupleMatchesBinomial) {
    const SampleResults s = SampleResults::count({0, 1, 1, 0}, 8);
    const ReplicationSet set = replicate(s, 4096, Mode::QuantumParallel, 4);
    EXPECT_FALSE(chi_square_gof(histogram(set.raw_counts(), 5), testing::binomial_oracle(4, 0.5)).rejects(0.001));
}

TEST(Parallel, EightTuplesExceedCapacity) {
    try {
        Replicator(alternating(), Mode::QuantumParallel);
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("sequential"), std::string::npos);
    }
}

TEST(Parallel, CountOnly) {
    EXPECT_THROW(Replicator(SampleResults::values(Aggregate::Sum, {1, 2}, {1, 1}, 4), Mode::QuantumParallel),
                 InvalidArgument);
}

TEST(Sequential, SumAgreesWithOracle) {
    const SampleResults s = SampleResults::values(Aggregate::Sum, {0, 3, 5, 0}, {0, 1, 1, 1}, 8);
    const ReplicationSet q = replicate(s, 2000, Mode::QuantumSequential, 31);
    const ReplicationSet c = classical_bootstrap_oracle(s, 2000, 32);
    for (const Replication& r : q.replications) {
        EXPECT_LE(r.raw, 20u);
        EXPECT_DOUBLE_EQ(r.estimate, static_cast<double>(r.raw) * 2.0);
    }
    EXPECT_FALSE(chi_square_two_sample(histogram(q.raw_counts(), 21), histogram(c.raw_counts(), 21)).rejects(0.001));
}

TEST(Sequential, AvgDividesByResampledMatches) {
    const SampleResults s = SampleResults::values(Aggregate::Avg, {4, 0, 8, 0}, {1, 0, 1, 0}, 8);
    const ReplicationSet set = replicate(s, 500, Mode::QuantumSequential, 41);
    for (const Replication& r : set.replications) {
        ASSERT_GT(r.matched, 0u);
        EXPECT_DOUBLE_EQ(r.estimate, static_cast<double>(r.raw) / static_cast<double>(r.matched));
        EXPECT_GE(r.estimate, 4.0);
        EXPECT_LE(r.estimate, 8.0);
    }
}

TEST(ReplicationJson, RoundTrip) {
    const ReplicationSet set = replicate(alternating(), 20, Mode::QuantumSequential, 7);
    const nlohmann::json j = set;
    EXPECT_EQ(j.at("B"), 20);
    EXPECT_EQ(j.at("mode"), "quantum_sequential");
    EXPECT_EQ(j.get<ReplicationSet>(), set);
}

}  // namespace
}  // namespace qbs
