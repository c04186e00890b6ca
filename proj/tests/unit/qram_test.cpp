#include <gtest/gtest.h>

#include "qbs/chi_square.hpp"
#include "qbs/error.hpp"
#include "qbs/qram.hpp"
#include "qbs/simulator.hpp"

namespace qbs {
namespace {

const std::vector<std::uint8_t> kAlternating{0, 1, 0, 1, 0, 1, 0, 1};

std::vector<std::uint8_t> random_bits(Rng& rng, std::size_t n) {
    std::vector<std::uint8_t> bits(n);
    for (auto& b : bits) b = static_cast<std::uint8_t>(rng.below(2));
    return bits;
}

TEST(BitQram, OddAddressesReadOne) {
    const Circuit q = build_bit_qram(BitDataArray(kAlternating));
    // Address 001 with data qubit cleared reads back 1.
    EXPECT_EQ(simulate_basis(q, 0b001), 0b1001u);
    for (BasisState addr = 0; addr < 8; ++addr) {
        EXPECT_EQ(extract(simulate_basis(q, addr), {3, 1}), addr % 2);
    }
}

TEST(BitQram, AllZerosEmitsNothing) {
    const Circuit q = build_bit_qram(BitDataArray(std::vector<std::uint8_t>(8, 0)));
    EXPECT_TRUE(q.empty());
    for (BasisState addr = 0; addr < 8; ++addr) EXPECT_EQ(simulate_basis(q, addr), addr);
}

TEST(BitQram, ExhaustiveLookupAndUncomputation) {
    Rng rng(23);
    for (std::size_t a = 1; a <= 4; ++a) {
        for (int trial = 0; trial < 30; ++trial) {
            const BitDataArray data(random_bits(rng, std::size_t{1} << a));
            const Circuit q = build_bit_qram(data);
            for (BasisState addr = 0; addr < data.size(); ++addr) {
                const BasisState out = simulate_basis(q, addr);
                EXPECT_EQ(extract(out, {0, static_cast<Qubit>(a)}), addr);
                EXPECT_EQ(extract(out, {static_cast<Qubit>(a), 1}), data[addr]);
                // Data qubit preset to 1 gets XORed, address still restored.
                const BasisState flipped = simulate_basis(q, addr | (BasisState{1} << a));
                EXPECT_EQ(extract(flipped, {static_cast<Qubit>(a), 1}), 1u - data[addr]);
                EXPECT_EQ(extract(flipped, {0, static_cast<Qubit>(a)}), addr);
            }
        }
    }
}

TEST(BitQram, GateCountBound) {
    Rng rng(29);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t a = 1 + rng.below(5);
        const BitDataArray data(random_bits(rng, std::size_t{1} << a));
        const Circuit q = build_bit_qram(data);
        EXPECT_LE(q.count(GateKind::MCX), data.ones());
        EXPECT_LE(q.count(GateKind::X), 2 * a * data.ones());
        EXPECT_EQ(q.size(), q.count(GateKind::MCX) + q.count(GateKind::X));
    }
}

TEST(BitQram, RejectsNonPowerOfTwo) {
    EXPECT_THROW(BitDataArray({0, 1, 0}), InvalidArgument);
    EXPECT_THROW(BitDataArray({0, 1, 0, 1, 0, 1, 0, 1, 0}), InvalidArgument);
    EXPECT_THROW(BitDataArray(std::vector<std::uint8_t>{1}), InvalidArgument);
    EXPECT_THROW(BitDataArray({0, 2}), InvalidArgument);
}

TEST(ValueQram, MapsAddressOneToTwenty) {
    const ValueDataArray data({0, 20, 0, 0, 0, 0, 0, 0}, 5);
    const Circuit q = build_value_qram(data);
    const BasisState out = simulate_basis(q, 0b001);
    EXPECT_EQ(Bitstring(extract(out, *q.find_register("data")), 5).str(), "10100");
}

TEST(ValueQram, AllZerosEmitsNothing) {
    EXPECT_TRUE(build_value_qram(ValueDataArray({0, 0, 0, 0}, 3)).empty());
}

TEST(ValueQram, ExhaustiveLookup) {
    Rng rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t w = 1 + rng.below(4);
        const std::size_t a = 1 + rng.below(3);
        std::vector<std::uint64_t> values(std::size_t{1} << a);
        for (auto& v : values) v = rng.below(std::uint64_t{1} << w);
        const ValueDataArray data(values, w);
        const Circuit q = build_value_qram(data);
        for (BasisState addr = 0; addr < values.size(); ++addr) {
            const BasisState out = simulate_basis(q, addr);
            EXPECT_EQ(extract(out, {0, static_cast<Qubit>(a)}), addr);
            EXPECT_EQ(extract(out, {static_cast<Qubit>(a), static_cast<Qubit>(w)}), values[addr]);
        }
    }
}

TEST(ValueQram, FourEntryWidthThree) {
    const std::vector<std::uint64_t> values{5, 0, 7, 2};
    const Circuit q = build_value_qram(ValueDataArray(values, 3));
    for (BasisState addr = 0; addr < 4; ++addr) EXPECT_EQ(simulate_basis(q, addr) >> 2, values[addr]);
}

TEST(ValueQram, RejectsOversizedValue) {
    EXPECT_THROW(ValueDataArray({0, 32}, 5), InvalidArgument);
    EXPECT_THROW(ValueDataArray({0, 1, 2}, 5), InvalidArgument);
}

TEST(Qsa, AlternatingSampleMatchesTableOne) {
    const Circuit qsa = build_qsa(BitDataArray(kAlternating));
    const CountsTable counts = sample(qsa, 1024, 20240101);
    ASSERT_EQ(counts.entries().size(), 8u);
    std::vector<std::uint64_t> addr_hist(8, 0);
    for (const auto& [state, n] : counts.entries()) {
        const BasisState addr = extract(state, {0, 3});
        EXPECT_EQ(extract(state, {3, 1}), addr % 2) << "address " << addr;
        EXPECT_GE(n, 96u);
        EXPECT_LE(n, 160u);
        addr_hist[addr] += n;
    }
    EXPECT_FALSE(chi_square_gof(addr_hist, std::vector<double>(8, 1.0 / 8)).rejects(0.001));
}

TEST(Qsa, ConstantDataAlwaysOne) {
    const Circuit qsa = build_qsa(BitDataArray({1, 1}));
    for (std::uint64_t seed = 0; seed < 50; ++seed) EXPECT_TRUE(measure_once(qsa, seed).bit(1));
    const CountsTable counts = sample(qsa, 2000, 3);
    EXPECT_EQ(counts.count(0b10) + counts.count(0b11), 2000u);
    EXPECT_GT(counts.count(0b10), 850u);
    EXPECT_GT(counts.count(0b11), 850u);
}

TEST(Qsa, BalancedDataHalfOnes) {
    const Circuit qsa = build_qsa(BitDataArray({0, 1, 1, 0}));
    const CountsTable counts = sample(qsa, 4096, 77);
    std::uint64_t ones = 0;
    for (const auto& [state, n] : counts.entries()) ones += extract(state, {2, 1}) * n;
    const double frac = static_cast<double>(ones) / 4096.0;
    EXPECT_GE(frac, 0.47);
    EXPECT_LE(frac, 0.53);
}

TEST(Qsa, UniformAddressMarginalAcrossSeeds) {
    Rng rng(37);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t a = 1 + rng.below(4);
        const Circuit qsa = build_qsa(BitDataArray(random_bits(rng, std::size_t{1} << a)));
        const CountsTable counts = sample(qsa, 2048, rng.next());
        std::vector<std::uint64_t> h(std::size_t{1} << a, 0);
        for (const auto& [state, n] : counts.entries()) h[extract(state, {0, static_cast<Qubit>(a)})] += n;
        EXPECT_FALSE(chi_square_gof(h, std::vector<double>(h.size(), 1.0 / static_cast<double>(h.size())))
                         .rejects(0.001));
    }
}

TEST(ValueQsa, FlagsFollowMatches) {
    const ValueDataArray values({3, 0, 5, 0}, 3);
    const BitDataArray matches({1, 1, 1, 0});
    const Circuit qsa = build_value_qsa(values, matches);
    const CountsTable counts = sample(qsa, 512, 8);
    for (const auto& [state, n] : counts.entries()) {
        const BasisState addr = extract(state, *qsa.find_register("addr"));
        EXPECT_EQ(extract(state, *qsa.find_register("data")), values[addr]);
        EXPECT_EQ(extract(state, *qsa.find_register("match")), matches[addr]);
    }
}

TEST(DataFile, ParsesBothForms) {
    const DataArray bits = parse_data_array(R"({"bits": [0, 1, 0, 1]})");
    ASSERT_TRUE(std::holds_alternative<BitDataArray>(bits));
    EXPECT_EQ(std::get<BitDataArray>(bits).size(), 4u);

    const DataArray values = parse_data_array(R"({"values": [20, 3], "width": 5})");
    ASSERT_TRUE(std::holds_alternative<ValueDataArray>(values));
    EXPECT_EQ(std::get<ValueDataArray>(values)[0], 20u);

    EXPECT_THROW(parse_data_array("{"), ParseError);
    EXPECT_THROW(parse_data_array(R"({"bits": [0, 2]})"), ParseError);
    EXPECT_THROW(parse_data_array(R"({"values": [1, 2]})"), ParseError);
    EXPECT_THROW(parse_data_array(R"({"other": 1})"), ParseError);
    EXPECT_THROW(parse_data_array(R"({"bits": [0, 1, 0]})"), InvalidArgument);
}

}  // namespace
}  // namespace qbs
