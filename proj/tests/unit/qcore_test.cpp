#include <cmath>
#include <cstdlib>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qbs/chi_square.hpp"
#include "qbs/circuit.hpp"
#include "qbs/error.hpp"
#include "qbs/simulator.hpp"

namespace qbs {
namespace {

class ScopedEnv {
public:
    ScopedEnv(const char* key, const char* value) : key_(key) {
        if (const char* old = std::getenv(key)) old_ = old;
        setenv(key, value, 1);
    }
    ~ScopedEnv() {
        if (old_) {
            setenv(key_, old_->c_str(), 1);
        } else {
            unsetenv(key_);
        }
    }

private:
    const char* key_;
    std::optional<std::string> old_;
};

Circuit random_circuit(Rng& rng, std::size_t n, std::size_t gates, bool classical_only = false) {
    Circuit c(n);
    for (std::size_t g = 0; g < gates; ++g) {
        const auto t = static_cast<Qubit>(rng.below(n));
        const std::uint64_t kind = rng.below(classical_only ? 4 : 5);
        std::vector<Qubit> others;
        for (Qubit q = 0; q < n; ++q) {
            if (q != t) others.push_back(q);
        }
        for (std::size_t i = others.size(); i > 1; --i) std::swap(others[i - 1], others[rng.below(i)]);
        if (others.empty() && kind >= 1 && kind <= 3) {
            c.x(t);
            continue;
        }
        switch (kind) {
            case 0: c.x(t); break;
            case 1: c.cx(others[0], t); break;
            case 2:
                if (others.size() >= 2) {
                    c.ccx(others[0], others[1], t);
                } else {
                    c.cx(others[0], t);
                }
                break;
            case 3: {
                const std::size_t k = 1 + rng.below(others.size());
                c.mcx({others.begin(), others.begin() + static_cast<std::ptrdiff_t>(k)}, t);
                break;
            }
            default: c.h(t);
        }
    }
    return c;
}

TEST(Circuit, BuildsEmpty) {
    const Circuit c(3);
    EXPECT_EQ(c.num_qubits(), 3u);
    EXPECT_TRUE(c.empty());
}

TEST(Circuit, RejectsZeroQubits) { EXPECT_THROW(Circuit(0), InvalidArgument); }

TEST(Circuit, AccommodatesCounterExperimentWidth) {
    // 8 control + 4 counter qubits.
    EXPECT_NO_THROW(Circuit(12));
}

TEST(Circuit, CapacityIsAConfigError) {
    EXPECT_THROW(Circuit(27), ConfigError);
    try {
        Circuit c(40);
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("26"), std::string::npos);
    }
}

TEST(Circuit, EnvironmentLowersCapacityOnly) {
    {
        ScopedEnv env("QBS_MAX_QUBITS", "10");
        EXPECT_EQ(simulator_capacity(), 10u);
        EXPECT_THROW(Circuit(11), ConfigError);
    }
    {
        ScopedEnv env("QBS_MAX_QUBITS", "40");
        EXPECT_EQ(simulator_capacity(), kDefaultMaxQubits);
    }
    {
        ScopedEnv env("QBS_MAX_QUBITS", "abc");
        EXPECT_EQ(simulator_capacity(), kDefaultMaxQubits);
    }
}

TEST(Circuit, AppendKeepsOrder) {
    Circuit c(1);
    c.h(0);
    ASSERT_EQ(c.size(), 1u);
    EXPECT_EQ(c.gates()[0].kind, GateKind::H);

    Circuit d(4);
    d.mcx({0, 1, 2}, 3).x(0);
    EXPECT_EQ(d.gates()[0], GateOp::mcx({0, 1, 2}, 3));
    EXPECT_EQ(d.gates()[1], GateOp::x(0));
}

TEST(Circuit, RejectsInvalidGates) {
    Circuit c(3);
    EXPECT_THROW(c.cx(0, 0), InvalidArgument);
    EXPECT_THROW(c.x(3), InvalidArgument);
    EXPECT_THROW(c.mcx({0, 1, 1}, 2), InvalidArgument);
    EXPECT_THROW(c.mcx({}, 2), InvalidArgument);
    EXPECT_THROW(c.append(GateOp{GateKind::H, {1}, 0}), InvalidArgument);
    EXPECT_THROW(c.append(GateOp{GateKind::CCX, {1}, 0}), InvalidArgument);
    EXPECT_THROW(c.mcx({0, 5}, 2), InvalidArgument);
    EXPECT_TRUE(c.empty());
}

TEST(Circuit, ComposesFragmentsThroughMapping) {
    Circuit frag(2);
    frag.cx(0, 1);
    Circuit host(4);
    const std::vector<Qubit> map{3, 1};
    host.append(frag, map);
    EXPECT_EQ(host.gates()[0], GateOp::cx(3, 1));
    host.append(frag, Qubit{2});
    EXPECT_EQ(host.gates()[1], GateOp::cx(2, 3));
    EXPECT_THROW(host.append(frag, Qubit{3}), InvalidArgument);
    EXPECT_EQ(host.size(), 2u);
}

TEST(Simulate, HadamardOnZero) {
    Circuit c(1);
    c.h(0);
    const StateVector s = simulate(c);
    EXPECT_NEAR(s[0].real(), 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(s[1].real(), 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_DOUBLE_EQ(s[0].imag(), 0.0);
}

TEST(Simulate, BitFlip) {
    Circuit c(1);
    c.x(0);
    const StateVector s = simulate(c);
    EXPECT_EQ(s[0], Amplitude(0.0, 0.0));
    EXPECT_EQ(s[1], Amplitude(1.0, 0.0));
}

TEST(Simulate, UniformThreeQubitsMatchesTensorOracle) {
    Circuit c(3);
    c.h(0).h(1).h(2);
    const auto ref = testing::reference_simulate(c);
    const StateVector s = simulate(c);
    for (std::size_t i = 0; i < 8; ++i) {
        EXPECT_NEAR(std::abs(s[i] - ref[i]), 0.0, 1e-12);
        EXPECT_NEAR(s[i].real(), 1.0 / std::sqrt(8.0), 1e-12);
    }
}

TEST(Simulate, RandomCircuitsMatchDenseMatrixOracle) {
    Rng rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + rng.below(4);
        const Circuit c = random_circuit(rng, n, 12);
        const auto ref = testing::reference_simulate(c);
        const StateVector s = simulate(c);
        for (std::size_t i = 0; i < s.dimension(); ++i) ASSERT_NEAR(std::abs(s[i] - ref[i]), 0.0, 1e-12);
    }
}

TEST(Simulate, NormPreservedAfterEveryGate) {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng.below(8);
        const Circuit c = random_circuit(rng, n, 25);
        StateVector s(n);
        for (const GateOp& g : c.gates()) {
            s.apply(g);
            ASSERT_NEAR(s.norm_squared(), 1.0, 1e-12);
        }
    }
}

TEST(Simulate, GatesAreInvolutions) {
    Rng rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + rng.below(5);
        const Circuit prep = random_circuit(rng, n, 15);
        const Circuit probe = random_circuit(rng, n, 1);
        const StateVector before = simulate(prep);
        StateVector after = before;
        after.apply(probe.gates()[0]);
        after.apply(probe.gates()[0]);
        for (std::size_t i = 0; i < before.dimension(); ++i) ASSERT_NEAR(std::abs(after[i] - before[i]), 0.0, 1e-12);
    }
}

TEST(Simulate, ClassicalCircuitsPermuteBasisStates) {
    Rng rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + rng.below(6);
        const Circuit c = random_circuit(rng, n, 20, true);
        ASSERT_TRUE(c.is_classical());
        const BasisState in = rng.below(std::uint64_t{1} << n);
        const StateVector s = simulate(c, StateVector::basis(n, in));
        const BasisState out = simulate_basis(c, in);
        ASSERT_NEAR(std::abs(s[out]), 1.0, 1e-15);
        ASSERT_NEAR(s.norm_squared(), 1.0, 1e-15);
    }
}

TEST(Simulate, BasisSimulationRejectsHadamard) {
    Circuit c(1);
    c.h(0);
    EXPECT_THROW(simulate_basis(c, 0), InvalidArgument);
}

TEST(Simulate, JsonDump) {
    Circuit c(1);
    c.x(0);
    EXPECT_EQ(simulate(c).to_json(), "[[0.0,0.0],[1.0,0.0]]");
}

TEST(Sample, DeterministicState) {
    Circuit c(1);
    c.x(0);
    const CountsTable t = sample(c, 100, 5);
    EXPECT_EQ(t.by_bitstring(), (std::map<std::string, std::uint64_t>{{"1", 100}}));
}

TEST(Sample, UniformSuperpositionWithinThreeSigma) {
    Circuit c(3);
    c.h(0).h(1).h(2);
    // Each cell sits in [96, 160] with probability about 0.995, so a whole
    // table passes about 96% of the time.
    int in_band = 0;
    int rejected = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const CountsTable t = sample(c, 1024, seed);
        ASSERT_EQ(t.shots(), 1024u);
        ASSERT_EQ(t.entries().size(), 8u);
        std::vector<std::uint64_t> obs;
        bool ok = true;
        for (const auto& [bits, n] : t.by_bitstring()) {
            ASSERT_EQ(bits.size(), 3u);
            ok = ok && n >= 96 && n <= 160;
            obs.push_back(n);
        }
        in_band += ok ? 1 : 0;
        rejected += chi_square_gof(obs, std::vector<double>(8, 1.0 / 8)).rejects(0.001) ? 1 : 0;
    }
    EXPECT_GE(in_band, 180);
    EXPECT_LE(rejected, 3);
}

TEST(Sample, SameSeedSameCounts) {
    Circuit c(3);
    c.h(0).h(1).h(2);
    EXPECT_EQ(sample(c, 1024, 99), sample(c, 1024, 99));
    EXPECT_NE(sample(c, 1024, 99), sample(c, 1024, 100));
}

TEST(Sample, ZeroShotsRejected) {
    Circuit c(1);
    EXPECT_THROW(sample(c, 0, 1), InvalidArgument);
}

TEST(MeasureOnce, Support) {
    Circuit x(1);
    x.x(0);
    EXPECT_EQ(measure_once(x, 3).str(), "1");
    Circuit h(1);
    h.h(0);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const std::string s = measure_once(h, seed).str();
        EXPECT_TRUE(s == "0" || s == "1");
    }
}

TEST(MeasureOnce, FairCoinOverManySeeds) {
    Circuit h(1);
    h.h(0);
    int ones = 0;
    for (std::uint64_t seed = 0; seed < 10000; ++seed) ones += measure_once(h, seed).bit(0) ? 1 : 0;
    EXPECT_GE(ones, 4700);
    EXPECT_LE(ones, 5300);
}

TEST(Bitstring, RoundTripsThroughParse) {
    Rng rng(19);
    for (int i = 0; i < 200; ++i) {
        const std::size_t w = 1 + rng.below(20);
        const Bitstring b{rng.below(std::uint64_t{1} << w), w};
        EXPECT_EQ(parse_bitstring(b.str()), b);
        std::string reversed = b.raw();
        std::reverse(reversed.begin(), reversed.end());
        EXPECT_EQ(reversed, b.str());
    }
    EXPECT_THROW(parse_bitstring("01a"), ParseError);
    EXPECT_THROW(parse_bitstring(""), ParseError);
}

TEST(Rng, BelowIsBoundedAndDerivedSeedsDiffer) {
    Rng rng(1);
    for (int i = 0; i < 1000; ++i) EXPECT_LT(rng.below(7), 7u);
    EXPECT_THROW(rng.below(0), InvalidArgument);
    EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
    EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
    EXPECT_EQ(derive_seed(5, 9), derive_seed(5, 9));
}

TEST(Rng, StreamIsPinned) {
    // std::mt19937_64 output is fixed by the standard: the 10000th draw from
    // the default seed is 9981545732273789042.
    Rng rng(5489u);
    std::uint64_t v = 0;
    for (int i = 0; i < 10000; ++i) v = rng.next();
    EXPECT_EQ(v, 9981545732273789042ULL);
}

}  // namespace
}  // namespace qbs
