#pragma once

#include <cstdint>
#include <random>

namespace qbs {

// Seedable generator with bit-identical output on every platform.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. The standard library distributions are not portable, so the
// conversions below are done by hand: uniform() takes the top 53 bits of one
// engine output, below() uses rejection sampling on whole 64-bit outputs.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform double in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound);

private:
    std::mt19937_64 engine_;
};

// SplitMix64 finalizer applied to (master, index); used to give every
// replication and every draw inside it an independent child seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

// Nondeterministic seed for runs where the caller supplied none.
std::uint64_t entropy_seed();

}  // namespace qbs
