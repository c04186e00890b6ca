#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "qbs/circuit.hpp"
#include "qbs/rng.hpp"

namespace qbs {

using Amplitude = std::complex<double>;

/// Dense amplitude vector over 2^n computational basis states.
///
/// Index bit k is qubit k. Gate application is exact and in place; the
/// vector is never renormalized, so any drift shows up in norm_squared().
class StateVector {
public:
    // |0...0> on num_qubits qubits. Throws ConfigError above capacity.
    explicit StateVector(std::size_t num_qubits);

    static StateVector basis(std::size_t num_qubits, BasisState index);

    std::size_t num_qubits() const noexcept { return num_qubits_; }
    std::size_t dimension() const noexcept { return amplitudes_.size(); }
    std::span<const Amplitude> amplitudes() const noexcept { return amplitudes_; }
    const Amplitude& operator[](BasisState index) const { return amplitudes_[index]; }

    void apply(const GateOp& gate);
    void apply(const Circuit& circuit);

    double norm_squared() const noexcept;
    std::vector<double> probabilities() const;

    // Debug dump: JSON array of [re, im] pairs in basis-index order.
    std::string to_json() const;

private:
    std::size_t num_qubits_;
    std::vector<Amplitude> amplitudes_;
};

// Runs the circuit from |0...0>.
StateVector simulate(const Circuit& circuit);
// Runs the circuit from the given state (same width).
StateVector simulate(const Circuit& circuit, StateVector initial);

// Tracks a single basis state through a permutation-only circuit. This is
// exact for X/CX/CCX/MCX and throws InvalidArgument if the circuit holds H.
BasisState simulate_basis(const Circuit& circuit, BasisState input);

/// A measured basis state together with its width.
struct Bitstring {
    BasisState value = 0;
    std::size_t width = 0;

    bool bit(std::size_t qubit) const { return ((value >> qubit) & 1U) != 0; }
    // Most-significant (highest qubit) first.
    std::string str() const;
    // Qubit 0 first, as a little-endian raw dump.
    std::string raw() const;

    friend bool operator==(const Bitstring&, const Bitstring&) = default;
};

// Parses an MSB-first string of '0'/'1'. Throws ParseError otherwise.
Bitstring parse_bitstring(std::string_view text);

// Extracts bits [range.first, range.end()) of `value` as an integer.
BasisState extract(BasisState value, QubitRange range);

/// Outcome frequencies over repeated shots.
class CountsTable {
public:
    explicit CountsTable(std::size_t width) : width_(width) {}

    void add(BasisState outcome, std::uint64_t times = 1);

    std::size_t width() const noexcept { return width_; }
    std::uint64_t shots() const noexcept { return shots_; }
    std::uint64_t count(BasisState outcome) const;
    const std::map<BasisState, std::uint64_t>& entries() const noexcept { return entries_; }
    // Keyed by MSB-first bitstring.
    std::map<std::string, std::uint64_t> by_bitstring() const;

    friend bool operator==(const CountsTable&, const CountsTable&) = default;

private:
    std::size_t width_;
    std::uint64_t shots_ = 0;
    std::map<BasisState, std::uint64_t> entries_;
};

/// Measurement distribution of a fixed state, prepared once and sampled many
/// times. Each draw consumes exactly one Rng output.
class Sampler {
public:
    explicit Sampler(const StateVector& state);
    explicit Sampler(const Circuit& circuit) : Sampler(simulate(circuit)) {}

    std::size_t width() const noexcept { return width_; }
    BasisState draw(Rng& rng) const;

private:
    std::size_t width_;
    std::vector<double> cumulative_;
};

// `shots` independent measurements of all qubits. Throws InvalidArgument for
// zero shots.
CountsTable sample(const Circuit& circuit, std::uint64_t shots, std::uint64_t seed);
// Single-shot specialization of sample().
Bitstring measure_once(const Circuit& circuit, std::uint64_t seed);

}  // namespace qbs
