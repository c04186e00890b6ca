#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "qbs/circuit.hpp"

namespace qbs {

// Smallest q with 2^q > p, i.e. ceil(log2(p + 1)).
std::size_t counter_width(std::size_t controls);

struct CounterSpec {
    std::size_t controls = 0;      // p
    std::size_t counter_bits = 0;  // q

    // p controls with the minimal counter register.
    static CounterSpec for_controls(std::size_t controls);

    // Throws InvalidArgument unless p >= 1 and q >= counter_width(p).
    void validate() const;
};

// Order of the inner loop over counter bits. Only HighToLow propagates the
// carry correctly; LowToHigh exists as a negative control for self-checks.
enum class CarryOrder { HighToLow, LowToHigh };

/// Popcount circuit: controls s_0..s_{p-1} on qubits [0, p), counter
/// u_0..u_{q-1} on qubits [p, p + q) with u_0 least significant.
///
/// For i = p-1 down to 0 and j = q-1 down to 0 it appends an MCX with
/// controls {s_i, u_0, ..., u_{j-1}} onto u_j (a CX when j = 0). Each i pass
/// increments the counter by one when s_i is set, so a cleared counter ends
/// holding the number of set controls.
Circuit build_counter(const CounterSpec& spec, CarryOrder order = CarryOrder::HighToLow);

// build_counter with the gate order reversed: decrements by popcount.
Circuit build_inverse_counter(const CounterSpec& spec);

// Decodes a counter register printed u_{q-1} ... u_0 (MSB first). Throws
// InvalidArgument when the length is not `width`, ParseError on bad chars.
std::uint64_t decode_counter(std::string_view bits, std::size_t width);

/// Cuccaro ripple-carry adder on 2*width + 2 qubits.
///
/// Layout: A = [0, width), B = [width, 2*width), carry-in ancilla at
/// 2*width, carry-out at 2*width + 1; every register LSB first. On basis
/// inputs with both ancillas cleared, B becomes (a + b) mod 2^width, the
/// carry-out receives the overflow bit and A and the ancilla are restored.
Circuit build_ripple_adder(std::size_t width);

}  // namespace qbs
