#include "qbs/counter.hpp"

#include <bit>

#include "qbs/error.hpp"
#include "qbs/simulator.hpp"

namespace qbs {

std::size_t counter_width(std::size_t controls) {
    return static_cast<std::size_t>(std::bit_width(controls));
}

CounterSpec CounterSpec::for_controls(std::size_t controls) {
    CounterSpec spec{controls, counter_width(controls)};
    spec.validate();
    return spec;
}

void CounterSpec::validate() const {
    if (controls == 0) throw InvalidArgument("counter needs at least one control qubit");
    if (counter_bits < counter_width(controls)) {
        throw InvalidArgument(std::to_string(counter_bits) + " counter qubits cannot hold a count of " +
                              std::to_string(controls) + "; need at least " +
                              std::to_string(counter_width(controls)));
    }
}

Circuit build_counter(const CounterSpec& spec, CarryOrder order) {
    spec.validate();
    const std::size_t p = spec.controls;
    const std::size_t q = spec.counter_bits;
    Circuit c(p + q);
    const auto u = [p](std::size_t j) { return static_cast<Qubit>(p + j); };

    for (std::size_t i = p; i-- > 0;) {
        for (std::size_t step = 0; step < q; ++step) {
            const std::size_t j = order == CarryOrder::HighToLow ? q - 1 - step : step;
            if (j == 0) {
                c.cx(static_cast<Qubit>(i), u(0));
                continue;
            }
            std::vector<Qubit> controls{static_cast<Qubit>(i)};
            for (std::size_t k = 0; k < j; ++k) controls.push_back(u(k));
            c.mcx(std::move(controls), u(j));
        }
    }
    c.label("ctrl", {0, static_cast<Qubit>(p)});
    c.label("count", {static_cast<Qubit>(p), static_cast<Qubit>(q)});
    return c;
}

Circuit build_inverse_counter(const CounterSpec& spec) { return build_counter(spec).inverse(); }

std::uint64_t decode_counter(std::string_view bits, std::size_t width) {
    if (bits.size() != width) {
        throw InvalidArgument("counter bitstring has length " + std::to_string(bits.size()) +
                              ", expected " + std::to_string(width));
    }
    return parse_bitstring(bits).value;
}

Circuit build_ripple_adder(std::size_t width) {
    if (width == 0) throw InvalidArgument("adder width must be positive");
    Circuit c(2 * width + 2);
    const auto a = [](std::size_t i) { return static_cast<Qubit>(i); };
    const auto b = [width](std::size_t i) { return static_cast<Qubit>(width + i); };
    const auto cin = static_cast<Qubit>(2 * width);
    const auto cout = static_cast<Qubit>(2 * width + 1);

    // MAJ leaves the running carry on the a-qubit; UMA undoes it and writes
    // the sum bit into b.
    const auto maj = [&c](Qubit carry, Qubit bi, Qubit ai) {
        c.cx(ai, bi).cx(ai, carry).ccx(carry, bi, ai);
    };
    const auto uma = [&c](Qubit carry, Qubit bi, Qubit ai) {
        c.ccx(carry, bi, ai).cx(ai, carry).cx(carry, bi);
    };
    const auto carry_into = [&](std::size_t i) { return i == 0 ? cin : a(i - 1); };

    for (std::size_t i = 0; i < width; ++i) maj(carry_into(i), b(i), a(i));
    c.cx(a(width - 1), cout);
    for (std::size_t i = width; i-- > 0;) uma(carry_into(i), b(i), a(i));

    c.label("a", {0, static_cast<Qubit>(width)});
    c.label("b", {static_cast<Qubit>(width), static_cast<Qubit>(width)});
    c.label("cin", {cin, 1});
    c.label("cout", {cout, 1});
    return c;
}

}  // namespace qbs
