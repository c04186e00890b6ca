#include "qbs/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <nlohmann/json.hpp>

#include "qbs/error.hpp"

namespace qbs {

namespace {

void check_capacity(std::size_t num_qubits) {
    if (num_qubits == 0) throw InvalidArgument("state needs at least one qubit");
    const std::size_t cap = simulator_capacity();
    if (num_qubits > cap) {
        throw ConfigError("state of " + std::to_string(num_qubits) +
                          " qubits exceeds the simulator capacity of " + std::to_string(cap) +
                          " qubits");
    }
}

BasisState control_mask(const GateOp& gate) {
    BasisState mask = 0;
    for (Qubit c : gate.controls) mask |= BasisState{1} << c;
    return mask;
}

}  // namespace

StateVector::StateVector(std::size_t num_qubits) : num_qubits_(num_qubits) {
    check_capacity(num_qubits);
    amplitudes_.assign(std::size_t{1} << num_qubits, Amplitude{0.0, 0.0});
    amplitudes_[0] = 1.0;
}

StateVector StateVector::basis(std::size_t num_qubits, BasisState index) {
    StateVector s(num_qubits);
    if (index >= s.dimension()) {
        throw InvalidArgument("basis index " + std::to_string(index) + " out of range for " +
                              std::to_string(num_qubits) + " qubits");
    }
    s.amplitudes_[0] = 0.0;
    s.amplitudes_[index] = 1.0;
    return s;
}

void StateVector::apply(const GateOp& gate) {
    if (gate.target >= num_qubits_) throw InvalidArgument("gate target outside state");
    for (Qubit c : gate.controls) {
        if (c >= num_qubits_) throw InvalidArgument("gate control outside state");
    }
    const BasisState tbit = BasisState{1} << gate.target;
    const BasisState dim = amplitudes_.size();

    if (gate.kind == GateKind::H) {
        const double s = std::numbers::sqrt2 / 2.0;
        for (BasisState i = 0; i < dim; ++i) {
            if (i & tbit) continue;
            const Amplitude a = amplitudes_[i];
            const Amplitude b = amplitudes_[i | tbit];
            amplitudes_[i] = (a + b) * s;
            amplitudes_[i | tbit] = (a - b) * s;
        }
        return;
    }

    // X, CX, CCX and MCX are all the same controlled swap of paired amplitudes.
    const BasisState mask = control_mask(gate);
    for (BasisState i = 0; i < dim; ++i) {
        if ((i & tbit) || (i & mask) != mask) continue;
        std::swap(amplitudes_[i], amplitudes_[i | tbit]);
    }
}

void StateVector::apply(const Circuit& circuit) {
    if (circuit.num_qubits() != num_qubits_) {
        throw InvalidArgument("circuit width " + std::to_string(circuit.num_qubits()) +
                              " does not match state width " + std::to_string(num_qubits_));
    }
    for (const GateOp& g : circuit.gates()) apply(g);
}

double StateVector::norm_squared() const noexcept {
    double sum = 0.0;
    for (const Amplitude& a : amplitudes_) sum += std::norm(a);
    return sum;
}

std::vector<double> StateVector::probabilities() const {
    std::vector<double> p(amplitudes_.size());
    std::transform(amplitudes_.begin(), amplitudes_.end(), p.begin(),
                   [](const Amplitude& a) { return std::norm(a); });
    return p;
}

std::string StateVector::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const Amplitude& a : amplitudes_) arr.push_back({a.real(), a.imag()});
    return arr.dump();
}

StateVector simulate(const Circuit& circuit) { return simulate(circuit, StateVector(circuit.num_qubits())); }

StateVector simulate(const Circuit& circuit, StateVector initial) {
    initial.apply(circuit);
    return initial;
}

BasisState simulate_basis(const Circuit& circuit, BasisState input) {
    if (circuit.num_qubits() < 64 && (input >> circuit.num_qubits()) != 0) {
        throw InvalidArgument("basis input has bits beyond the circuit width");
    }
    BasisState state = input;
    for (const GateOp& g : circuit.gates()) {
        if (g.kind == GateKind::H) {
            throw InvalidArgument("basis-state simulation cannot apply a Hadamard gate");
        }
        const BasisState mask = control_mask(g);
        if ((state & mask) == mask) state ^= BasisState{1} << g.target;
    }
    return state;
}

std::string Bitstring::str() const {
    std::string s(width, '0');
    for (std::size_t q = 0; q < width; ++q) {
        if (bit(q)) s[width - 1 - q] = '1';
    }
    return s;
}

std::string Bitstring::raw() const {
    std::string s(width, '0');
    for (std::size_t q = 0; q < width; ++q) {
        if (bit(q)) s[q] = '1';
    }
    return s;
}

Bitstring parse_bitstring(std::string_view text) {
    if (text.empty() || text.size() > 64) {
        throw ParseError("bitstring must have between 1 and 64 characters");
    }
    Bitstring b{0, text.size()};
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[text.size() - 1 - i];
        if (c == '1') {
            b.value |= BasisState{1} << i;
        } else if (c != '0') {
            throw ParseError("invalid character '" + std::string(1, c) + "' in bitstring");
        }
    }
    return b;
}

BasisState extract(BasisState value, QubitRange range) {
    if (range.size >= 64) return value >> range.first;
    return (value >> range.first) & ((BasisState{1} << range.size) - 1);
}

void CountsTable::add(BasisState outcome, std::uint64_t times) {
    if (width_ < 64 && (outcome >> width_) != 0) {
        throw InvalidArgument("outcome wider than the counts table");
    }
    entries_[outcome] += times;
    shots_ += times;
}

std::uint64_t CountsTable::count(BasisState outcome) const {
    auto it = entries_.find(outcome);
    return it == entries_.end() ? 0 : it->second;
}

std::map<std::string, std::uint64_t> CountsTable::by_bitstring() const {
    std::map<std::string, std::uint64_t> out;
    for (const auto& [state, n] : entries_) out.emplace(Bitstring{state, width_}.str(), n);
    return out;
}

Sampler::Sampler(const StateVector& state) : width_(state.num_qubits()) {
    cumulative_.reserve(state.dimension());
    double acc = 0.0;
    for (const Amplitude& a : state.amplitudes()) {
        acc += std::norm(a);
        cumulative_.push_back(acc);
    }
}

BasisState Sampler::draw(Rng& rng) const {
    // Scale by the accumulated total so rounding in the last ulp can never
    // push a draw past the end of the table.
    const double u = rng.uniform() * cumulative_.back();
    // upper_bound skips zero-probability states, whose cumulative value
    // equals their predecessor's.
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    if (it == cumulative_.end()) {
        it = std::lower_bound(cumulative_.begin(), cumulative_.end(), cumulative_.back());
    }
    return static_cast<BasisState>(it - cumulative_.begin());
}

CountsTable sample(const Circuit& circuit, std::uint64_t shots, std::uint64_t seed) {
    if (shots == 0) throw InvalidArgument("shots must be positive");
    const Sampler sampler(circuit);
    Rng rng(seed);
    CountsTable counts(circuit.num_qubits());
    for (std::uint64_t s = 0; s < shots; ++s) counts.add(sampler.draw(rng));
    return counts;
}

Bitstring measure_once(const Circuit& circuit, std::uint64_t seed) {
    const Sampler sampler(circuit);
    Rng rng(seed);
    return {sampler.draw(rng), circuit.num_qubits()};
}

}  // namespace qbs
