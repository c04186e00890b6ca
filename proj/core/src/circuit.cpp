#include "qbs/circuit.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <cstring>

#include "qbs/error.hpp"

namespace qbs {

std::size_t simulator_capacity() {
    const char* env = std::getenv("QBS_MAX_QUBITS");
    if (env == nullptr) return kDefaultMaxQubits;
    std::size_t value = 0;
    const char* end = env + std::strlen(env);
    auto [ptr, ec] = std::from_chars(env, end, value);
    if (ec != std::errc{} || ptr != end || value == 0 || value > kDefaultMaxQubits) {
        return kDefaultMaxQubits;
    }
    return value;
}

std::string_view to_string(GateKind kind) {
    switch (kind) {
        case GateKind::H: return "h";
        case GateKind::X: return "x";
        case GateKind::CX: return "cx";
        case GateKind::CCX: return "ccx";
        case GateKind::MCX: return "mcx";
    }
    return "?";
}

GateOp GateOp::h(Qubit target) { return {GateKind::H, {}, target}; }
GateOp GateOp::x(Qubit target) { return {GateKind::X, {}, target}; }
GateOp GateOp::cx(Qubit control, Qubit target) { return {GateKind::CX, {control}, target}; }
GateOp GateOp::ccx(Qubit control0, Qubit control1, Qubit target) {
    return {GateKind::CCX, {control0, control1}, target};
}
GateOp GateOp::mcx(std::vector<Qubit> controls, Qubit target) {
    return {GateKind::MCX, std::move(controls), target};
}

Circuit::Circuit(std::size_t num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits == 0) throw InvalidArgument("circuit needs at least one qubit");
    const std::size_t cap = simulator_capacity();
    if (num_qubits > cap) {
        throw ConfigError("circuit of " + std::to_string(num_qubits) +
                          " qubits exceeds the simulator capacity of " + std::to_string(cap) +
                          " qubits");
    }
}

void Circuit::validate(const GateOp& gate) const {
    std::size_t want_min = 0;
    std::size_t want_max = 0;
    switch (gate.kind) {
        case GateKind::H:
        case GateKind::X: break;
        case GateKind::CX: want_min = want_max = 1; break;
        case GateKind::CCX: want_min = want_max = 2; break;
        case GateKind::MCX:
            want_min = 1;
            want_max = num_qubits_ - 1;
            break;
    }
    const std::size_t k = gate.controls.size();
    if (k < want_min || k > want_max) {
        throw InvalidArgument(std::string(to_string(gate.kind)) + " gate given " +
                              std::to_string(k) + " controls");
    }
    if (gate.target >= num_qubits_) {
        throw InvalidArgument("target qubit " + std::to_string(gate.target) + " out of range for " +
                              std::to_string(num_qubits_) + "-qubit circuit");
    }
    for (std::size_t i = 0; i < k; ++i) {
        const Qubit c = gate.controls[i];
        if (c >= num_qubits_) {
            throw InvalidArgument("control qubit " + std::to_string(c) + " out of range for " +
                                  std::to_string(num_qubits_) + "-qubit circuit");
        }
        if (c == gate.target) {
            throw InvalidArgument("control qubit " + std::to_string(c) + " equals the target");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (gate.controls[j] == c) {
                throw InvalidArgument("duplicate control qubit " + std::to_string(c));
            }
        }
    }
}

Circuit& Circuit::append(GateOp gate) {
    validate(gate);
    gates_.push_back(std::move(gate));
    return *this;
}

Circuit& Circuit::append(const Circuit& fragment, std::span<const Qubit> mapping) {
    if (mapping.size() != fragment.num_qubits()) {
        throw InvalidArgument("qubit mapping has " + std::to_string(mapping.size()) +
                              " entries for a " + std::to_string(fragment.num_qubits()) +
                              "-qubit fragment");
    }
    std::vector<GateOp> mapped;
    mapped.reserve(fragment.size());
    for (const GateOp& g : fragment.gates()) {
        GateOp m{g.kind, {}, mapping[g.target]};
        m.controls.reserve(g.controls.size());
        for (Qubit c : g.controls) m.controls.push_back(mapping[c]);
        validate(m);
        mapped.push_back(std::move(m));
    }
    // All-or-nothing: nothing is appended if any mapped gate is invalid.
    gates_.insert(gates_.end(), std::make_move_iterator(mapped.begin()),
                  std::make_move_iterator(mapped.end()));
    return *this;
}

Circuit& Circuit::append(const Circuit& fragment, Qubit offset) {
    std::vector<Qubit> mapping(fragment.num_qubits());
    for (std::size_t k = 0; k < mapping.size(); ++k) mapping[k] = offset + static_cast<Qubit>(k);
    return append(fragment, mapping);
}

void Circuit::label(std::string name, QubitRange range) {
    if (range.size == 0 || range.end() > num_qubits_) {
        throw InvalidArgument("register '" + name + "' does not fit the circuit");
    }
    registers_.insert_or_assign(std::move(name), range);
}

std::optional<QubitRange> Circuit::find_register(std::string_view name) const {
    auto it = registers_.find(name);
    if (it == registers_.end()) return std::nullopt;
    return it->second;
}

Circuit Circuit::inverse() const {
    Circuit out(num_qubits_);
    out.registers_ = registers_;
    out.gates_.assign(gates_.rbegin(), gates_.rend());
    return out;
}

bool Circuit::is_classical() const noexcept { return count(GateKind::H) == 0; }

std::size_t Circuit::count(GateKind kind) const noexcept {
    return static_cast<std::size_t>(
        std::count_if(gates_.begin(), gates_.end(), [kind](const GateOp& g) { return g.kind == kind; }));
}

}  // namespace qbs
