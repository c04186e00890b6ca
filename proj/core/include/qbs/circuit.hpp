#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qbs {

using Qubit = std::uint32_t;
using BasisState = std::uint64_t;

// Default ceiling on circuit width: 2^26 complex doubles is about 1 GiB.
inline constexpr std::size_t kDefaultMaxQubits = 26;

// Effective qubit cap. The QBS_MAX_QUBITS environment variable may lower it
// (never raise it); malformed or out-of-range values are ignored.
std::size_t simulator_capacity();

enum class GateKind { H, X, CX, CCX, MCX };

std::string_view to_string(GateKind kind);

struct GateOp {
    GateKind kind = GateKind::X;
    std::vector<Qubit> controls;
    Qubit target = 0;

    static GateOp h(Qubit target);
    static GateOp x(Qubit target);
    static GateOp cx(Qubit control, Qubit target);
    static GateOp ccx(Qubit control0, Qubit control1, Qubit target);
    static GateOp mcx(std::vector<Qubit> controls, Qubit target);

    friend bool operator==(const GateOp&, const GateOp&) = default;
};

// Contiguous block of qubits [first, first + size).
struct QubitRange {
    Qubit first = 0;
    Qubit size = 0;

    Qubit operator[](std::size_t i) const { return first + static_cast<Qubit>(i); }
    Qubit end() const { return first + size; }

    friend bool operator==(const QubitRange&, const QubitRange&) = default;
};

/// Ordered gate list over a fixed number of qubits, all starting in |0>.
///
/// Gates are validated on append: indices must be in range and pairwise
/// distinct, and the arity must match the gate kind (H/X none, CX one, CCX
/// two, MCX at least one control). Qubit 0 is the least-significant bit of
/// every basis-state index.
class Circuit {
public:
    using RegisterMap = std::map<std::string, QubitRange, std::less<>>;

    // Throws InvalidArgument for zero qubits and ConfigError above
    // simulator_capacity().
    explicit Circuit(std::size_t num_qubits);

    std::size_t num_qubits() const noexcept { return num_qubits_; }
    const std::vector<GateOp>& gates() const noexcept { return gates_; }
    std::size_t size() const noexcept { return gates_.size(); }
    bool empty() const noexcept { return gates_.empty(); }

    Circuit& append(GateOp gate);
    Circuit& h(Qubit target) { return append(GateOp::h(target)); }
    Circuit& x(Qubit target) { return append(GateOp::x(target)); }
    Circuit& cx(Qubit control, Qubit target) { return append(GateOp::cx(control, target)); }
    Circuit& ccx(Qubit c0, Qubit c1, Qubit target) { return append(GateOp::ccx(c0, c1, target)); }
    Circuit& mcx(std::vector<Qubit> controls, Qubit target) {
        return append(GateOp::mcx(std::move(controls), target));
    }

    // Appends every gate of `fragment`, relabelling fragment qubit k as
    // mapping[k]. Fragment register labels are not carried over.
    Circuit& append(const Circuit& fragment, std::span<const Qubit> mapping);
    // Same, with fragment qubit k placed at host qubit offset + k.
    Circuit& append(const Circuit& fragment, Qubit offset);

    void label(std::string name, QubitRange range);
    const RegisterMap& registers() const noexcept { return registers_; }
    std::optional<QubitRange> find_register(std::string_view name) const;

    // Gates in reverse order. Every supported gate is an involution, so this
    // is the inverse circuit.
    Circuit inverse() const;

    // True when the circuit holds only permutation gates (no H).
    bool is_classical() const noexcept;

    std::size_t count(GateKind kind) const noexcept;

private:
    void validate(const GateOp& gate) const;

    std::size_t num_qubits_;
    std::vector<GateOp> gates_;
    RegisterMap registers_;
};

}  // namespace qbs
