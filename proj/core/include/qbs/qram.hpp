#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <variant>
#include <vector>

#include "qbs/circuit.hpp"

namespace qbs {

// One bit per address. Length must be a power of two, at least 2.
class BitDataArray {
public:
    explicit BitDataArray(std::vector<std::uint8_t> bits);

    std::size_t size() const noexcept { return bits_.size(); }
    std::size_t address_width() const noexcept { return address_width_; }
    std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
    std::span<const std::uint8_t> bits() const noexcept { return bits_; }
    std::size_t ones() const noexcept;

private:
    std::vector<std::uint8_t> bits_;
    std::size_t address_width_;
};

// Fixed-width unsigned value per address.
class ValueDataArray {
public:
    ValueDataArray(std::vector<std::uint64_t> values, std::size_t width);

    std::size_t size() const noexcept { return values_.size(); }
    std::size_t address_width() const noexcept { return address_width_; }
    std::size_t width() const noexcept { return width_; }
    std::uint64_t operator[](std::size_t i) const { return values_[i]; }
    std::span<const std::uint64_t> values() const noexcept { return values_; }

private:
    std::vector<std::uint64_t> values_;
    std::size_t width_;
    std::size_t address_width_;
};

/// Lookup fragment |i>|0> -> |i>|data[i]>.
///
/// Qubits [0, a) are the address (qubit 0 = address LSB), qubit a is the data
/// qubit. For each address with data 1 the fragment emits X on every address
/// qubit whose bit of i is 0, one MCX from all address qubits onto the data
/// qubit, then the same X gates again so the address is restored.
Circuit build_bit_qram(const BitDataArray& data);

// Same layout with a `width`-qubit data register at [a, a + width), value
// LSB on qubit a. One MCX per set bit, sharing the address X sandwich.
Circuit build_value_qram(const ValueDataArray& data);

// Hadamard on every address qubit followed by build_bit_qram. One
// measurement yields a uniformly random (address, data[address]) pair.
Circuit build_qsa(const BitDataArray& data);

// Resampler for SUM/AVG tuples: address [0, a), value register
// [a, a + width), and a match-flag qubit at a + width loaded from `matches`.
// Both arrays must have the same length.
Circuit build_value_qsa(const ValueDataArray& values, const BitDataArray& matches);

using DataArray = std::variant<BitDataArray, ValueDataArray>;

// Parses {"bits": [...]} or {"values": [...], "width": w}.
DataArray parse_data_array(std::string_view json_text);
DataArray load_data_array(const std::filesystem::path& path);

}  // namespace qbs
