#include "qbs/qram.hpp"

#include <bit>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qbs/error.hpp"

namespace qbs {

namespace {

std::size_t checked_address_width(std::size_t length) {
    if (length < 2 || !std::has_single_bit(length)) {
        throw InvalidArgument("data array length " + std::to_string(length) +
                              " is not a power of two (at least 2)");
    }
    return static_cast<std::size_t>(std::countr_zero(length));
}

// X on each address qubit whose bit of `address` is 0.
void flip_zero_bits(Circuit& c, std::size_t address, std::size_t width) {
    for (std::size_t q = 0; q < width; ++q) {
        if (((address >> q) & 1U) == 0) c.x(static_cast<Qubit>(q));
    }
}

std::vector<Qubit> address_qubits(std::size_t width) {
    std::vector<Qubit> out(width);
    for (std::size_t q = 0; q < width; ++q) out[q] = static_cast<Qubit>(q);
    return out;
}

}  // namespace

BitDataArray::BitDataArray(std::vector<std::uint8_t> bits)
    : bits_(std::move(bits)), address_width_(checked_address_width(bits_.size())) {
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        if (bits_[i] > 1) {
            throw InvalidArgument("bit data entry " + std::to_string(i) + " is not 0 or 1");
        }
    }
}

std::size_t BitDataArray::ones() const noexcept {
    std::size_t n = 0;
    for (auto b : bits_) n += b;
    return n;
}

ValueDataArray::ValueDataArray(std::vector<std::uint64_t> values, std::size_t width)
    : values_(std::move(values)), width_(width), address_width_(checked_address_width(values_.size())) {
    if (width == 0 || width > 63) throw InvalidArgument("value width must be in [1, 63]");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if ((values_[i] >> width) != 0) {
            throw InvalidArgument("value " + std::to_string(values_[i]) + " at address " +
                                  std::to_string(i) + " does not fit in " + std::to_string(width) +
                                  " bits");
        }
    }
}

Circuit build_bit_qram(const BitDataArray& data) {
    const std::size_t a = data.address_width();
    Circuit c(a + 1);
    const auto controls = address_qubits(a);
    const auto data_qubit = static_cast<Qubit>(a);
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (data[i] == 0) continue;
        flip_zero_bits(c, i, a);
        c.mcx(controls, data_qubit);
        flip_zero_bits(c, i, a);
    }
    c.label("addr", {0, static_cast<Qubit>(a)});
    c.label("data", {data_qubit, 1});
    return c;
}

Circuit build_value_qram(const ValueDataArray& data) {
    const std::size_t a = data.address_width();
    const std::size_t w = data.width();
    Circuit c(a + w);
    const auto controls = address_qubits(a);
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (data[i] == 0) continue;
        flip_zero_bits(c, i, a);
        for (std::size_t b = 0; b < w; ++b) {
            if ((data[i] >> b) & 1U) c.mcx(controls, static_cast<Qubit>(a + b));
        }
        flip_zero_bits(c, i, a);
    }
    c.label("addr", {0, static_cast<Qubit>(a)});
    c.label("data", {static_cast<Qubit>(a), static_cast<Qubit>(w)});
    return c;
}

Circuit build_qsa(const BitDataArray& data) {
    const std::size_t a = data.address_width();
    Circuit c(a + 1);
    for (std::size_t q = 0; q < a; ++q) c.h(static_cast<Qubit>(q));
    c.append(build_bit_qram(data), Qubit{0});
    c.label("addr", {0, static_cast<Qubit>(a)});
    c.label("data", {static_cast<Qubit>(a), 1});
    return c;
}

Circuit build_value_qsa(const ValueDataArray& values, const BitDataArray& matches) {
    if (values.size() != matches.size()) {
        throw InvalidArgument("value and match arrays differ in length");
    }
    const std::size_t a = values.address_width();
    const std::size_t w = values.width();
    Circuit c(a + w + 1);
    for (std::size_t q = 0; q < a; ++q) c.h(static_cast<Qubit>(q));
    c.append(build_value_qram(values), Qubit{0});

    // The flag lookup shares the address register but targets qubit a + w.
    std::vector<Qubit> mapping = address_qubits(a);
    mapping.push_back(static_cast<Qubit>(a + w));
    c.append(build_bit_qram(matches), mapping);

    c.label("addr", {0, static_cast<Qubit>(a)});
    c.label("data", {static_cast<Qubit>(a), static_cast<Qubit>(w)});
    c.label("match", {static_cast<Qubit>(a + w), 1});
    return c;
}

DataArray parse_data_array(std::string_view json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("data file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("data file must hold a JSON object");
    try {
        if (doc.contains("bits")) {
            std::vector<std::uint8_t> bits;
            for (const auto& v : doc.at("bits")) {
                if (!v.is_number_integer()) throw ParseError("\"bits\" entries must be 0 or 1");
                const auto b = v.get<std::int64_t>();
                if (b != 0 && b != 1) throw ParseError("\"bits\" entries must be 0 or 1");
                bits.push_back(static_cast<std::uint8_t>(b));
            }
            return BitDataArray(std::move(bits));
        }
        if (doc.contains("values")) {
            if (!doc.contains("width")) throw ParseError("\"values\" requires a \"width\" field");
            std::vector<std::uint64_t> values;
            for (const auto& v : doc.at("values")) {
                if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
                    throw ParseError("\"values\" entries must be non-negative integers");
                }
                values.push_back(v.get<std::uint64_t>());
            }
            return ValueDataArray(std::move(values), doc.at("width").get<std::size_t>());
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed data file: ") + e.what());
    }
    throw ParseError("data file needs a \"bits\" or \"values\" field");
}

DataArray load_data_array(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open data file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_data_array(ss.str());
}

}  // namespace qbs
