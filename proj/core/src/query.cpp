#include "qbs/query.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qbs/error.hpp"
#include "qbs/rng.hpp"

namespace qbs {

namespace {

bool is_numeric(const Value& v) { return !std::holds_alternative<std::string>(v); }

double as_double(const Value& v) {
    if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
    return std::get<double>(v);
}

template <typename T>
bool apply(const T& lhs, CompareOp op, const T& rhs) {
    switch (op) {
        case CompareOp::Eq: return lhs == rhs;
        case CompareOp::Ne: return lhs != rhs;
        case CompareOp::Lt: return lhs < rhs;
        case CompareOp::Le: return lhs <= rhs;
        case CompareOp::Gt: return lhs > rhs;
        case CompareOp::Ge: return lhs >= rhs;
    }
    return false;
}

}  // namespace

std::string_view to_string(CompareOp op) {
    switch (op) {
        case CompareOp::Eq: return "=";
        case CompareOp::Ne: return "!=";
        case CompareOp::Lt: return "<";
        case CompareOp::Le: return "<=";
        case CompareOp::Gt: return ">";
        case CompareOp::Ge: return ">=";
    }
    return "?";
}

CompareOp parse_compare_op(std::string_view text) {
    if (text == "=" || text == "==") return CompareOp::Eq;
    if (text == "!=" || text == "<>" || text == "≠") return CompareOp::Ne;
    if (text == "<") return CompareOp::Lt;
    if (text == "<=" || text == "≤") return CompareOp::Le;
    if (text == ">") return CompareOp::Gt;
    if (text == ">=" || text == "≥") return CompareOp::Ge;
    throw ParseError("unknown comparison operator '" + std::string(text) + "'");
}

bool compare(const Value& cell, CompareOp op, const Value& literal) {
    if (is_numeric(cell) != is_numeric(literal)) {
        throw InvalidArgument("type mismatch: cannot compare a string with a number");
    }
    if (!is_numeric(cell)) return apply(std::get<std::string>(cell), op, std::get<std::string>(literal));
    const auto* li = std::get_if<std::int64_t>(&cell);
    const auto* ri = std::get_if<std::int64_t>(&literal);
    if (li && ri) return apply(*li, op, *ri);
    return apply(as_double(cell), op, as_double(literal));
}

void QuerySpec::validate(const TableData& table) const {
    if (aggregate == Aggregate::Count) {
        if (target_column) throw InvalidArgument("COUNT takes no target column");
    } else {
        if (!target_column) throw InvalidArgument(std::string(to_string(aggregate)) + " requires a target column");
        const auto idx = table.column_index(*target_column);
        if (!idx) throw InvalidArgument("unknown column '" + *target_column + "'");
        if (table.columns()[*idx].type == ColumnType::String) {
            throw InvalidArgument("type mismatch: target column '" + *target_column + "' is not numeric");
        }
    }
    for (const Condition& c : conditions) {
        const auto idx = table.column_index(c.column);
        if (!idx) throw InvalidArgument("unknown column '" + c.column + "'");
        const bool column_numeric = table.columns()[*idx].type != ColumnType::String;
        if (column_numeric != is_numeric(c.literal)) {
            throw InvalidArgument("type mismatch: column '" + c.column + "' is " +
                                  std::string(to_string(table.columns()[*idx].type)) +
                                  " but the literal is not");
        }
    }
}

QuerySpec parse_query(std::string_view json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("query is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("aggregate") || !doc.at("aggregate").is_string()) {
        throw ParseError("query needs an \"aggregate\" string");
    }
    QuerySpec q;
    q.aggregate = parse_aggregate(doc.at("aggregate").get<std::string>());
    if (doc.contains("target_column") && !doc.at("target_column").is_null()) {
        if (!doc.at("target_column").is_string()) throw ParseError("\"target_column\" must be a string");
        q.target_column = doc.at("target_column").get<std::string>();
    }
    if (doc.contains("conditions")) {
        for (const auto& c : doc.at("conditions")) {
            if (!c.is_object() || !c.contains("column") || !c.contains("op") || !c.contains("value") ||
                !c.at("column").is_string() || !c.at("op").is_string()) {
                throw ParseError("each condition needs \"column\", \"op\" and \"value\"");
            }
            Condition cond;
            cond.column = c.at("column").get<std::string>();
            cond.op = parse_compare_op(c.at("op").get<std::string>());
            const auto& v = c.at("value");
            if (v.is_number_integer()) {
                cond.literal = v.get<std::int64_t>();
            } else if (v.is_number()) {
                cond.literal = v.get<double>();
            } else if (v.is_string()) {
                cond.literal = v.get<std::string>();
            } else {
                throw ParseError("condition value must be a number or string");
            }
            q.conditions.push_back(std::move(cond));
        }
    }
    return q;
}

QuerySpec load_query(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open query file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_query(ss.str());
}

bool matches(const TableData& table, std::size_t row, const QuerySpec& query) {
    for (const Condition& c : query.conditions) {
        const auto idx = table.column_index(c.column);
        if (!idx) throw InvalidArgument("unknown column '" + c.column + "'");
        if (!compare(table.at(row, *idx), c.op, c.literal)) return false;
    }
    return true;
}

SampledRows draw_sample(const TableData& table, std::size_t n, std::uint64_t seed) {
    const std::size_t population = table.size();
    if (n == 0) throw InvalidArgument("sample size must be positive");
    if (n > population) {
        throw InvalidArgument("sample size " + std::to_string(n) + " exceeds table size " +
                              std::to_string(population));
    }
    std::vector<std::size_t> idx(population);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    Rng rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(population - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(n);
    return {std::move(idx), population};
}

SampleResults tuple_results(const TableData& table, const SampledRows& sample, const QuerySpec& query) {
    query.validate(table);
    std::vector<std::uint8_t> flags;
    flags.reserve(sample.n());
    for (std::size_t row : sample.rows) {
        if (row >= table.size()) throw InvalidArgument("sampled row index out of range");
        flags.push_back(matches(table, row, query) ? 1 : 0);
    }
    if (query.aggregate == Aggregate::Count) return SampleResults::count(std::move(flags), sample.population);

    const std::size_t target = *table.column_index(*query.target_column);
    std::vector<std::uint64_t> values(sample.n(), 0);
    for (std::size_t i = 0; i < sample.n(); ++i) {
        if (!flags[i]) continue;
        const Value& cell = table.at(sample.rows[i], target);
        if (const auto* iv = std::get_if<std::int64_t>(&cell)) {
            if (*iv < 0) throw InvalidArgument("type mismatch: SUM/AVG values must be non-negative");
            values[i] = static_cast<std::uint64_t>(*iv);
            continue;
        }
        const double v = std::get<double>(cell);
        if (v < 0 || v != std::floor(v) || v > 9.0e15) {
            throw InvalidArgument("type mismatch: SUM/AVG values must be non-negative whole numbers");
        }
        values[i] = static_cast<std::uint64_t>(v);
    }
    return SampleResults::values(query.aggregate, std::move(values), std::move(flags), sample.population);
}

}  // namespace qbs
