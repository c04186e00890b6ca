#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qbs/replication.hpp"
#include "qbs/table.hpp"

namespace qbs {

enum class CompareOp { Eq, Ne, Lt, Le, Gt, Ge };

std::string_view to_string(CompareOp op);
// Accepts = == != <> ≠ < <= ≤ > >= ≥.
CompareOp parse_compare_op(std::string_view text);

struct Condition {
    std::string column;
    CompareOp op = CompareOp::Eq;
    Value literal;
};

/// SELECT aggregate(target) FROM table WHERE c1 AND c2 AND ...
struct QuerySpec {
    Aggregate aggregate = Aggregate::Count;
    std::optional<std::string> target_column;
    std::vector<Condition> conditions;

    // Checks column existence and type compatibility against `table`.
    void validate(const TableData& table) const;
};

// {"aggregate": "COUNT", "target_column": "x", "conditions": [{"column", "op", "value"}]}
QuerySpec parse_query(std::string_view json_text);
QuerySpec load_query(const std::filesystem::path& path);

// Numeric columns compare numerically (exactly when both sides are
// integers); string columns compare bytewise. Mixing kinds throws.
bool compare(const Value& cell, CompareOp op, const Value& literal);

// Conjunction of every condition on one row; true when there are none.
bool matches(const TableData& table, std::size_t row, const QuerySpec& query);

struct SampledRows {
    std::vector<std::size_t> rows;
    std::uint64_t population = 0;

    std::size_t n() const noexcept { return rows.size(); }
    double f() const noexcept { return static_cast<double>(rows.size()) / static_cast<double>(population); }
};

// Uniform sample of n rows without replacement (partial Fisher-Yates).
SampledRows draw_sample(const TableData& table, std::size_t n, std::uint64_t seed);

/// Per-tuple results y_i: the predicate bit for COUNT; for SUM/AVG the target
/// value if the predicate holds and 0 otherwise. SUM/AVG targets must be
/// non-negative whole numbers so they can be encoded in a value register.
SampleResults tuple_results(const TableData& table, const SampledRows& sample, const QuerySpec& query);

}  // namespace qbs
