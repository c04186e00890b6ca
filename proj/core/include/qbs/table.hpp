#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace qbs {

enum class ColumnType { Integer, Real, String };

std::string_view to_string(ColumnType type);

using Value = std::variant<std::int64_t, double, std::string>;

struct Column {
    std::string name;
    ColumnType type = ColumnType::String;
};

/// Typed, row-major in-memory relation.
class TableData {
public:
    TableData(std::vector<Column> columns, std::vector<std::vector<Value>> rows);

    const std::vector<Column>& columns() const noexcept { return columns_; }
    const std::vector<std::vector<Value>>& rows() const noexcept { return rows_; }
    std::size_t size() const noexcept { return rows_.size(); }  // N
    std::optional<std::size_t> column_index(std::string_view name) const;
    const Value& at(std::size_t row, std::size_t column) const { return rows_[row][column]; }

private:
    std::vector<Column> columns_;
    std::vector<std::vector<Value>> rows_;
};

enum class TableFormat { Auto, Csv, Json };

// CSV with a header row. Fields may be double-quoted ("" escapes a quote).
// Column types are inferred: integer if every field parses as a 64-bit
// integer, else real if every field parses as a double, else string.
TableData parse_csv(std::string_view text);

// {"columns": [name | {"name": ..., "type": "integer"|"real"|"string"}],
//  "rows": [[...], ...]}. Untyped columns are inferred like CSV.
TableData parse_json_table(std::string_view text);

// Auto picks JSON for a .json extension and CSV otherwise.
TableData load_table(const std::filesystem::path& path, TableFormat format = TableFormat::Auto);

}  // namespace qbs
