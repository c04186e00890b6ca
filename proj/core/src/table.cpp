#include "qbs/table.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qbs/error.hpp"

namespace qbs {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

std::optional<std::int64_t> parse_int(std::string_view s) {
    s = trim(s);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

std::optional<double> parse_real(std::string_view s) {
    s = trim(s);
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

ColumnType infer(const std::vector<std::string>& fields) {
    bool all_int = true;
    for (const auto& f : fields) {
        if (!parse_int(f)) {
            all_int = false;
            break;
        }
    }
    if (all_int) return ColumnType::Integer;
    for (const auto& f : fields) {
        if (!parse_real(f)) return ColumnType::String;
    }
    return ColumnType::Real;
}

Value convert(const std::string& field, ColumnType type, const std::string& where) {
    switch (type) {
        case ColumnType::Integer:
            if (auto v = parse_int(field)) return *v;
            break;
        case ColumnType::Real:
            if (auto v = parse_real(field)) return *v;
            break;
        case ColumnType::String: return field;
    }
    throw ParseError(where + ": cannot parse '" + field + "' as " + std::string(to_string(type)));
}

// Builds a typed table from string cells; explicit types (if any) win over
// inference.
TableData build(std::vector<std::string> names, std::vector<std::optional<ColumnType>> declared,
                const std::vector<std::vector<std::string>>& cells, const std::vector<std::size_t>& lines,
                const std::string& line_word) {
    if (cells.empty()) throw ParseError("table has no rows");
    std::vector<Column> columns;
    for (std::size_t c = 0; c < names.size(); ++c) {
        ColumnType type;
        if (declared[c]) {
            type = *declared[c];
        } else {
            std::vector<std::string> column;
            column.reserve(cells.size());
            for (const auto& row : cells) column.push_back(row[c]);
            type = infer(column);
        }
        columns.push_back({std::move(names[c]), type});
    }
    std::vector<std::vector<Value>> rows;
    rows.reserve(cells.size());
    for (std::size_t r = 0; r < cells.size(); ++r) {
        std::vector<Value> row;
        row.reserve(columns.size());
        for (std::size_t c = 0; c < columns.size(); ++c) {
            row.push_back(convert(cells[r][c], columns[c].type,
                                  line_word + " " + std::to_string(lines[r]) + ", column '" +
                                      columns[c].name + "'"));
        }
        rows.push_back(std::move(row));
    }
    return TableData(std::move(columns), std::move(rows));
}

// Splits CSV text into records, honouring double-quoted fields. Records are
// paired with the 1-based line on which they start.
std::vector<std::pair<std::size_t, std::vector<std::string>>> split_csv(std::string_view text) {
    std::vector<std::pair<std::size_t, std::vector<std::string>>> records;
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    bool any = false;
    std::size_t line = 1;
    std::size_t record_line = 1;

    const auto end_record = [&] {
        fields.push_back(std::move(field));
        field.clear();
        const bool blank = fields.size() == 1 && fields[0].empty() && !any;
        if (!blank) records.emplace_back(record_line, std::move(fields));
        fields.clear();
        any = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char ch = text[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                if (ch == '\n') ++line;
                field.push_back(ch);
            }
            continue;
        }
        switch (ch) {
            case '"':
                quoted = true;
                any = true;
                break;
            case ',':
                fields.push_back(std::move(field));
                field.clear();
                any = true;
                break;
            case '\r': break;
            case '\n':
                end_record();
                record_line = ++line;
                break;
            default: field.push_back(ch); any = true;
        }
    }
    if (quoted) throw ParseError("line " + std::to_string(record_line) + ": unterminated quoted field");
    if (any || !field.empty() || !fields.empty()) end_record();
    return records;
}

std::optional<ColumnType> parse_type(const std::string& t) {
    if (t == "integer" || t == "int") return ColumnType::Integer;
    if (t == "real" || t == "double" || t == "float") return ColumnType::Real;
    if (t == "string" || t == "text") return ColumnType::String;
    throw ParseError("unknown column type '" + t + "'");
}

}  // namespace

std::string_view to_string(ColumnType type) {
    switch (type) {
        case ColumnType::Integer: return "integer";
        case ColumnType::Real: return "real";
        case ColumnType::String: return "string";
    }
    return "?";
}

TableData::TableData(std::vector<Column> columns, std::vector<std::vector<Value>> rows)
    : columns_(std::move(columns)), rows_(std::move(rows)) {
    if (columns_.empty()) throw InvalidArgument("table has no columns");
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (rows_[r].size() != columns_.size()) {
            throw InvalidArgument("row " + std::to_string(r) + " has " + std::to_string(rows_[r].size()) +
                                  " fields, expected " + std::to_string(columns_.size()));
        }
        for (std::size_t c = 0; c < columns_.size(); ++c) {
            const bool ok = (columns_[c].type == ColumnType::Integer && std::holds_alternative<std::int64_t>(rows_[r][c])) ||
                            (columns_[c].type == ColumnType::Real && std::holds_alternative<double>(rows_[r][c])) ||
                            (columns_[c].type == ColumnType::String && std::holds_alternative<std::string>(rows_[r][c]));
            if (!ok) {
                throw InvalidArgument("row " + std::to_string(r) + " column '" + columns_[c].name +
                                      "' does not match the column type");
            }
        }
    }
}

std::optional<std::size_t> TableData::column_index(std::string_view name) const {
    for (std::size_t c = 0; c < columns_.size(); ++c) {
        if (columns_[c].name == name) return c;
    }
    return std::nullopt;
}

TableData parse_csv(std::string_view text) {
    auto records = split_csv(text);
    if (records.empty()) throw ParseError("CSV input has no header row");
    std::vector<std::string> names;
    for (auto& h : records.front().second) names.emplace_back(trim(h));
    for (std::size_t c = 0; c < names.size(); ++c) {
        if (names[c].empty()) throw ParseError("line 1: empty column name");
        for (std::size_t d = 0; d < c; ++d) {
            if (names[d] == names[c]) throw ParseError("line 1: duplicate column '" + names[c] + "'");
        }
    }
    std::vector<std::vector<std::string>> cells;
    std::vector<std::size_t> lines;
    for (std::size_t r = 1; r < records.size(); ++r) {
        auto& [line, fields] = records[r];
        if (fields.size() != names.size()) {
            throw ParseError("line " + std::to_string(line) + ": expected " + std::to_string(names.size()) +
                             " fields, got " + std::to_string(fields.size()));
        }
        cells.push_back(std::move(fields));
        lines.push_back(line);
    }
    return build(std::move(names), std::vector<std::optional<ColumnType>>(records.front().second.size()),
                 cells, lines, "line");
}

TableData parse_json_table(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("table is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("columns") || !doc.contains("rows")) {
        throw ParseError("JSON table needs \"columns\" and \"rows\" fields");
    }
    std::vector<std::string> names;
    std::vector<std::optional<ColumnType>> declared;
    for (const auto& col : doc.at("columns")) {
        if (col.is_string()) {
            names.push_back(col.get<std::string>());
            declared.emplace_back();
        } else if (col.is_object() && col.contains("name") && col.at("name").is_string()) {
            names.push_back(col.at("name").get<std::string>());
            declared.push_back(col.contains("type") ? parse_type(col.at("type").get<std::string>())
                                                    : std::optional<ColumnType>{});
        } else {
            throw ParseError("column entries must be names or {\"name\", \"type\"} objects");
        }
    }
    std::vector<std::vector<std::string>> cells;
    std::vector<std::size_t> lines;
    std::size_t index = 0;
    for (const auto& row : doc.at("rows")) {
        if (!row.is_array() || row.size() != names.size()) {
            throw ParseError("row " + std::to_string(index) + ": expected " + std::to_string(names.size()) +
                             " fields");
        }
        std::vector<std::string> fields;
        for (const auto& v : row) {
            if (v.is_string()) {
                fields.push_back(v.get<std::string>());
            } else if (v.is_number()) {
                fields.push_back(v.dump());
            } else {
                throw ParseError("row " + std::to_string(index) + ": unsupported value " + v.dump());
            }
        }
        cells.push_back(std::move(fields));
        lines.push_back(index++);
    }
    return build(std::move(names), std::move(declared), cells, lines, "row");
}

TableData load_table(const std::filesystem::path& path, TableFormat format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open table " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    if (format == TableFormat::Auto) format = path.extension() == ".json" ? TableFormat::Json : TableFormat::Csv;
    return format == TableFormat::Json ? parse_json_table(ss.str()) : parse_csv(ss.str());
}

}  // namespace qbs
