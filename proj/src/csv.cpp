#include "agreeloss/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "agreeloss/errors.hpp"

namespace agreeloss::csv {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string> split_fields(std::string_view line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        fields.emplace_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

}  // namespace

std::size_t Table::column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    throw ParseError("missing column '" + std::string(name) + "'", 1);
}

Table parse(std::string_view text) {
    Table table;
    std::size_t line_no = 0;
    bool have_header = false;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (line_no == 1 && line.substr(0, 3) == "\xEF\xBB\xBF") line.remove_prefix(3);
        if (trim(line).empty()) {
            if (end == text.size()) break;
            continue;
        }
        auto fields = split_fields(line);
        if (!have_header) {
            table.header = std::move(fields);
            have_header = true;
        } else {
            if (fields.size() != table.header.size()) {
                throw ParseError("row " + std::to_string(line_no) + ": expected " +
                                     std::to_string(table.header.size()) + " fields, found " +
                                     std::to_string(fields.size()),
                                 line_no);
            }
            table.rows.push_back({line_no, std::move(fields)});
        }
        if (end == text.size()) break;
    }
    if (!have_header) throw ParseError("missing header row", 1);
    return table;
}

Table read(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path.string() + "'", 0);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str());
}

double parse_number(std::string_view field, std::size_t line, std::string_view column) {
    if (field.empty()) {
        throw ParseError("row " + std::to_string(line) + ": missing value in column '" + std::string(column) + "'",
                         line);
    }
    double value = 0.0;
    const char* first = field.data();
    if (*first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(value)) {
        throw ParseError("row " + std::to_string(line) + ": invalid number '" + std::string(field) +
                             "' in column '" + std::string(column) + "'",
                         line);
    }
    return value;
}

std::vector<double> numeric_column(const Table& table, std::string_view name) {
    const auto idx = table.column(name);
    std::vector<double> out;
    out.reserve(table.rows.size());
    for (const auto& row : table.rows) out.push_back(parse_number(row.fields[idx], row.line, name));
    return out;
}

std::string format_number(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

}  // namespace agreeloss::csv
