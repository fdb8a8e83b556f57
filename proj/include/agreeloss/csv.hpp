#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace agreeloss::csv {

/// A comma-separated file with a required header row. Blank lines are skipped;
/// `line` numbers are 1-based file lines (the header is line 1).
struct Table {
    struct Row {
        std::size_t line;
        std::vector<std::string> fields;
    };

    std::vector<std::string> header;
    std::vector<Row> rows;

    /// Index of a header column; throws ParseError naming the column if absent.
    std::size_t column(std::string_view name) const;
};

/// Throws ParseError for an unreadable file, a missing header, or a row whose
/// field count differs from the header's.
Table read(const std::filesystem::path& path);
Table parse(std::string_view text);

/// Strict decimal parse of a whole field; throws ParseError citing `line`.
double parse_number(std::string_view field, std::size_t line, std::string_view column);

/// Reads one numeric column by name.
std::vector<double> numeric_column(const Table& table, std::string_view name);

/// Shortest round-trip decimal representation.
std::string format_number(double value);

}  // namespace agreeloss::csv
