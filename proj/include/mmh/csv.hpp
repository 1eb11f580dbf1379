#pragma once

// Result tables and their CSV form: header row, then data rows, numbers with
// nine significant digits, '\n' line ends.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace mmh {

/// Empty cell, number, count or text.
using Cell = std::variant<std::monostate, double, std::int64_t, std::string>;

struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    /// Throws std::invalid_argument when the row width differs from the header.
    void add_row(std::vector<Cell> row);
};

/// "%.9g"; non-finite values print as nan, inf, -inf.
std::string format_number(double v);

void emit_csv(const ResultTable& table, std::ostream& out);
/// Writes the whole table or throws IoError naming the path.
void emit_csv(const ResultTable& table, const std::filesystem::path& destination);

/// Minimal reader for the files emit_csv writes (quoted fields allowed).
std::vector<std::vector<std::string>> read_csv(std::istream& in);

}  // namespace mmh
