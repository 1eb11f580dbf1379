#include "mmh/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "mmh/config.hpp"

namespace mmh {

void ResultTable::add_row(std::vector<Cell> row)
{
    if (row.size() != columns.size())
        throw std::invalid_argument("ResultTable: row has " + std::to_string(row.size()) + " cells, header has " +
                                    std::to_string(columns.size()));
    rows.push_back(std::move(row));
}

std::string format_number(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

namespace {

std::string quote(const std::string& s)
{
    if (s.find_first_of(",\"\n\r") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

struct CellWriter {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(double v) const { return format_number(v); }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(const std::string& s) const { return quote(s); }
};

}  // namespace

void emit_csv(const ResultTable& table, std::ostream& out)
{
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        out << (i ? "," : "") << quote(table.columns[i]);
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << std::visit(CellWriter{}, row[i]);
        out << '\n';
    }
}

void emit_csv(const ResultTable& table, const std::filesystem::path& destination)
{
    std::ostringstream buf;
    emit_csv(table, buf);
    std::ofstream out(destination, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open '" + destination.string() + "' for writing");
    const std::string text = buf.str();
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.close();
    if (!out)
        throw IoError("error writing '" + destination.string() + "'");
}

std::vector<std::vector<std::string>> read_csv(std::istream& in)
{
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false;
    bool any = false;
    char c;
    while (in.get(c)) {
        any = true;
        if (quoted) {
            if (c == '"') {
                if (in.peek() == '"') {
                    in.get(c);
                    field += '"';
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            row.push_back(std::move(field));
            field.clear();
        } else if (c == '\n') {
            row.push_back(std::move(field));
            field.clear();
            rows.push_back(std::move(row));
            row.clear();
            any = false;
        } else if (c != '\r') {
            field += c;
        }
    }
    if (any) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace mmh
