#include "asam/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace asam::csv {

CsvError::CsvError(const std::string& file, std::size_t row, const std::string& column, const std::string& what)
    : std::runtime_error(file + ": row " + std::to_string(row) + (column.empty() ? "" : ", column '" + column + "'") +
                         ": " + what),
      file_(file), row_(row), column_(column)
{
}

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

namespace {

std::vector<std::vector<std::string>> split_records(const std::string& text)
{
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    bool any = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
            continue;
        }
        if (c == '"') {
            quoted = true;
            any = true;
        } else if (c == ',') {
            fields.push_back(trim(field));
            field.clear();
            any = true;
        } else if (c == '\n') {
            fields.push_back(trim(field));
            field.clear();
            if (any || !(fields.size() == 1 && fields[0].empty()))
                records.push_back(std::move(fields));
            fields.clear();
            any = false;
        } else if (c != '\r') {
            field.push_back(c);
            any = true;
        }
    }
    if (any || !field.empty()) {
        fields.push_back(trim(field));
        records.push_back(std::move(fields));
    }
    return records;
}

} // namespace

Table parse(const std::string& text, const std::string& source)
{
    Table t;
    t.source = source;
    auto records = split_records(text);
    if (records.empty())
        throw CsvError(source, 1, "", "missing header row");
    t.header = std::move(records.front());
    for (std::size_t i = 1; i < records.size(); ++i) {
        auto& r = records[i];
        if (r.size() > t.header.size())
            throw CsvError(source, i + 1, "", "more fields than header columns");
        r.resize(t.header.size());
        t.rows.push_back(std::move(r));
    }
    return t;
}

Table read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw CsvError(path.string(), 0, "", "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path.string());
}

std::optional<std::size_t> Table::column(const std::string& name) const
{
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name)
            return i;
    return std::nullopt;
}

std::size_t Table::require_column(const std::string& name) const
{
    auto c = column(name);
    if (!c)
        throw CsvError(source, 1, name, "required column missing");
    return *c;
}

const std::string& Table::cell(std::size_t row, const std::string& name) const
{
    const auto c = require_column(name);
    const auto& v = rows.at(row)[c];
    if (v.empty())
        throw CsvError(source, row + 2, name, "empty value");
    return v;
}

std::optional<std::string> Table::optional_cell(std::size_t row, const std::string& name) const
{
    const auto c = column(name);
    if (!c || rows.at(row)[*c].empty())
        return std::nullopt;
    return rows[row][*c];
}

namespace {

std::optional<double> to_double(const std::string& s)
{
    if (s == "inf" || s == "Inf" || s == "INF")
        return INFINITY;
    double v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        return std::nullopt;
    return v;
}

} // namespace

double Table::number(std::size_t row, const std::string& name) const
{
    const auto& s = cell(row, name);
    auto v = to_double(s);
    if (!v)
        throw CsvError(source, row + 2, name, "not a number: '" + s + "'");
    return *v;
}

std::optional<double> Table::optional_number(std::size_t row, const std::string& name) const
{
    auto s = optional_cell(row, name);
    if (!s)
        return std::nullopt;
    auto v = to_double(*s);
    if (!v)
        throw CsvError(source, row + 2, name, "not a number: '" + *s + "'");
    return v;
}

long long Table::integer(std::size_t row, const std::string& name) const
{
    const double v = number(row, name);
    if (std::floor(v) != v)
        throw CsvError(source, row + 2, name, "not an integer");
    return static_cast<long long>(v);
}

void write_row(std::ostream& os, const std::vector<std::string>& fields)
{
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i)
            os << ',';
        const auto& f = fields[i];
        if (f.find_first_of(",\"\n") != std::string::npos) {
            os << '"';
            for (char c : f) {
                if (c == '"')
                    os << '"';
                os << c;
            }
            os << '"';
        } else {
            os << f;
        }
    }
    os << '\n';
}

} // namespace asam::csv
