#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace asam::csv {

/// Parse error carrying the file, 1-based row and column name.
class CsvError : public std::runtime_error {
public:
    CsvError(const std::string& file, std::size_t row, const std::string& column, const std::string& what);
    const std::string& file() const { return file_; }
    std::size_t row() const { return row_; }
    const std::string& column() const { return column_; }

private:
    std::string file_;
    std::size_t row_;
    std::string column_;
};

struct Table {
    std::string source;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::optional<std::size_t> column(const std::string& name) const;
    std::size_t require_column(const std::string& name) const;

    const std::string& cell(std::size_t row, const std::string& name) const;
    std::optional<std::string> optional_cell(std::size_t row, const std::string& name) const;
    double number(std::size_t row, const std::string& name) const;
    std::optional<double> optional_number(std::size_t row, const std::string& name) const;
    long long integer(std::size_t row, const std::string& name) const;
};

Table parse(const std::string& text, const std::string& source = "<memory>");
Table read_file(const std::filesystem::path& path);

/// Writes one record, quoting fields that contain separators or quotes.
void write_row(std::ostream& os, const std::vector<std::string>& fields);

std::string trim(const std::string& s);

} // namespace asam::csv
