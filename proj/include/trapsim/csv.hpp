#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace trapsim {

inline constexpr const char* kCsvSchemaVersion = "trapsim-csv/1";

// Shortest round-trip is not enough for archives read by other tools; always 17 digits.
std::string format_double(double x);

// CSV with a "# key: value" comment block, a mandatory header row, and rows
// whose first column is time.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> columns);

    void set_meta(const std::string& key, const std::string& value);
    void add_row(const std::vector<double>& values);
    void write(std::ostream& os) const;
    std::string to_string() const;

    const std::vector<std::string>& columns() const noexcept { return columns_; }
    std::size_t rows() const noexcept { return rows_.size(); }

private:
    std::vector<std::string> columns_;
    std::vector<std::pair<std::string, std::string>> meta_;
    std::vector<std::vector<double>> rows_;
};

struct ParsedCsv {
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::string meta_value(const std::string& key) const;
};

ParsedCsv parse_csv(std::istream& is);

}  // namespace trapsim
