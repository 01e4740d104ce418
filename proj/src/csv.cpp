#include "trapsim/csv.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace trapsim {

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {
    if (columns_.empty()) throw std::invalid_argument("csv: at least one column is required");
    meta_.emplace_back("schema", kCsvSchemaVersion);
}

void CsvTable::set_meta(const std::string& key, const std::string& value) {
    for (auto& kv : meta_)
        if (kv.first == key) {
            kv.second = value;
            return;
        }
    meta_.emplace_back(key, value);
}

void CsvTable::add_row(const std::vector<double>& values) {
    if (values.size() != columns_.size()) throw std::invalid_argument("csv: row width does not match header");
    rows_.push_back(values);
}

void CsvTable::write(std::ostream& os) const {
    for (const auto& [k, v] : meta_) os << "# " << k << ": " << v << '\n';
    for (std::size_t i = 0; i < columns_.size(); ++i) os << (i ? "," : "") << columns_[i];
    os << '\n';
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_double(row[i]);
        os << '\n';
    }
}

std::string CsvTable::to_string() const {
    std::ostringstream os;
    write(os);
    return os.str();
}

std::string ParsedCsv::meta_value(const std::string& key) const {
    for (const auto& kv : meta)
        if (kv.first == key) return kv.second;
    return {};
}

ParsedCsv parse_csv(std::istream& is) {
    ParsedCsv out;
    std::string line;
    bool have_header = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line.rfind("# ", 0) == 0) {
            const auto colon = line.find(": ");
            if (colon != std::string::npos) out.meta.emplace_back(line.substr(2, colon - 2), line.substr(colon + 2));
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!have_header) {
            out.columns = cells;
            have_header = true;
            continue;
        }
        if (cells.size() != out.columns.size()) throw std::runtime_error("csv: ragged row");
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& c : cells) row.push_back(std::stod(c));
        out.rows.push_back(std::move(row));
    }
    if (!have_header) throw std::runtime_error("csv: missing header row");
    return out;
}

}  // namespace trapsim
