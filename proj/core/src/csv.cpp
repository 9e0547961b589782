#include "iontide/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace iontide {

std::string format_csv_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, std::vector<std::string> columns,
                     std::vector<std::string> units)
    : out_(path), columns_(std::move(columns)), units_(std::move(units)) {
    if (!out_) throw std::runtime_error("cannot open " + path.string());
    if (columns_.size() != units_.size())
        throw std::invalid_argument("csv columns and units must match");
}

void CsvWriter::metadata(const std::string& key, const std::string& value) {
    if (header_written_)
        throw std::logic_error("csv metadata must precede the first row");
    out_ << "# " << key << ": " << value << '\n';
}

void CsvWriter::write_header_once() {
    if (header_written_) return;
    for (std::size_t i = 0; i < columns_.size(); ++i)
        out_ << columns_[i] << (i + 1 < columns_.size() ? "," : "\n");
    for (std::size_t i = 0; i < units_.size(); ++i)
        out_ << units_[i] << (i + 1 < units_.size() ? "," : "\n");
    header_written_ = true;
}

void CsvWriter::row(std::span<const double> values) {
    write_header_once();
    if (values.size() != columns_.size())
        throw std::invalid_argument("csv row width mismatch");
    for (std::size_t i = 0; i < values.size(); ++i)
        out_ << format_csv_number(values[i]) << (i + 1 < values.size() ? "," : "\n");
}

void CsvWriter::row(std::initializer_list<double> values) {
    row(std::span<const double>(values.begin(), values.size()));
}

void CsvWriter::row_with_status(std::initializer_list<double> values, const std::string& status) {
    row_with_status(std::span<const double>(values.begin(), values.size()), status);
}

void CsvWriter::row_with_status(std::span<const double> values, const std::string& status) {
    write_header_once();
    if (values.size() + 1 != columns_.size())
        throw std::invalid_argument("csv row width mismatch");
    for (std::size_t i = 0; i < values.size(); ++i)
        out_ << format_csv_number(values[i]) << ',';
    out_ << status << '\n';
}

} // namespace iontide
