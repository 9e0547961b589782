#pragma once

#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <vector>

namespace iontide {

/// Plot-ready CSV: '#'-prefixed metadata lines, a column-name line, a unit
/// line, then data. Numbers are written with %.12g so reruns with identical
/// inputs are byte-identical (the "generated" metadata line is the one
/// intentional exception).
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, std::vector<std::string> columns,
              std::vector<std::string> units);

    void metadata(const std::string& key, const std::string& value);
    void row(std::span<const double> values);
    void row(std::initializer_list<double> values);
    /// Mixed row, e.g. a trailing status column.
    void row_with_status(std::span<const double> values, const std::string& status);
    void row_with_status(std::initializer_list<double> values, const std::string& status);

private:
    std::ofstream out_;
    std::vector<std::string> columns_;
    std::vector<std::string> units_;
    bool header_written_ = false;

    void write_header_once();
};

std::string format_csv_number(double v);

} // namespace iontide
