#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace iontide {

inline constexpr const char* project_version = "0.1.0";

struct Check {
    std::string name;
    double expected;
    double got;
    double tolerance;
    bool pass;
    std::string note;
};

/// Machine-readable pass/fail record of one scenario run.
struct RunReport {
    std::string scenario;
    std::vector<std::pair<std::string, std::string>> parameters;
    std::vector<Check> checks;
    double wall_seconds = 0.0;
    std::string version = project_version;

    /// |got - expected| <= tolerance
    void add(const std::string& name, double expected, double got, double tolerance,
             const std::string& note = "");
    /// low <= got <= high
    void add_band(const std::string& name, double got, double low, double high,
                  const std::string& note = "");
    void add_flag(const std::string& name, bool pass, const std::string& note = "");
    void merge(const RunReport& other);

    bool all_passed() const;
    void print(std::ostream& os) const;
    void write_json(const std::filesystem::path& path) const;
};

} // namespace iontide
