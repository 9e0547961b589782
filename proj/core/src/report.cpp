#include "iontide/report.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>

#include <json.hpp>

#include "iontide/csv.hpp"

namespace iontide {

void RunReport::add(const std::string& name, double expected, double got, double tolerance,
                    const std::string& note) {
    const bool pass = std::isfinite(got) && std::abs(got - expected) <= tolerance;
    checks.push_back(Check{name, expected, got, tolerance, pass, note});
}

void RunReport::add_band(const std::string& name, double got, double low, double high,
                         const std::string& note) {
    const bool pass = std::isfinite(got) && got >= low && got <= high;
    checks.push_back(Check{name, 0.5 * (low + high), got, 0.5 * (high - low), pass,
                           note.empty() ? "band check" : note});
}

void RunReport::add_flag(const std::string& name, bool pass, const std::string& note) {
    checks.push_back(Check{name, 1.0, pass ? 1.0 : 0.0, 0.0, pass, note});
}

void RunReport::merge(const RunReport& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
    wall_seconds += other.wall_seconds;
}

bool RunReport::all_passed() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

void RunReport::print(std::ostream& os) const {
    os << "scenario " << scenario << " (v" << version << ")\n";
    for (const auto& c : checks) {
        os << (c.pass ? "  PASS  " : "  FAIL  ") << std::left << std::setw(44) << c.name
           << " expected " << std::setw(13) << format_csv_number(c.expected) << " got "
           << std::setw(13) << format_csv_number(c.got) << " tol "
           << format_csv_number(c.tolerance);
        if (!c.note.empty()) os << "  [" << c.note << "]";
        os << '\n';
    }
    os << (all_passed() ? "  all checks passed" : "  CHECKS FAILED") << "  ("
       << format_csv_number(wall_seconds) << " s)\n";
}

void RunReport::write_json(const std::filesystem::path& path) const {
    nlohmann::json j;
    j["scenario"] = scenario;
    j["version"] = version;
    j["wall_seconds"] = wall_seconds;
    j["all_passed"] = all_passed();
    j["parameters"] = nlohmann::json::object();
    for (const auto& [k, v] : parameters) j["parameters"][k] = v;
    j["checks"] = nlohmann::json::array();
    for (const auto& c : checks) {
        j["checks"].push_back({{"name", c.name},
                               {"expected", c.expected},
                               {"got", c.got},
                               {"tolerance", c.tolerance},
                               {"pass", c.pass},
                               {"note", c.note}});
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out << j.dump(2) << '\n';
}

} // namespace iontide
