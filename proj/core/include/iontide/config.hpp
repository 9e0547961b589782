#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "iontide/units.hpp"

namespace iontide {

/// Flat key-value scenario configuration:
///
///   # comment
///   [section]
///   key = 50um
///
/// Keys are addressed as "section.key". Values carry explicit unit suffixes
/// and are checked against the dimension the reader expects.
class Config {
public:
    Config() = default;
    static Config from_file(const std::filesystem::path& path);
    static Config from_string(const std::string& text);

    bool has(const std::string& key) const;
    void set(const std::string& key, const std::string& value);
    /// Overlays every entry of `other` on top of this config.
    void merge(const Config& other);

    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    long get_int(const std::string& key, long fallback) const;
    double get_number(const std::string& key) const; // dimensionless
    double get_number(const std::string& key, double fallback) const;

    double get(const std::string& key, UnitKind kind) const;
    double get(const std::string& key, UnitKind kind, double fallback) const;
    /// "inf" / "-inf" / "infinite" map to nullopt (term absent).
    std::optional<double> get_length_or_infinite(const std::string& key) const;

    /// Sorted (key, value) pairs, for echoing into reports and CSV headers.
    std::vector<std::pair<std::string, std::string>> entries() const;

    /// Keys never read by any getter; scenarios treat leftovers as typos.
    std::vector<std::string> untouched_keys() const;

private:
    std::map<std::string, std::string> values_;
    mutable std::map<std::string, bool> touched_;

    const std::string* find(const std::string& key) const;
};

} // namespace iontide
