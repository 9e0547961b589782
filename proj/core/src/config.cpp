#include "iontide/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "iontide/errors.hpp"

namespace iontide {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

} // namespace

Config Config::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return from_string(buffer.str());
}

Config Config::from_string(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line;
    std::string section;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw ConfigError("malformed section header at line " + std::to_string(line_no));
            section = trim(t.substr(1, t.size() - 2));
            if (section.empty())
                throw ConfigError("empty section name at line " + std::to_string(line_no));
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected 'key = value' at line " + std::to_string(line_no));
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("empty key or value at line " + std::to_string(line_no));
        if (section.empty())
            throw ConfigError("key outside any [section] at line " + std::to_string(line_no));
        cfg.values_[section + "." + key] = value;
    }
    return cfg;
}

bool Config::has(const std::string& key) const { return values_.count(key) > 0; }

void Config::set(const std::string& key, const std::string& value) { values_[key] = value; }

void Config::merge(const Config& other) {
    for (const auto& [k, v] : other.values_) values_[k] = v;
}

const std::string* Config::find(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return nullptr;
    touched_[key] = true;
    return &it->second;
}

std::string Config::get_string(const std::string& key) const {
    const auto* v = find(key);
    if (!v) throw ConfigError("missing config key '" + key + "'");
    return *v;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    const auto* v = find(key);
    return v ? *v : fallback;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
    const auto* v = find(key);
    if (!v) return fallback;
    if (*v == "true" || *v == "yes" || *v == "on" || *v == "1") return true;
    if (*v == "false" || *v == "no" || *v == "off" || *v == "0") return false;
    throw ConfigError("config key '" + key + "' is not a boolean: '" + *v + "'");
}

long Config::get_int(const std::string& key, long fallback) const {
    const auto* v = find(key);
    if (!v) return fallback;
    try {
        std::size_t pos = 0;
        const long out = std::stol(*v, &pos);
        if (pos != v->size()) throw std::invalid_argument("");
        return out;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "' is not an integer: '" + *v + "'");
    }
}

double Config::get_number(const std::string& key) const {
    const auto* v = find(key);
    if (!v) throw ConfigError("missing config key '" + key + "'");
    return parse_as(*v, UnitKind::dimensionless);
}

double Config::get_number(const std::string& key, double fallback) const {
    const auto* v = find(key);
    return v ? parse_as(*v, UnitKind::dimensionless) : fallback;
}

double Config::get(const std::string& key, UnitKind kind) const {
    const auto* v = find(key);
    if (!v) throw ConfigError("missing config key '" + key + "'");
    try {
        return parse_as(*v, kind);
    } catch (const ConfigError& e) {
        throw ConfigError("config key '" + key + "': " + e.what());
    }
}

double Config::get(const std::string& key, UnitKind kind, double fallback) const {
    const auto* v = find(key);
    if (!v) return fallback;
    try {
        return parse_as(*v, kind);
    } catch (const ConfigError& e) {
        throw ConfigError("config key '" + key + "': " + e.what());
    }
}

std::optional<double> Config::get_length_or_infinite(const std::string& key) const {
    const auto* v = find(key);
    if (!v) throw ConfigError("missing config key '" + key + "'");
    if (*v == "inf" || *v == "-inf" || *v == "infinite") return std::nullopt;
    return parse_as(*v, UnitKind::length);
}

std::vector<std::pair<std::string, std::string>> Config::entries() const {
    std::vector<std::pair<std::string, std::string>> out(values_.begin(), values_.end());
    return out;
}

std::vector<std::string> Config::untouched_keys() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : values_) {
        (void)v;
        if (!touched_.count(k)) out.push_back(k);
    }
    return out;
}

} // namespace iontide
