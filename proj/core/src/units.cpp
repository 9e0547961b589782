#include "iontide/units.hpp"

#include <array>
#include <cctype>
#include <cstdlib>
#include <string>

#include "iontide/constants.hpp"
#include "iontide/errors.hpp"

namespace iontide {

namespace {

struct Suffix {
    const char* text;
    UnitKind kind;
    double scale;
};

// Longest match wins, so "ms" is checked before "s" by construction below.
constexpr std::array suffixes = {
    Suffix{"quanta/s", UnitKind::rate, 1.0},
    Suffix{"V/m^2", UnitKind::curvature, 1.0},
    Suffix{"V/m2", UnitKind::curvature, 1.0},
    Suffix{"GHz", UnitKind::frequency, 1e9},
    Suffix{"MHz", UnitKind::frequency, 1e6},
    Suffix{"kHz", UnitKind::frequency, 1e3},
    Suffix{"1/s", UnitKind::rate, 1.0},
    Suffix{"Hz", UnitKind::frequency, 1.0},
    Suffix{"dB", UnitKind::decibel, 1.0},
    Suffix{"kg", UnitKind::mass, 1.0},
    Suffix{"mV", UnitKind::voltage, 1e-3},
    Suffix{"kV", UnitKind::voltage, 1e3},
    Suffix{"km", UnitKind::length, 1e3},
    Suffix{"mm", UnitKind::length, 1e-3},
    Suffix{"um", UnitKind::length, 1e-6},
    Suffix{"nm", UnitKind::length, 1e-9},
    Suffix{"pm", UnitKind::length, 1e-12},
    Suffix{"fm", UnitKind::length, 1e-15},
    Suffix{"ms", UnitKind::time, 1e-3},
    Suffix{"us", UnitKind::time, 1e-6},
    Suffix{"ns", UnitKind::time, 1e-9},
    Suffix{"ps", UnitKind::time, 1e-12},
    Suffix{"fs", UnitKind::time, 1e-15},
    Suffix{"/s", UnitKind::rate, 1.0},
    Suffix{"m", UnitKind::length, 1.0},
    Suffix{"s", UnitKind::time, 1.0},
    Suffix{"V", UnitKind::voltage, 1.0},
    Suffix{"u", UnitKind::mass, constants::atomic_mass_unit},
    Suffix{"e", UnitKind::charge, constants::elementary_charge},
    Suffix{"C", UnitKind::charge, 1.0},
};

} // namespace

Quantity parse_quantity(std::string_view text) {
    std::string s(text);
    // trim
    const auto first = s.find_first_not_of(" \t");
    const auto last = s.find_last_not_of(" \t");
    if (first == std::string::npos) throw ConfigError("empty quantity");
    s = s.substr(first, last - first + 1);

    char* end = nullptr;
    const double value = std::strtod(s.c_str(), &end);
    if (end == s.c_str()) throw ConfigError("not a number: '" + s + "'");
    std::string suffix(end);
    while (!suffix.empty() && std::isspace(static_cast<unsigned char>(suffix.front())))
        suffix.erase(suffix.begin());

    if (suffix.empty()) return Quantity{value, UnitKind::dimensionless};
    for (const auto& u : suffixes) {
        if (suffix == u.text) return Quantity{value * u.scale, u.kind};
    }
    throw ConfigError("unknown unit suffix '" + suffix + "' in '" + s + "'");
}

double parse_as(std::string_view text, UnitKind expected) {
    const Quantity q = parse_quantity(text);
    if (q.kind != expected) {
        throw ConfigError("expected a " + std::string(unit_kind_name(expected)) + " but got '" +
                          std::string(text) + "' (" + std::string(unit_kind_name(q.kind)) + ")");
    }
    return q.value;
}

std::string_view unit_kind_name(UnitKind kind) {
    switch (kind) {
        case UnitKind::dimensionless: return "dimensionless number";
        case UnitKind::length: return "length";
        case UnitKind::time: return "time";
        case UnitKind::frequency: return "frequency";
        case UnitKind::voltage: return "voltage";
        case UnitKind::curvature: return "field curvature";
        case UnitKind::rate: return "rate";
        case UnitKind::mass: return "mass";
        case UnitKind::charge: return "charge";
        case UnitKind::decibel: return "decibel value";
    }
    return "unknown";
}

} // namespace iontide
