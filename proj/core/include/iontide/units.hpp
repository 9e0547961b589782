#pragma once

#include <string>
#include <string_view>

namespace iontide {

/// Dimension classes for config values. Misparsed units are treated as
/// configuration errors, never silently coerced.
enum class UnitKind {
    dimensionless,
    length,
    time,
    frequency, // stored in Hz
    voltage,
    curvature, // V/m^2
    rate,      // 1/s (quanta/s)
    mass,
    charge,
    decibel,
};

struct Quantity {
    double value; // SI (or dB for decibel)
    UnitKind kind;
};

/// Parses "50um", "5ns", "1MHz", "8e-6V/m2", "-20dB", "39.9626u", "1e", "42".
/// A bare number is dimensionless. Unknown suffixes throw ConfigError.
Quantity parse_quantity(std::string_view text);

/// Parse and require a specific dimension (dimensionless numbers are not
/// accepted for dimensioned keys, and vice versa).
double parse_as(std::string_view text, UnitKind expected);

std::string_view unit_kind_name(UnitKind kind);

} // namespace iontide
