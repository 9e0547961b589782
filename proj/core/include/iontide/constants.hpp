#pragma once

// Physical constants (CODATA 2018). All modules take their constants from
// this table so that quoted numbers are reproducible bit-for-bit.

namespace iontide::constants {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

inline constexpr double hbar = 1.054571817e-34;             // J s
inline constexpr double elementary_charge = 1.602176634e-19; // C (exact)
inline constexpr double epsilon0 = 8.8541878128e-12;        // F/m
inline constexpr double atomic_mass_unit = 1.66053906660e-27; // kg
inline constexpr double electron_mass = 9.1093837015e-31;   // kg
inline constexpr double electron_volt = 1.602176634e-19;    // J (exact)

} // namespace iontide::constants
