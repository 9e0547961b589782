#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "iontide/species.hpp"

namespace iontide {

/// Axial trapping well expanded about its own center,
///   V(u) = 2 pi^2 m f_z^2 u^2 (1 + u/L3 + sgn(L4) u^2/L4^2),  u = z - center.
///
/// L3 and L4 are the length scales at which the cubic and quartic terms match
/// the quadratic one. An absent optional means the term is dropped exactly;
/// ingest_length_scale() maps "effectively infinite" inputs (|L| > 1 m) to the
/// absent state instead of carrying a huge sentinel through the arithmetic.
struct PotentialSpec {
    double f_z = 0.0;                  // Hz, curvature-defined frequency
    std::optional<double> L3;          // m, signed
    std::optional<double> L4;          // m, signed
    double center = 0.0;               // m

    static PotentialSpec harmonic(double f_z, double center = 0.0);
    static PotentialSpec make(double f_z, std::optional<double> L3,
                              std::optional<double> L4, double center = 0.0);

    double omega0() const;             // 2 pi f_z
    PotentialSpec at_center(double new_center) const;
    bool is_harmonic() const { return !L3 && !L4; }
};

/// Threshold above which a finite length scale is treated as "no such term".
inline constexpr double effectively_infinite_length = 1.0; // m

std::optional<double> ingest_length_scale(std::optional<double> value);

/// V(z) in joules.
double potential_value(const PotentialSpec& spec, const IonSpecies& species, double z);

/// dV/dz in newtons (used by the classical travel-time quadrature and tests).
double potential_derivative(const PotentialSpec& spec, const IonSpecies& species, double z);

/// Local squared frequency from the quartic term only,
///   w^2(u) = w0^2 (1 + 6 sgn(L4) u^2/L4^2),  u = z - center.
/// The cubic term is excluded here by construction (it cancels in the
/// curvature at symmetric excursions); negative returns mean locally
/// anti-confining curvature and are valid.
double local_frequency_squared(const PotentialSpec& spec, double z);

struct LocalFrequency {
    double omega;   // sqrt(|w^2|), rad/s
    bool confining; // false flags anti-confining curvature (w^2 < 0)
};

LocalFrequency local_frequency(const PotentialSpec& spec, double z);

struct ConfinementThresholds {
    bool always_confining;
    double curvature_sign_change; // m, |u| where w^2(u) crosses zero (z1)
    double force_sign_change;     // m, |u| where dV/du crosses zero (z2)
};

/// z1 = |L4|/sqrt(6), z2 = |L4|/sqrt(2) for negative L4; "always confining"
/// for positive or absent L4.
ConfinementThresholds anticonfining_threshold(const PotentialSpec& spec);

/// Time for a classical particle released at rest a distance z0 from the well
/// center to reach the opposite turning point (half the anharmonic period).
/// Requires a cubic-free well; reduces to pi/w0 when L4 is absent.
double transport_arrival_time(const PotentialSpec& spec, double z0);

/// How the well center moves during a throw or catch transition.
struct TransitionShape {
    enum class Kind { instantaneous, linear, sinusoidal, sampled };

    Kind kind = Kind::instantaneous;
    double duration = 0.0; // s
    // sampled shapes: strictly increasing times on [0, duration] with the
    // fractional progress 0 -> 1 of the ramp at each knot.
    std::vector<double> times;
    std::vector<double> progress;

    static TransitionShape instantaneous();
    static TransitionShape linear(double duration);
    static TransitionShape sinusoidal(double duration);
    static TransitionShape sampled(std::vector<double> times, std::vector<double> progress);
    /// Two-column CSV (time s, position m), '#' comments and a header line
    /// allowed; positions are normalized to ramp progress.
    static TransitionShape sampled_from_csv(const std::filesystem::path& path);

    /// Fractional progress g(t) in [0,1] for t in [0, duration]; monotone
    /// cubic (Fritsch-Carlson) interpolation for sampled shapes.
    double at(double t) const;
    /// dg/dt, infinite transitions excluded (instantaneous has none).
    double rate(double t) const;
};

/// Throw-catch program: initial well at -z0, transport well at 0, final well
/// at +z0. The throw ramp spans [0, tau], the hold keeps the center fixed,
/// and the catch ramp spans [catch_start, catch_start + tau']. During a ramp
/// the transport-well shape is rigidly translated; the curvature never
/// changes mid-flight.
struct TransportProtocol {
    PotentialSpec initial_well;
    PotentialSpec transport_well;
    PotentialSpec final_well;
    TransitionShape throw_shape;
    double hold = 0.0; // s, duration of the constant-center interval
    TransitionShape catch_shape;

    static TransportProtocol make(PotentialSpec initial_well, PotentialSpec transport_well,
                                  PotentialSpec final_well, TransitionShape throw_shape,
                                  double hold, TransitionShape catch_shape);

    double displacement() const { return -initial_well.center; } // z0
    double catch_start() const { return throw_shape.duration + hold; }
    double total_duration() const { return catch_start() + catch_shape.duration; }

    /// Position of the potential minimum s(t), continuous for non-instantaneous
    /// shapes; t outside [0, total_duration] is a domain error.
    double center(double t) const;
    /// ds/dt; zero outside the ramps.
    double center_velocity(double t) const;
};

} // namespace iontide
