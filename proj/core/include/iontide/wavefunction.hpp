#pragma once

#include <complex>
#include <cstddef>
#include <filesystem>
#include <vector>

#include "iontide/potential.hpp"
#include "iontide/species.hpp"

namespace iontide {

/// Uniform spatial grid plus the time discretization a propagation will use.
struct GridSpec {
    double z_min = 0.0;
    double z_max = 0.0;
    std::size_t points = 0;
    double dt = 0.0;
    std::size_t steps = 0;

    static GridSpec make(double z_min, double z_max, std::size_t points, double dt,
                         std::size_t steps);
    /// Same spatial grid, time axis chosen so steps*dt == duration exactly.
    GridSpec with_time(double duration, std::size_t steps) const;

    double dz() const { return (z_max - z_min) / static_cast<double>(points); }
    double z(std::size_t i) const { return z_min + static_cast<double>(i) * dz(); }
    /// Angular wavenumber in FFT ordering (0..N/2, then negative).
    double wavenumber(std::size_t i) const;
    double duration() const { return dt * static_cast<double>(steps); }
};

struct MomentumStats {
    double mean;     // kg m/s
    double variance; // (kg m/s)^2
};

struct Wavefunction {
    GridSpec grid;
    std::vector<std::complex<double>> amplitudes; // units 1/sqrt(m)

    double norm() const; // integral of |psi|^2 dz
    void normalize();

    double mean_position() const;
    double variance_position() const;
    MomentumStats momentum_stats() const;
    double potential_energy(const PotentialSpec& well, const IonSpecies& species) const;
    double kinetic_energy(const IonSpecies& species) const;
    double energy(const PotentialSpec& well, const IonSpecies& species) const;

    /// integral conj(this) * other dz
    std::complex<double> overlap(const Wavefunction& other) const;

    /// |psi|^2 weight in the outer `fraction` of the grid on each side.
    double edge_weight(double fraction = 0.02) const;
};

/// Ground state of the well: analytic Gaussian for harmonic wells,
/// imaginary-time relaxation otherwise (see relax_ground_state).
Wavefunction make_ground_state(const GridSpec& grid, const PotentialSpec& well,
                               const IonSpecies& species);

/// Displaced vacuum with <z> = center + 2 a0 Re(alpha), <p> = (hbar/a0) Im(alpha).
Wavefunction make_coherent_state(const GridSpec& grid, const PotentialSpec& well,
                                 const IonSpecies& species, std::complex<double> alpha);

/// Squeezed vacuum of the harmonic reference of `well`. Phi = 0 squeezes the
/// position variance to a0^2 exp(-2r); the phase advances as -2 w t under
/// free evolution (the packet breathes at 2 w).
Wavefunction make_squeezed_state(const GridSpec& grid, const PotentialSpec& well,
                                 const IonSpecies& species, double r, double phi);

void write_wavefunction_csv(const Wavefunction& psi, const std::filesystem::path& path);

/// Compact binary snapshot. Little-endian layout:
///   bytes 0..7   magic "ITWF0001"
///   u64 points, f64 z_min, f64 z_max, f64 dt, u64 steps
///   points * (f64 re, f64 im)
void write_wavefunction_snapshot(const Wavefunction& psi, const std::filesystem::path& path);
Wavefunction read_wavefunction_snapshot(const std::filesystem::path& path);

} // namespace iontide
