#pragma once

#include <optional>

#include "iontide/species.hpp"

namespace iontide {

/// r.m.s. extent of the ground-state wavefunction, a0 = sqrt(hbar/(2 m omega)).
double ground_state_extent(const IonSpecies& species, double omega);

/// Coherent-state parameter of an ion displaced by z0 from the well center,
/// alpha0 = -z0/a0.
///
/// Note: this is the convention used throughout the fast-transport error
/// budgets. The displacement-operator convention (<z> = 2 a0 Re alpha) gives
/// half this value for the same physical displacement; see
/// displacement_amplitude() and docs/conventions.md. The two are kept side by
/// side on purpose.
double coherent_amplitude(double z0, const IonSpecies& species, double omega);

/// Displacement-operator amplitude for a packet displaced by z0:
/// alpha = z0/(2 a0), so that <z> = 2 a0 Re alpha. This is the convention the
/// grid propagator and the covariance module use.
double displacement_amplitude(double z0, const IonSpecies& species, double omega);

/// Ground-to-first-excited heating rate driven by electric-field noise,
///   Gamma = q^2 / (4 m omega hbar) * S_E(omega)   [quanta/s].
double heating_rate(const IonSpecies& species, double omega, double field_noise_density);

/// Inverse of heating_rate: the S_E(omega) producing a given rate.
double field_density_for_heating_rate(const IonSpecies& species, double omega, double gamma);

/// Axial micromotion sidebands of the secular motion,
///   x(t) ~ C0 cos(wt) + C+2 cos((W+w)t) + C-2 cos((W-w)t) + D2 cos(Wt),
/// with C+-2 = -C0 q_z / (a_z - (+-2 + beta_z)^2) and the lowest-order
/// beta_z = sqrt(a_z + q_z^2/2). D2 comes from the residual axial rf field;
/// it is carried through as caller-supplied metadata and never computed.
struct MicromotionCoefficients {
    double a_z;
    double q_z;
    double beta_z;
    double c0;       // m, secular amplitude (input echo)
    double c_plus2;  // m
    double c_minus2; // m
    std::optional<double> d2; // m
};

MicromotionCoefficients micromotion_coefficients(const TrapContext& ctx,
                                                 const IonSpecies& species,
                                                 double c0,
                                                 std::optional<double> d2 = std::nullopt);

/// Equilibrium distance of two identical ions sharing one harmonic well,
///   d = (q^2 / (2 pi m eps0 w_z^2))^(1/3).
double ion_separation(const IonSpecies& species, double omega_z);

/// Coefficient of the bilinear xi1*xi2 term in the expanded Coulomb coupling,
///   q^2 chi / (4 pi eps0 d^3), chi = 2 along the ion-ion axis, 1 transverse.
/// Units J/m^2.
double coulomb_coupling_coefficient(const IonSpecies& species, double d, bool aligned);

} // namespace iontide
