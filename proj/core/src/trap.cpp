#include "iontide/trap.hpp"

#include <cmath>
#include <string>

#include "iontide/constants.hpp"
#include "iontide/errors.hpp"

namespace iontide {

namespace {
void require_positive_omega(double omega) {
    if (!(omega > 0.0)) throw DomainError("angular frequency must be positive");
}
} // namespace

double ground_state_extent(const IonSpecies& species, double omega) {
    require_positive_omega(omega);
    return std::sqrt(constants::hbar / (2.0 * species.mass * omega));
}

double coherent_amplitude(double z0, const IonSpecies& species, double omega) {
    return -z0 / ground_state_extent(species, omega);
}

double displacement_amplitude(double z0, const IonSpecies& species, double omega) {
    return z0 / (2.0 * ground_state_extent(species, omega));
}

double heating_rate(const IonSpecies& species, double omega, double field_noise_density) {
    require_positive_omega(omega);
    if (!(field_noise_density >= 0.0))
        throw DomainError("field noise density must be >= 0");
    const double q = species.charge;
    return q * q / (4.0 * species.mass * omega * constants::hbar) * field_noise_density;
}

double field_density_for_heating_rate(const IonSpecies& species, double omega, double gamma) {
    require_positive_omega(omega);
    if (!(gamma >= 0.0)) throw DomainError("heating rate must be >= 0");
    const double q = species.charge;
    return gamma * (4.0 * species.mass * omega * constants::hbar) / (q * q);
}

MicromotionCoefficients micromotion_coefficients(const TrapContext& ctx,
                                                 const IonSpecies& species,
                                                 double c0,
                                                 std::optional<double> d2) {
    const double q = species.charge;
    const double omega_drive = ctx.drive_angular_frequency;
    if (!(omega_drive > 0.0)) throw DomainError("drive frequency must be positive");

    const double denom_scale = species.mass * omega_drive * omega_drive;
    const double a_z = 8.0 * q * ctx.dc_axial_curvature / denom_scale;
    const double q_z = 4.0 * q * ctx.rf_axial_curvature / denom_scale;
    const double beta_z = std::sqrt(a_z + q_z * q_z / 2.0);

    auto sideband = [&](double order) {
        const double denom = a_z - (order + beta_z) * (order + beta_z);
        if (std::abs(denom) < 1e-12)
            throw ResonanceError("micromotion sideband denominator vanishes at order " +
                                 std::to_string(order));
        return -c0 * q_z / denom;
    };

    return MicromotionCoefficients{a_z, q_z, beta_z, c0, sideband(+2.0), sideband(-2.0), d2};
}

double ion_separation(const IonSpecies& species, double omega_z) {
    require_positive_omega(omega_z);
    const double q = species.charge;
    const double d3 = q * q /
        (2.0 * constants::pi * species.mass * constants::epsilon0 * omega_z * omega_z);
    return std::cbrt(d3);
}

double coulomb_coupling_coefficient(const IonSpecies& species, double d, bool aligned) {
    if (!(d > 0.0)) throw DomainError("ion separation must be positive");
    const double q = species.charge;
    const double chi = aligned ? 2.0 : 1.0;
    return q * q * chi / (4.0 * constants::pi * constants::epsilon0 * d * d * d);
}

} // namespace iontide
