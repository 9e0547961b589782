#include "iontide/species.hpp"

#include <cmath>

#include "iontide/constants.hpp"
#include "iontide/errors.hpp"
#include "iontide/trap.hpp"

namespace iontide {

IonSpecies IonSpecies::make(double mass, double charge, std::string label) {
    if (!(mass > 0.0)) throw DomainError("ion mass must be positive");
    if (charge == 0.0 || !std::isfinite(charge)) throw DomainError("ion charge must be nonzero");
    return IonSpecies{mass, charge, std::move(label)};
}

const IonSpecies& IonSpecies::ca40() {
    static const IonSpecies s = make(
        39.9626 * constants::atomic_mass_unit - constants::electron_mass,
        constants::elementary_charge, "40Ca+");
    return s;
}

TrapContext TrapContext::make(double secular, double drive, double c2, double d2) {
    if (!(secular > 0.0)) throw DomainError("secular frequency must be positive");
    if (!(drive > secular))
        throw DomainError("drive frequency must exceed the secular frequency");
    return TrapContext{secular, drive, c2, d2};
}

NoiseModel NoiseModel::from_field_density(double s_e) {
    if (!(s_e >= 0.0)) throw DomainError("field noise density must be >= 0");
    NoiseModel m;
    m.field_density_ = s_e;
    return m;
}

NoiseModel NoiseModel::from_heating_rate(double gamma) {
    if (!(gamma >= 0.0)) throw DomainError("heating rate must be >= 0");
    NoiseModel m;
    m.rate_ = gamma;
    return m;
}

double NoiseModel::heating_rate(const IonSpecies& species, double omega) const {
    if (rate_) return *rate_;
    return iontide::heating_rate(species, omega, *field_density_);
}

double NoiseModel::field_density(const IonSpecies& species, double omega) const {
    if (field_density_) return *field_density_;
    return field_density_for_heating_rate(species, omega, *rate_);
}

} // namespace iontide
