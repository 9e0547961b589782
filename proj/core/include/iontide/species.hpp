#pragma once

#include <optional>
#include <string>

namespace iontide {

/// A trapped-ion species: mass in kg, signed charge in C.
struct IonSpecies {
    double mass;
    double charge;
    std::string label;

    static IonSpecies make(double mass, double charge, std::string label);

    /// 40Ca+: 39.9626 u minus one electron mass, charge +e. The neutral-atom
    /// mass is the tabulated isotope mass; the ionization correction matters
    /// only in the sixth digit but costs nothing to carry.
    static const IonSpecies& ca40();
};

/// Static trap drive parameters entering the axial micromotion expansion.
/// c2 and d2 are the second-order coefficients of the dc and rf contributions
/// to the axial potential.
struct TrapContext {
    double secular_angular_frequency;  // rad/s
    double drive_angular_frequency;    // rad/s
    double dc_axial_curvature;         // V/m^2
    double rf_axial_curvature;         // V/m^2

    static TrapContext make(double secular, double drive, double c2, double d2);
};

/// Electric-field noise at the secular frequency, given either as a spectral
/// density S_E ((V/m)^2/Hz) or directly as a heating rate (quanta/s).
class NoiseModel {
public:
    static NoiseModel from_field_density(double s_e);
    static NoiseModel from_heating_rate(double gamma);

    bool has_field_density() const { return field_density_.has_value(); }

    /// Heating rate in quanta/s for the given ion and secular frequency.
    double heating_rate(const IonSpecies& species, double omega) const;

    /// Field noise density, inverting the heating-rate relation when the
    /// model was specified as a rate.
    double field_density(const IonSpecies& species, double omega) const;

private:
    std::optional<double> field_density_;
    std::optional<double> rate_;
};

} // namespace iontide
