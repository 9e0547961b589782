#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "iontide/constants.hpp"
#include "iontide/errors.hpp"
#include "iontide/species.hpp"
#include "iontide/trap.hpp"

using namespace iontide;
using constants::two_pi;

namespace {
const IonSpecies& ca = IonSpecies::ca40();
const double omega_1mhz = two_pi * 1e6;
} // namespace

TEST_CASE("ground state extent matches the quoted 11 nm and its scalings") {
    const double a0 = ground_state_extent(ca, omega_1mhz);
    CHECK(a0 == doctest::Approx(11e-9).epsilon(0.03));

    // a0^2 * 2 m w / hbar = 1 for any species and frequency
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> mass(1e-27, 1e-24), freq(1e4, 1e9);
    for (int i = 0; i < 50; ++i) {
        const IonSpecies s = IonSpecies::make(mass(rng), constants::elementary_charge, "x");
        const double w = freq(rng);
        const double a = ground_state_extent(s, w);
        CHECK(a * a * 2.0 * s.mass * w / constants::hbar == doctest::Approx(1.0).epsilon(1e-14));
    }

    const IonSpecies heavy = IonSpecies::make(4.0 * ca.mass, ca.charge, "4m");
    CHECK(ground_state_extent(heavy, omega_1mhz) == doctest::Approx(a0 / 2.0).epsilon(1e-14));
    CHECK(ground_state_extent(ca, 4.0 * omega_1mhz) == doctest::Approx(a0 / 2.0).epsilon(1e-14));
    CHECK_THROWS_AS(ground_state_extent(ca, 0.0), DomainError);
}

TEST_CASE("coherent amplitude conventions") {
    const double alpha0 = coherent_amplitude(50e-6, ca, omega_1mhz);
    CHECK(std::abs(alpha0) == doctest::Approx(4450.0).epsilon(0.01));
    CHECK(alpha0 < 0.0);
    CHECK(coherent_amplitude(0.0, ca, omega_1mhz) == 0.0);
    CHECK(coherent_amplitude(-50e-6, ca, omega_1mhz) == doctest::Approx(-alpha0));
    // displacement-operator convention is exactly half the magnitude
    CHECK(displacement_amplitude(50e-6, ca, omega_1mhz) ==
          doctest::Approx(-alpha0 / 2.0).epsilon(1e-14));
}

TEST_CASE("heating rate: zero noise, scaling, and algebraic round trip") {
    CHECK(heating_rate(ca, omega_1mhz, 0.0) == 0.0);
    const double s_e = 3.7e-12;
    CHECK(heating_rate(ca, 2.0 * omega_1mhz, s_e) ==
          doctest::Approx(heating_rate(ca, omega_1mhz, s_e) / 2.0).epsilon(1e-14));
    CHECK(heating_rate(ca, omega_1mhz, 2.0 * s_e) ==
          doctest::Approx(2.0 * heating_rate(ca, omega_1mhz, s_e)).epsilon(1e-14));

    // invert Eq for S_E at Gamma = 10 quanta/s and close the loop
    const double s_for_10 = field_density_for_heating_rate(ca, omega_1mhz, 10.0);
    CHECK(heating_rate(ca, omega_1mhz, s_for_10) == doctest::Approx(10.0).epsilon(1e-12));
    CHECK_THROWS_AS(heating_rate(ca, omega_1mhz, -1.0), DomainError);

    const NoiseModel by_rate = NoiseModel::from_heating_rate(10.0);
    CHECK(by_rate.field_density(ca, omega_1mhz) == doctest::Approx(s_for_10).epsilon(1e-14));
    const NoiseModel by_density = NoiseModel::from_field_density(s_for_10);
    CHECK(by_density.heating_rate(ca, omega_1mhz) == doctest::Approx(10.0).epsilon(1e-14));
}

TEST_CASE("micromotion sidebands: quoted size, limits, self-consistency") {
    const TrapContext trap = TrapContext::make(omega_1mhz, two_pi * 100e6, 8e-6, 4.0);
    const auto mm = micromotion_coefficients(trap, ca, 100e-6);

    CHECK(mm.c_plus2 == doctest::Approx(2.5e-15).epsilon(0.15));
    CHECK(mm.c_minus2 == doctest::Approx(2.5e-15).epsilon(0.15));
    CHECK(std::abs(mm.c_plus2) < 1e-3 * mm.c0);
    CHECK(mm.beta_z ==
          doctest::Approx(std::sqrt(mm.a_z + mm.q_z * mm.q_z / 2.0)).epsilon(1e-12));

    // no rf curvature, no sidebands
    const TrapContext dc = TrapContext::make(omega_1mhz, two_pi * 100e6, 8e-6, 0.0);
    const auto mm_dc = micromotion_coefficients(dc, ca, 100e-6);
    CHECK(mm_dc.q_z == 0.0);
    CHECK(mm_dc.c_plus2 == 0.0);

    // linear in the secular amplitude
    const auto mm2 = micromotion_coefficients(trap, ca, 200e-6);
    CHECK(mm2.c_plus2 == doctest::Approx(2.0 * mm.c_plus2).epsilon(1e-12));

    // small-parameter limit: C -> C0 q_z / 4
    for (const double d2 : {1e-3, 1e-6, 1e-9}) {
        const TrapContext weak = TrapContext::make(omega_1mhz, two_pi * 100e6, 0.0, d2);
        const auto w = micromotion_coefficients(weak, ca, 100e-6);
        const double leading = w.c0 * w.q_z / 4.0;
        CHECK(w.c_plus2 / leading == doctest::Approx(1.0).epsilon(10.0 * w.beta_z + 1e-12));
        CHECK(w.c_minus2 / leading == doctest::Approx(1.0).epsilon(10.0 * w.beta_z + 1e-12));
    }

    // a_z = 1, q_z = 0 puts the -2 sideband exactly on resonance
    const double c2_res = ca.mass * std::pow(two_pi * 100e6, 2) / (8.0 * ca.charge);
    const TrapContext res = TrapContext::make(omega_1mhz, two_pi * 100e6, c2_res, 0.0);
    CHECK_THROWS_AS(micromotion_coefficients(res, ca, 100e-6), ResonanceError);
}

TEST_CASE("two-ion separation against the classical force balance") {
    const double d = ion_separation(ca, omega_1mhz);

    // oracle: root of m w^2 d/2 = k q^2 / d^2 by bisection
    const double k = ca.charge * ca.charge / (4.0 * constants::pi * constants::epsilon0);
    auto force_gap = [&](double x) {
        return ca.mass * omega_1mhz * omega_1mhz * x / 2.0 - k / (x * x);
    };
    double lo = 1e-7, hi = 1e-4;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (force_gap(mid) > 0.0 ? hi : lo) = mid;
    }
    CHECK(d == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-10));

    CHECK(ion_separation(ca, 4.0 * omega_1mhz) ==
          doctest::Approx(d / std::pow(4.0, 2.0 / 3.0)).epsilon(1e-12));
    const IonSpecies heavy = IonSpecies::make(2.0 * ca.mass, ca.charge, "2m");
    CHECK(ion_separation(heavy, omega_1mhz) ==
          doctest::Approx(d / std::cbrt(2.0)).epsilon(1e-12));
}

TEST_CASE("coulomb coupling coefficient vs a finite-difference oracle") {
    const double d = 5e-6;
    CHECK(coulomb_coupling_coefficient(ca, d, true) ==
          doctest::Approx(2.0 * coulomb_coupling_coefficient(ca, d, false)).epsilon(1e-14));
    CHECK(coulomb_coupling_coefficient(ca, 2.0 * d, true) ==
          doctest::Approx(coulomb_coupling_coefficient(ca, d, true) / 8.0).epsilon(1e-14));

    const double k = ca.charge * ca.charge / (4.0 * constants::pi * constants::epsilon0);
    const double h = 1e-4 * d;
    // mixed second partial of the full Coulomb energy about equilibrium
    auto aligned_energy = [&](double x1, double x2) { return k / (d + x1 - x2); };
    auto transverse_energy = [&](double x1, double x2) {
        return k / std::sqrt(d * d + (x1 - x2) * (x1 - x2));
    };
    auto mixed = [&](auto&& u) {
        return (u(h, h) - u(h, -h) - u(-h, h) + u(-h, -h)) / (4.0 * h * h);
    };
    CHECK(std::abs(mixed(aligned_energy)) ==
          doctest::Approx(coulomb_coupling_coefficient(ca, d, true)).epsilon(1e-6));
    CHECK(std::abs(mixed(transverse_energy)) ==
          doctest::Approx(coulomb_coupling_coefficient(ca, d, false)).epsilon(1e-6));
}

TEST_CASE("species and context validation") {
    CHECK_THROWS_AS(IonSpecies::make(-1.0, 1.0, "bad"), DomainError);
    CHECK_THROWS_AS(IonSpecies::make(1e-26, 0.0, "bad"), DomainError);
    CHECK_THROWS_AS(TrapContext::make(omega_1mhz, omega_1mhz / 2.0, 0.0, 0.0), DomainError);
    CHECK(ca.label == "40Ca+");
}
