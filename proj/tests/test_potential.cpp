#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "iontide/constants.hpp"
#include "iontide/errors.hpp"
#include "iontide/potential.hpp"
#include "iontide/species.hpp"

using namespace iontide;
using constants::pi;
using constants::two_pi;

namespace {
const IonSpecies& ca = IonSpecies::ca40();
}

TEST_CASE("potential value: harmonic core, quartic sign, cubic asymmetry") {
    const PotentialSpec harm = PotentialSpec::harmonic(1e6, 0.0);
    const double c2 = 2.0 * pi * pi * ca.mass * 1e12;
    CHECK(potential_value(harm, ca, 3e-6) == doctest::Approx(c2 * 9e-12).epsilon(1e-14));

    // effectively infinite cubic scale is dropped exactly, so the well is
    // symmetric about its center
    const PotentialSpec step2 = PotentialSpec::make(1e6, 1e10 * 1e-6, -120e-6, 0.0);
    CHECK(!step2.L3);
    CHECK(potential_value(step2, ca, 49e-6) ==
          doctest::Approx(potential_value(step2, ca, -49e-6)).epsilon(1e-9));

    // softening quartic lies below the harmonic parabola everywhere off-center
    for (const double u : {-80e-6, -10e-6, 5e-6, 60e-6})
        CHECK(potential_value(step2, ca, u) < potential_value(harm, ca, u));

    // a finite cubic term breaks the symmetry
    const PotentialSpec cubic = PotentialSpec::make(1e6, 140e-6, std::nullopt, 0.0);
    CHECK(potential_value(cubic, ca, 20e-6) != potential_value(cubic, ca, -20e-6));

    CHECK_THROWS_AS(PotentialSpec::make(0.0, std::nullopt, std::nullopt, 0.0), DomainError);
}

TEST_CASE("local frequency: center value, zero crossing, finite-difference oracle") {
    const PotentialSpec spec = PotentialSpec::make(1e6, std::nullopt, -120e-6, 0.0);
    const double w0 = spec.omega0();
    CHECK(local_frequency_squared(spec, 0.0) == doctest::Approx(w0 * w0).epsilon(1e-14));

    const double z1 = 120e-6 / std::sqrt(6.0);
    CHECK(local_frequency_squared(spec, z1) == doctest::Approx(0.0).scale(w0 * w0));
    CHECK(local_frequency_squared(spec, 1.01 * z1) < 0.0);

    CHECK(local_frequency(spec, 0.0).confining);
    CHECK(local_frequency(spec, 0.0).omega == doctest::Approx(w0).epsilon(1e-14));
    CHECK(!local_frequency(spec, 1.05 * z1).confining);
    CHECK(local_frequency(spec, 1.05 * z1).omega > 0.0);

    // d2V/dz2 / m from central differences, over random wells and offsets
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> zdist(-60e-6, 60e-6);
    std::uniform_real_distribution<double> fdist(0.3e6, 4e6);
    std::uniform_real_distribution<double> ldist(80e-6, 400e-6);
    std::uniform_int_distribution<int> coin(0, 1);
    const double h = 1e-9;
    for (int i = 0; i < 20; ++i) {
        const double sign = coin(rng) ? 1.0 : -1.0;
        const PotentialSpec random_spec =
            PotentialSpec::make(fdist(rng), std::nullopt, sign * ldist(rng), 0.0);
        const double w0r = random_spec.omega0();
        const double z = zdist(rng);
        const double fd = (potential_value(random_spec, ca, z + h) -
                           2.0 * potential_value(random_spec, ca, z) +
                           potential_value(random_spec, ca, z - h)) /
                          (h * h * ca.mass);
        CHECK(local_frequency_squared(random_spec, z) ==
              doctest::Approx(fd).epsilon(1e-6).scale(w0r * w0r));
    }
}

TEST_CASE("harmonic minimum sits at the well center") {
    const PotentialSpec spec = PotentialSpec::harmonic(1.3e6, 7e-6);
    double best_z = 0.0, best_v = 1e300;
    for (int i = 0; i <= 20000; ++i) {
        const double z = -40e-6 + 80e-6 * i / 20000.0;
        const double v = potential_value(spec, ca, z);
        if (v < best_v) {
            best_v = v;
            best_z = z;
        }
    }
    CHECK(std::abs(best_z - 7e-6) < 1.5 * 80e-6 / 20000.0);
}

TEST_CASE("anti-confinement thresholds and the bisection cross-check") {
    const PotentialSpec spec = PotentialSpec::make(1e6, std::nullopt, -120e-6, 0.0);
    const auto th = anticonfining_threshold(spec);
    CHECK(!th.always_confining);
    CHECK(th.curvature_sign_change == doctest::Approx(48.9898e-6).epsilon(1e-4));
    CHECK(th.force_sign_change == doctest::Approx(84.8528e-6).epsilon(1e-4));

    // z2 as the nonzero root of dV/du by bisection
    double lo = 60e-6, hi = 120e-6;
    for (int i = 0; i < 100; ++i) {
        const double mid = 0.5 * (lo + hi);
        (potential_derivative(spec, ca, mid) > 0.0 ? lo : hi) = mid;
    }
    CHECK(th.force_sign_change == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-10));

    CHECK(anticonfining_threshold(PotentialSpec::harmonic(1e6)).always_confining);
    CHECK(anticonfining_threshold(PotentialSpec::make(1e6, std::nullopt, +120e-6, 0.0))
              .always_confining);

    // quoted edge of the scanned range: anti-confining inside the transport region
    const PotentialSpec edge = PotentialSpec::make(1e6, std::nullopt, -1e-6 / 0.014, 0.0);
    CHECK(anticonfining_threshold(edge).curvature_sign_change < 50e-6);
    CHECK(anticonfining_threshold(edge).curvature_sign_change ==
          doctest::Approx(29.2e-6).epsilon(0.01));
}

TEST_CASE("classical arrival time: harmonic limit and an RK4 oracle") {
    const PotentialSpec harm = PotentialSpec::harmonic(1e6, 0.0);
    CHECK(transport_arrival_time(harm, 50e-6) ==
          doctest::Approx(pi / harm.omega0()).epsilon(1e-14));

    auto rk4_arrival = [&](const PotentialSpec& spec, double z0) {
        // integrate m z'' = -V'(z) from rest at -z0 until the velocity flips
        const double dt = (pi / spec.omega0()) / 200000.0;
        double z = -z0, v = 0.0, t = 0.0;
        auto acc = [&](double x) { return -potential_derivative(spec, ca, x) / ca.mass; };
        for (;;) {
            const double k1z = v, k1v = acc(z);
            const double k2z = v + 0.5 * dt * k1v, k2v = acc(z + 0.5 * dt * k1z);
            const double k3z = v + 0.5 * dt * k2v, k3v = acc(z + 0.5 * dt * k2z);
            const double k4z = v + dt * k3v, k4v = acc(z + dt * k3z);
            const double v_new = v + dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
            const double z_new = z + dt / 6.0 * (k1z + 2.0 * k2z + 2.0 * k3z + k4z);
            if (t > 0.0 && v > 0.0 && v_new <= 0.0) {
                return t + dt * v / (v - v_new); // linear crossing estimate
            }
            z = z_new;
            v = v_new;
            t += dt;
        }
    };

    const PotentialSpec soft = PotentialSpec::make(1e6, std::nullopt, -120e-6, 0.0);
    const double t_soft = transport_arrival_time(soft, 50e-6);
    CHECK(t_soft == doctest::Approx(rk4_arrival(soft, 50e-6)).epsilon(1e-6));
    CHECK(t_soft > pi / soft.omega0()); // softened well swings slower

    const PotentialSpec hard = PotentialSpec::make(1e6, std::nullopt, +120e-6, 0.0);
    const double t_hard = transport_arrival_time(hard, 50e-6);
    CHECK(t_hard == doctest::Approx(rk4_arrival(hard, 50e-6)).epsilon(1e-6));
    CHECK(t_hard < pi / hard.omega0());

    CHECK_THROWS_AS(transport_arrival_time(soft, 90e-6), GeometryError);
    const PotentialSpec cubic = PotentialSpec::make(1e6, 140e-6, std::nullopt, 0.0);
    CHECK_THROWS_AS(transport_arrival_time(cubic, 10e-6), DomainError);
}

TEST_CASE("transition shapes and the transport program") {
    const double z0 = 50e-6;
    const double omega = two_pi * 1e6;
    const double tau = 5e-9;
    const PotentialSpec well = PotentialSpec::harmonic(1e6, 0.0);

    SUBCASE("instantaneous program sits at the transport center") {
        const auto protocol = TransportProtocol::make(
            well.at_center(-z0), well, well.at_center(z0), TransitionShape::instantaneous(),
            pi / omega, TransitionShape::instantaneous());
        CHECK(protocol.center(0.25 * pi / omega) == 0.0);
        CHECK(protocol.center(protocol.total_duration()) == z0);
        CHECK_THROWS_AS(protocol.center(-1e-9), DomainError);
        CHECK_THROWS_AS(protocol.center(protocol.total_duration() + 1e-9), DomainError);
    }

    SUBCASE("sinusoidal throw midpoint and linear catch midpoint") {
        const auto protocol = TransportProtocol::make(
            well.at_center(-z0), well, well.at_center(z0), TransitionShape::sinusoidal(tau),
            pi / omega - tau, TransitionShape::linear(tau));
        CHECK(protocol.center(tau / 2.0) == doctest::Approx(-z0 / 2.0).epsilon(1e-12));
        const double mid_catch = protocol.catch_start() + tau / 2.0;
        CHECK(protocol.center(mid_catch) == doctest::Approx(z0 / 2.0).epsilon(1e-12));
    }

    SUBCASE("continuity and odd symmetry of a symmetric ramp program") {
        const auto protocol = TransportProtocol::make(
            well.at_center(-z0), well, well.at_center(z0), TransitionShape::linear(tau),
            pi / omega - tau, TransitionShape::linear(tau));
        const double total = protocol.total_duration();
        double prev = protocol.center(0.0);
        double max_jump = 0.0;
        for (int i = 1; i <= 5000; ++i) {
            const double s = protocol.center(total * i / 5000.0);
            max_jump = std::max(max_jump, std::abs(s - prev));
            prev = s;
        }
        CHECK(max_jump < z0 * total / tau / 4000.0);

        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> d(0.0, total / 2.0);
        for (int i = 0; i < 30; ++i) {
            const double delta = d(rng);
            CHECK(protocol.center(total / 2.0 + delta) ==
                  doctest::Approx(-protocol.center(total / 2.0 - delta)).scale(z0));
        }
    }

    SUBCASE("sampled shapes load from two-column csv") {
        const auto dir = std::filesystem::temp_directory_path() / "iontide_shapes";
        std::filesystem::create_directories(dir);
        const auto path = dir / "ramp.csv";
        {
            std::ofstream out(path);
            out << "# measured ramp\n";
            out << "time,position\n";
            out << "0,-5e-05\n";
            out << "1e-9,-4.4e-05\n";
            out << "2.5e-9,-2e-05\n";
            out << "4e-9,-4e-06\n";
            out << "5e-9,0\n";
        }
        const auto shape = TransitionShape::sampled_from_csv(path);
        CHECK(shape.kind == TransitionShape::Kind::sampled);
        CHECK(shape.duration == doctest::Approx(5e-9));
        CHECK(shape.at(0.0) == 0.0);
        CHECK(shape.at(5e-9) == 1.0);
        CHECK(shape.at(2.5e-9) == doctest::Approx(0.6).epsilon(1e-12)); // (z - z0)/(z1 - z0)

        std::ofstream(dir / "bad.csv") << "0,0\n1e-9 0.5\n";
        CHECK_THROWS_AS(TransitionShape::sampled_from_csv(dir / "bad.csv"), DomainError);
        CHECK_THROWS_AS(TransitionShape::sampled_from_csv(dir / "missing.csv"), DomainError);
    }

    SUBCASE("sampled shapes interpolate monotonically and differentiate") {
        std::vector<double> times{0.0, 1e-9, 2.5e-9, 4e-9, 5e-9};
        std::vector<double> progress{0.0, 0.1, 0.55, 0.9, 1.0};
        const auto shape = TransitionShape::sampled(times, progress);
        CHECK(shape.at(0.0) == 0.0);
        CHECK(shape.at(5e-9) == 1.0);
        double prev = -1.0;
        for (int i = 0; i <= 500; ++i) {
            const double g = shape.at(5e-9 * i / 500.0);
            CHECK(g >= prev - 1e-15);
            prev = g;
        }
        const double h = 1e-14;
        for (const double t : {0.7e-9, 2.0e-9, 3.3e-9, 4.6e-9}) {
            const double fd = (shape.at(t + h) - shape.at(t - h)) / (2.0 * h);
            CHECK(shape.rate(t) == doctest::Approx(fd).epsilon(1e-5));
        }
        CHECK_THROWS_AS(TransitionShape::sampled({0.0, 1e-9}, {0.0, 0.5}), DomainError);
        CHECK_THROWS_AS(TransitionShape::sampled({0.0, 0.0}, {0.0, 1.0}), DomainError);
    }

    SUBCASE("well placement is validated") {
        CHECK_THROWS_AS(TransportProtocol::make(well.at_center(-z0), well.at_center(1e-6),
                                                well.at_center(z0),
                                                TransitionShape::instantaneous(), 1e-6,
                                                TransitionShape::instantaneous()),
                        DomainError);
    }
}

TEST_CASE("ingest threshold keeps real scales and drops sentinel ones") {
    CHECK(!ingest_length_scale(1e4));
    CHECK(!ingest_length_scale(-2.0));
    CHECK(ingest_length_scale(-200e-6) == -200e-6);
    CHECK(!ingest_length_scale(std::nullopt));
}
