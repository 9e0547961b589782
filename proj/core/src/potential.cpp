#include "iontide/potential.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "iontide/constants.hpp"
#include "iontide/errors.hpp"
#include "internal/quadrature.hpp"

namespace iontide {

using constants::pi;

PotentialSpec PotentialSpec::harmonic(double f_z, double center) {
    return make(f_z, std::nullopt, std::nullopt, center);
}

PotentialSpec PotentialSpec::make(double f_z, std::optional<double> L3,
                                  std::optional<double> L4, double center) {
    if (!(f_z > 0.0)) throw DomainError("well frequency must be positive");
    L3 = ingest_length_scale(L3);
    L4 = ingest_length_scale(L4);
    if ((L3 && *L3 == 0.0) || (L4 && *L4 == 0.0))
        throw DomainError("anharmonic length scales must be nonzero");
    return PotentialSpec{f_z, L3, L4, center};
}

double PotentialSpec::omega0() const { return constants::two_pi * f_z; }

PotentialSpec PotentialSpec::at_center(double new_center) const {
    PotentialSpec copy = *this;
    copy.center = new_center;
    return copy;
}

std::optional<double> ingest_length_scale(std::optional<double> value) {
    if (value && std::abs(*value) > effectively_infinite_length) return std::nullopt;
    return value;
}

double potential_value(const PotentialSpec& spec, const IonSpecies& species, double z) {
    const double u = z - spec.center;
    const double c2 = 2.0 * pi * pi * species.mass * spec.f_z * spec.f_z;
    double shape = 1.0;
    if (spec.L3) shape += u / *spec.L3;
    if (spec.L4) {
        const double l4 = *spec.L4;
        shape += std::copysign(1.0, l4) * u * u / (l4 * l4);
    }
    return c2 * u * u * shape;
}

double potential_derivative(const PotentialSpec& spec, const IonSpecies& species, double z) {
    const double u = z - spec.center;
    const double c2 = 2.0 * pi * pi * species.mass * spec.f_z * spec.f_z;
    double d = 2.0 * u;
    if (spec.L3) d += 3.0 * u * u / *spec.L3;
    if (spec.L4) {
        const double l4 = *spec.L4;
        d += std::copysign(1.0, l4) * 4.0 * u * u * u / (l4 * l4);
    }
    return c2 * d;
}

double local_frequency_squared(const PotentialSpec& spec, double z) {
    const double u = z - spec.center;
    const double w0 = spec.omega0();
    double factor = 1.0;
    if (spec.L4) {
        const double l4 = *spec.L4;
        factor += 6.0 * std::copysign(1.0, l4) * u * u / (l4 * l4);
    }
    return w0 * w0 * factor;
}

LocalFrequency local_frequency(const PotentialSpec& spec, double z) {
    const double w2 = local_frequency_squared(spec, z);
    return LocalFrequency{std::sqrt(std::abs(w2)), w2 >= 0.0};
}

ConfinementThresholds anticonfining_threshold(const PotentialSpec& spec) {
    if (!spec.L4 || *spec.L4 > 0.0) {
        return ConfinementThresholds{true, 0.0, 0.0};
    }
    const double l4 = std::abs(*spec.L4);
    return ConfinementThresholds{false, l4 / std::sqrt(6.0), l4 / std::sqrt(2.0)};
}

double transport_arrival_time(const PotentialSpec& spec, double z0) {
    if (!(z0 > 0.0)) throw DomainError("release distance must be positive");
    if (spec.L3)
        throw DomainError("arrival time is defined for cubic-free transport wells");
    const double w0 = spec.omega0();
    if (!spec.L4) return pi / w0;

    const double l4 = *spec.L4;
    const double kappa = std::copysign(1.0, l4) * z0 * z0 / (l4 * l4);
    if (kappa <= -0.5)
        throw GeometryError("release point lies at or beyond the anti-confinement edge");

    // Half period of u'' = -V'(u)/m released at rest from |u| = z0:
    //   T/2 = (1/w0) Int_{-pi/2}^{pi/2} dtheta / sqrt(1 + kappa + kappa sin^2 theta)
    // after the turning-point substitution u = z0 sin(theta).
    const auto integrand = [&](double theta) {
        const double s = std::sin(theta);
        return 1.0 / std::sqrt(1.0 + kappa + kappa * s * s);
    };
    const double integral =
        internal::adaptive_simpson(integrand, -0.5 * pi, 0.5 * pi, 1e-13);
    return integral / w0;
}

TransitionShape TransitionShape::instantaneous() { return TransitionShape{}; }

TransitionShape TransitionShape::linear(double duration) {
    if (!(duration > 0.0)) throw DomainError("ramp duration must be positive");
    return TransitionShape{Kind::linear, duration, {}, {}};
}

TransitionShape TransitionShape::sinusoidal(double duration) {
    if (!(duration > 0.0)) throw DomainError("ramp duration must be positive");
    return TransitionShape{Kind::sinusoidal, duration, {}, {}};
}

TransitionShape TransitionShape::sampled_from_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open sampled-shape file " + path.string());
    std::vector<double> times, positions;
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        double t = 0.0, z = 0.0;
        char sep = 0;
        std::istringstream row(line);
        if (!(row >> t)) continue; // header line
        if (!(row >> sep) || sep != ',' || !(row >> z))
            throw DomainError("sampled-shape rows must be 'time,position': " + line);
        times.push_back(t);
        positions.push_back(z);
    }
    if (times.size() < 2) throw DomainError("sampled shape needs at least two rows");
    const double z_first = positions.front();
    const double z_last = positions.back();
    if (z_last == z_first) throw DomainError("sampled shape must move the center");
    std::vector<double> progress;
    progress.reserve(positions.size());
    for (const double z : positions) progress.push_back((z - z_first) / (z_last - z_first));
    // time origin at the first sample
    const double t0 = times.front();
    for (auto& t : times) t -= t0;
    return sampled(std::move(times), std::move(progress));
}

TransitionShape TransitionShape::sampled(std::vector<double> times, std::vector<double> progress) {
    if (times.size() < 2 || times.size() != progress.size())
        throw DomainError("sampled shape needs matching time/progress grids");
    if (times.front() != 0.0) throw DomainError("sampled shape must start at t = 0");
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (!(times[i] > times[i - 1])) throw DomainError("sampled time grid must increase");
        if (progress[i] < progress[i - 1]) throw DomainError("sampled progress must be monotone");
    }
    if (progress.front() != 0.0 || progress.back() != 1.0)
        throw DomainError("sampled progress must run from 0 to 1 to match the segments around it");
    TransitionShape s{Kind::sampled, times.back(), std::move(times), std::move(progress)};
    return s;
}

namespace {

// Fritsch-Carlson slopes for a monotone cubic Hermite interpolant.
std::vector<double> pchip_slopes(const std::vector<double>& t, const std::vector<double>& g) {
    const std::size_t n = t.size();
    std::vector<double> h(n - 1), d(n - 1), m(n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = t[i + 1] - t[i];
        d[i] = (g[i + 1] - g[i]) / h[i];
    }
    if (n == 2) {
        m[0] = m[1] = d[0];
        return m;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (d[i - 1] * d[i] <= 0.0) {
            m[i] = 0.0;
        } else {
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            m[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
        }
    }
    auto endpoint = [](double h0, double h1, double d0, double d1) {
        double slope = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (slope * d0 <= 0.0) slope = 0.0;
        else if (d0 * d1 < 0.0 && std::abs(slope) > 3.0 * std::abs(d0)) slope = 3.0 * d0;
        return slope;
    };
    m[0] = endpoint(h[0], h[1], d[0], d[1]);
    m[n - 1] = endpoint(h[n - 2], h[n - 3], d[n - 2], d[n - 3]);
    return m;
}

struct HermiteEval {
    double value;
    double derivative;
};

HermiteEval pchip_eval(const std::vector<double>& t, const std::vector<double>& g,
                       const std::vector<double>& m, double x) {
    const auto it = std::upper_bound(t.begin(), t.end() - 1, x);
    const std::size_t i = (it == t.begin()) ? 0 : static_cast<std::size_t>(it - t.begin()) - 1;
    const double h = t[i + 1] - t[i];
    const double s = (x - t[i]) / h;
    const double s2 = s * s;
    const double s3 = s2 * s;
    const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
    const double h10 = s3 - 2.0 * s2 + s;
    const double h01 = -2.0 * s3 + 3.0 * s2;
    const double h11 = s3 - s2;
    const double v = h00 * g[i] + h * h10 * m[i] + h01 * g[i + 1] + h * h11 * m[i + 1];
    const double dh00 = (6.0 * s2 - 6.0 * s) / h;
    const double dh10 = 3.0 * s2 - 4.0 * s + 1.0;
    const double dh01 = (-6.0 * s2 + 6.0 * s) / h;
    const double dh11 = 3.0 * s2 - 2.0 * s;
    const double dv = dh00 * g[i] + dh10 * m[i] + dh01 * g[i + 1] + dh11 * m[i + 1];
    return HermiteEval{v, dv};
}

} // namespace

double TransitionShape::at(double t) const {
    switch (kind) {
        case Kind::instantaneous:
            return t < 0.0 ? 0.0 : 1.0;
        case Kind::linear:
            return std::clamp(t / duration, 0.0, 1.0);
        case Kind::sinusoidal: {
            const double x = std::clamp(t / duration, 0.0, 1.0);
            return 0.5 * (1.0 - std::cos(pi * x));
        }
        case Kind::sampled: {
            if (t <= 0.0) return 0.0;
            if (t >= duration) return 1.0;
            return pchip_eval(times, progress, pchip_slopes(times, progress), t).value;
        }
    }
    return 1.0;
}

double TransitionShape::rate(double t) const {
    switch (kind) {
        case Kind::instantaneous:
            return 0.0;
        case Kind::linear:
            return (t >= 0.0 && t <= duration) ? 1.0 / duration : 0.0;
        case Kind::sinusoidal: {
            if (t < 0.0 || t > duration) return 0.0;
            return 0.5 * pi / duration * std::sin(pi * t / duration);
        }
        case Kind::sampled: {
            if (t < 0.0 || t > duration) return 0.0;
            return pchip_eval(times, progress, pchip_slopes(times, progress), t).derivative;
        }
    }
    return 0.0;
}

TransportProtocol TransportProtocol::make(PotentialSpec initial_well, PotentialSpec transport_well,
                                          PotentialSpec final_well, TransitionShape throw_shape,
                                          double hold, TransitionShape catch_shape) {
    if (transport_well.center != 0.0)
        throw DomainError("transport well must be centered at z = 0");
    if (initial_well.center >= 0.0 || final_well.center != -initial_well.center)
        throw DomainError("wells must sit at -z0, 0, +z0");
    if (!(hold >= 0.0)) throw DomainError("hold must be nonnegative");
    return TransportProtocol{std::move(initial_well), std::move(transport_well),
                             std::move(final_well), std::move(throw_shape), hold,
                             std::move(catch_shape)};
}

double TransportProtocol::center(double t) const {
    const double z0 = displacement();
    const double total = total_duration();
    const double slack = 1e-9 * (total > 0.0 ? total : 1.0);
    if (t < -slack || t > total + slack)
        throw DomainError("time outside the transport program");
    t = std::clamp(t, 0.0, total);
    const double tau = throw_shape.duration;
    if (t < tau) return -z0 * (1.0 - throw_shape.at(t));
    const double cs = catch_start();
    if (t < cs) return 0.0;
    return z0 * catch_shape.at(t - cs);
}

double TransportProtocol::center_velocity(double t) const {
    const double z0 = displacement();
    const double tau = throw_shape.duration;
    if (t >= 0.0 && t <= tau && throw_shape.kind != TransitionShape::Kind::instantaneous)
        return z0 * throw_shape.rate(t);
    const double cs = catch_start();
    if (t >= cs && t <= cs + catch_shape.duration &&
        catch_shape.kind != TransitionShape::Kind::instantaneous)
        return z0 * catch_shape.rate(t - cs);
    return 0.0;
}

} // namespace iontide
