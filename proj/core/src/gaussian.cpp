#include "iontide/gaussian.hpp"

#include <cmath>

#include "iontide/constants.hpp"
#include "iontide/errors.hpp"

namespace iontide {

using constants::pi;

GaussianState GaussianState::vacuum() { return GaussianState{}; }

GaussianState GaussianState::squeezed_vacuum(double r, double phi) {
    GaussianState s;
    const double c = std::cosh(2.0 * r);
    const double sh = std::sinh(2.0 * r);
    s.cov = {0.5 * (c - sh * std::cos(phi)), -0.5 * sh * std::sin(phi),
             -0.5 * sh * std::sin(phi), 0.5 * (c + sh * std::cos(phi))};
    return s;
}

double GaussianState::det() const { return cov[0] * cov[3] - cov[1] * cov[2]; }

double GaussianState::smallest_eigenvalue() const {
    const double tr_half = 0.5 * (cov[0] + cov[3]);
    const double disc = std::sqrt(0.25 * (cov[0] - cov[3]) * (cov[0] - cov[3]) + cov[1] * cov[2]);
    return tr_half - disc;
}

double GaussianState::largest_eigenvalue() const {
    const double tr_half = 0.5 * (cov[0] + cov[3]);
    const double disc = std::sqrt(0.25 * (cov[0] - cov[3]) * (cov[0] - cov[3]) + cov[1] * cov[2]);
    return tr_half + disc;
}

void GaussianState::validate(double tol) const {
    if (std::abs(cov[1] - cov[2]) > tol)
        throw NumericalError("covariance matrix lost symmetry");
    if (!(smallest_eigenvalue() > 0.0))
        throw NumericalError("covariance matrix lost positive definiteness");
    if (det() < 0.25 * (1.0 - tol))
        throw NumericalError("covariance matrix violates the uncertainty bound");
}

Symplectic symplectic_rotation(double lambda, double omega, double t) {
    if (!(lambda > 0.0)) throw DomainError("frequency ratio must be positive");
    const double phase = omega * lambda * t;
    const double c = std::cos(phase);
    const double s = std::sin(phase);
    return Symplectic{c, lambda * s, -s / lambda, c};
}

GaussianState evolve_covariance(const GaussianState& state, double lambda, double omega,
                                double t) {
    const Symplectic S = symplectic_rotation(lambda, omega, t);
    GaussianState out;
    out.mean = {S[0] * state.mean[0] + S[1] * state.mean[1],
                S[2] * state.mean[0] + S[3] * state.mean[1]};
    // S sigma S^T
    const double a = state.cov[0], b = state.cov[1], c = state.cov[2], d = state.cov[3];
    const double r0 = S[0] * a + S[1] * c;
    const double r1 = S[0] * b + S[1] * d;
    const double r2 = S[2] * a + S[3] * c;
    const double r3 = S[2] * b + S[3] * d;
    out.cov = {r0 * S[0] + r1 * S[1], r0 * S[2] + r1 * S[3],
               r2 * S[0] + r3 * S[1], r2 * S[2] + r3 * S[3]};
    out.validate();
    return out;
}

SqueezeProtocol SqueezeProtocol::make(double omega1, double lambda, int cycles) {
    if (!(omega1 > 0.0)) throw DomainError("protocol frequency must be positive");
    if (!(lambda > 0.0)) throw DomainError("frequency ratio must be positive");
    if (cycles < 1) throw DomainError("protocol needs at least one cycle");
    return SqueezeProtocol{omega1, lambda, cycles};
}

SqueezeProtocol SqueezeProtocol::from_frequencies(double omega1, double omega2, int cycles) {
    if (!(omega2 > 0.0)) throw DomainError("protocol frequency must be positive");
    return make(omega1, omega2 / omega1, cycles);
}

double SqueezeProtocol::hold() const { return pi / (2.0 * lambda * omega1); }

double SqueezeProtocol::cycle_period() const {
    return (1.0 + 1.0 / lambda) * pi / (2.0 * omega1);
}

SqueezeRun run_squeeze_protocol(const SqueezeProtocol& protocol, const GaussianState& initial) {
    initial.validate();
    SqueezeRun run;
    run.final = initial;
    const double quarter = pi / (2.0 * protocol.omega1);
    for (int cycle = 1; cycle <= protocol.cycles; ++cycle) {
        run.final = evolve_covariance(run.final, protocol.lambda, protocol.omega1,
                                      protocol.hold());
        // switch back to omega1: instantaneous, no covariance change
        const auto metric = squeezing_metric(run.final);
        run.record.push_back(CycleRecord{cycle, run.final.smallest_eigenvalue(), metric.db,
                                         run.final.det()});
        if (cycle < protocol.cycles)
            run.final = evolve_covariance(run.final, 1.0, protocol.omega1, quarter);
    }
    return run;
}

SqueezingMetric squeezing_metric(const GaussianState& state) {
    const double nu = state.smallest_eigenvalue();
    const double ratio = 2.0 * nu;
    return SqueezingMetric{-0.5 * std::log(ratio), 10.0 * std::log10(ratio), ratio, 1.0 / ratio};
}

double max_extent(const GaussianState& state, double a0) {
    return a0 * std::sqrt(2.0 * state.largest_eigenvalue());
}

double squeezed_lifetime(double gamma, double r) {
    if (!(gamma > 0.0)) throw DomainError("heating rate must be positive");
    return 2.0 / (gamma * std::cosh(2.0 * r));
}

double squeezed_lifetime_from_lambda(double gamma, double lambda_squared) {
    if (!(lambda_squared > 0.0)) throw DomainError("variance ratio must be positive");
    // e^{2r} = 1/lambda^2
    return squeezed_lifetime(gamma, -0.5 * std::log(lambda_squared));
}

double displacement_noise_overlap(double gamma, double r, double t) {
    if (!(t >= 0.0)) throw DomainError("time must be nonnegative");
    return std::exp(-t / squeezed_lifetime(gamma, r));
}

} // namespace iontide
