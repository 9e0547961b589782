#include "iontide/noise_mc.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "iontide/constants.hpp"
#include "iontide/errors.hpp"
#include "iontide/gaussian.hpp"
#include "iontide/trap.hpp"

namespace iontide {

using constants::hbar;
using constants::two_pi;

namespace {

// splitmix64: tiny, seedable, identical on every platform we build on.
struct Rng {
    std::uint64_t state;
    bool have_spare = false;
    double spare = 0.0;

    std::uint64_t next_u64() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
    double normal() {
        if (have_spare) {
            have_spare = false;
            return spare;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double mag = std::sqrt(-2.0 * std::log(u1));
        spare = mag * std::sin(two_pi * u2);
        have_spare = true;
        return mag * std::cos(two_pi * u2);
    }
};

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    Rng r{seed ^ (0x9e3779b97f4a7c15ull * (index + 1))};
    return r.next_u64();
}

} // namespace

std::vector<NoiseMcSample> displacement_noise_ensemble(const NoiseMcConfig& config) {
    if (!(config.omega > 0.0)) throw DomainError("secular frequency must be positive");
    if (!(config.field_density > 0.0)) throw DomainError("field noise density must be positive");
    if (config.realizations < 2) throw DomainError("need at least two realizations");
    if (config.steps_per_period < 4 || config.steps_per_period % 2 != 0)
        throw DomainError("steps per period must be an even number >= 4");
    if (config.times.empty()) throw DomainError("no sample times requested");

    const double period = two_pi / config.omega;
    const double dt = period / static_cast<double>(config.steps_per_period);
    const std::size_t half_period_steps = config.steps_per_period / 2;

    // Snap each sample time to a whole number of half periods: there the
    // discrete sum behind <alpha^2> cancels exactly, which is the cleanest
    // statement of the "cross terms average out" claim.
    std::vector<std::size_t> checkpoints;
    for (double t : config.times) {
        if (!(t > 0.0)) throw DomainError("sample times must be positive");
        const auto halves = std::max<std::size_t>(
            1, static_cast<std::size_t>(std::llround(t / (0.5 * period))));
        checkpoints.push_back(halves * half_period_steps);
    }
    const std::size_t total_steps = *std::max_element(checkpoints.begin(), checkpoints.end());
    const std::size_t n_times = checkpoints.size();
    const std::size_t n_real = config.realizations;

    const double a0 = ground_state_extent(config.species, config.omega);
    const double q = config.species.charge;
    // Exact per-step kick for piecewise-constant E over [t_k, t_k + dt]:
    //   d alpha = -(q a0/(hbar w)) (e^{i w dt} - 1) E_k e^{i w t_k}.
    const std::complex<double> kick =
        -(q * a0 / (hbar * config.omega)) *
        (std::exp(std::complex<double>(0.0, config.omega * dt)) - 1.0);
    // sigma_E chosen so the realized spectral density at w equals the request
    // for any step size: S_E(w) = 2 sigma_E^2 dt sinc^2(w dt/2).
    const double half_phase = 0.5 * config.omega * dt;
    const double sinc = std::sin(half_phase) / half_phase;
    const double sigma_e = std::sqrt(config.field_density / (2.0 * dt * sinc * sinc));

    const double cosh2r = std::cosh(2.0 * config.r);
    const double sinh2r = std::sinh(2.0 * config.r);
    const std::complex<double> phase_phi(std::cos(config.phi), std::sin(config.phi));

    struct PerRealization {
        double x;
        double abs_sq;
        double re_sq;
        double im_sq;
    };
    std::vector<PerRealization> table(n_real * n_times);

    const std::complex<double> rot = std::exp(std::complex<double>(0.0, config.omega * dt));

    std::vector<std::size_t> order(n_times);
    for (std::size_t j = 0; j < n_times; ++j) order[j] = j;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return checkpoints[a] < checkpoints[b]; });

    auto worker = [&](std::size_t first, std::size_t last) {
        for (std::size_t i = first; i < last; ++i) {
            Rng rng{mix_seed(config.seed, i)};
            std::complex<double> alpha = 0.0;
            std::complex<double> carrier = 1.0; // e^{i w t_k}
            std::size_t next_cp = 0;
            for (std::size_t k = 0; k < total_steps; ++k) {
                alpha += kick * (sigma_e * rng.normal()) * carrier;
                carrier *= rot;
                while (next_cp < n_times && checkpoints[order[next_cp]] == k + 1) {
                    const std::complex<double> a2 = alpha * alpha;
                    const double x = 0.5 * cosh2r * std::norm(alpha) +
                                     sinh2r * (a2 * phase_phi).real();
                    table[i * n_times + order[next_cp]] =
                        PerRealization{x, std::norm(alpha), a2.real(), a2.imag()};
                    ++next_cp;
                }
            }
        }
    };

    const int jobs = std::max(1, config.jobs);
    if (jobs == 1) {
        worker(0, n_real);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (n_real + jobs - 1) / jobs;
        for (int j = 0; j < jobs; ++j) {
            const std::size_t first = std::min(n_real, static_cast<std::size_t>(j) * chunk);
            const std::size_t last = std::min(n_real, first + chunk);
            if (first < last) pool.emplace_back(worker, first, last);
        }
        for (auto& t : pool) t.join();
    }

    const double gamma = heating_rate(config.species, config.omega, config.field_density);
    const double tau = squeezed_lifetime(gamma, config.r);

    std::vector<NoiseMcSample> out(n_times);
    for (std::size_t j = 0; j < n_times; ++j) {
        double sx = 0.0, sa = 0.0, sre = 0.0, sim = 0.0;
        for (std::size_t i = 0; i < n_real; ++i) {
            const auto& row = table[i * n_times + j];
            sx += row.x;
            sa += row.abs_sq;
            sre += row.re_sq;
            sim += row.im_sq;
        }
        const double n = static_cast<double>(n_real);
        const double mean_x = sx / n;
        const double mean_a = sa / n;
        const double mean_re = sre / n;
        const double mean_im = sim / n;
        double vx = 0.0, va = 0.0, vre = 0.0;
        for (std::size_t i = 0; i < n_real; ++i) {
            const auto& row = table[i * n_times + j];
            vx += (row.x - mean_x) * (row.x - mean_x);
            va += (row.abs_sq - mean_a) * (row.abs_sq - mean_a);
            vre += (row.re_sq - mean_re) * (row.re_sq - mean_re);
        }
        NoiseMcSample s;
        s.time = static_cast<double>(checkpoints[j]) * dt;
        s.mc_exponent = mean_x;
        s.se_exponent = std::sqrt(vx / (n * (n - 1.0)));
        s.mc_overlap = std::exp(-mean_x);
        s.closed_form_exponent = s.time / tau;
        s.closed_form_overlap = std::exp(-s.time / tau);
        s.mean_alpha_sq_abs = mean_a;
        s.se_alpha_sq_abs = std::sqrt(va / (n * (n - 1.0)));
        s.mean_alpha_sq = {mean_re, mean_im};
        s.se_alpha_sq_re = std::sqrt(vre / (n * (n - 1.0)));
        out[j] = s;
    }
    return out;
}

} // namespace iontide
