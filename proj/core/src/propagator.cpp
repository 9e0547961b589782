#include "iontide/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>

#include "iontide/constants.hpp"
#include "iontide/csv.hpp"
#include "iontide/errors.hpp"
#include "iontide/fft.hpp"
#include "iontide/trap.hpp"

namespace iontide {

using constants::hbar;

namespace {

struct Observables {
    double norm;
    double mean_z;
    double var_z;
    double mean_p;
    double var_p;
    double kinetic;
    double potential;
    double edge;
};

// Split-operator workspace bound to one grid. The wavefunction lives in the
// FFT buffer for the whole propagation; phase tables are rebuilt only when
// the well actually moves.
class SplitStepper {
public:
    SplitStepper(const GridSpec& grid, const IonSpecies& species)
        : grid_(grid),
          species_(species),
          fft_(grid.points),
          half_v_(grid.points),
          kinetic_(grid.points),
          cached_center_(std::numeric_limits<double>::quiet_NaN()) {}

    void load(const Wavefunction& psi) {
        std::memcpy(fft_.data(), psi.amplitudes.data(),
                    grid_.points * sizeof(std::complex<double>));
    }

    Wavefunction store() const {
        Wavefunction psi{grid_, std::vector<std::complex<double>>(grid_.points)};
        std::memcpy(psi.amplitudes.data(), fft_.data(),
                    grid_.points * sizeof(std::complex<double>));
        return psi;
    }

    void set_kinetic_phase(std::complex<double> tau) {
        // exp(-i hbar k^2 dt / (2 m)); tau = dt (real time) or -i dtau.
        const std::complex<double> i_unit(0.0, 1.0);
        for (std::size_t i = 0; i < grid_.points; ++i) {
            const double k = grid_.wavenumber(i);
            kinetic_[i] = std::exp(-i_unit * tau * (hbar * k * k / (2.0 * species_.mass)));
        }
    }

    void set_potential_half_phase(const PotentialSpec& shape, double center,
                                  std::complex<double> tau) {
        if (center == cached_center_ && tau == cached_tau_ && &shape == cached_shape_) return;
        const PotentialSpec moved = shape.at_center(center);
        const std::complex<double> i_unit(0.0, 1.0);
        for (std::size_t i = 0; i < grid_.points; ++i) {
            const double v = potential_value(moved, species_, grid_.z(i));
            half_v_[i] = std::exp(-i_unit * tau * (0.5 * v / hbar));
        }
        cached_center_ = center;
        cached_tau_ = tau;
        cached_shape_ = &shape;
    }

    void step() {
        auto* psi = fft_.data();
        const std::size_t n = grid_.points;
        for (std::size_t i = 0; i < n; ++i) psi[i] *= half_v_[i];
        fft_.forward();
        for (std::size_t i = 0; i < n; ++i) psi[i] *= kinetic_[i];
        fft_.inverse();
        for (std::size_t i = 0; i < n; ++i) psi[i] *= half_v_[i];
    }

    void renormalize() {
        auto* psi = fft_.data();
        double s = 0.0;
        for (std::size_t i = 0; i < grid_.points; ++i) s += std::norm(psi[i]);
        const double scale = 1.0 / std::sqrt(s * grid_.dz());
        for (std::size_t i = 0; i < grid_.points; ++i) psi[i] *= scale;
    }

    double norm() const {
        const auto* psi = fft_.data();
        double s = 0.0;
        for (std::size_t i = 0; i < grid_.points; ++i) s += std::norm(psi[i]);
        return s * grid_.dz();
    }

    std::complex<double> overlap_with(const SplitStepper& other) const {
        std::complex<double> s = 0.0;
        for (std::size_t i = 0; i < grid_.points; ++i)
            s += std::conj(fft_.data()[i]) * other.fft_.data()[i];
        return s * grid_.dz();
    }

    // One spectral pass for everything a trace sample needs.
    Observables observables(const PotentialSpec& shape, double center) {
        const auto* psi = fft_.data();
        const std::size_t n = grid_.points;
        const double dz = grid_.dz();
        Observables o{};
        double mz = 0.0, mzz = 0.0, pot = 0.0, w = 0.0;
        const PotentialSpec moved = shape.at_center(center);
        for (std::size_t i = 0; i < n; ++i) {
            const double d = std::norm(psi[i]);
            const double z = grid_.z(i);
            w += d;
            mz += d * z;
            mzz += d * z * z;
            pot += d * potential_value(moved, species_, z);
        }
        o.norm = w * dz;
        o.mean_z = mz / w;
        o.var_z = mzz / w - o.mean_z * o.mean_z;
        o.potential = pot / w;
        const auto edge = static_cast<std::size_t>(0.02 * static_cast<double>(n));
        double ew = 0.0;
        for (std::size_t i = 0; i < edge; ++i)
            ew += std::norm(psi[i]) + std::norm(psi[n - 1 - i]);
        o.edge = ew * dz;

        scratch_.assign(psi, psi + n);
        SpectralTransform tmp(n);
        std::memcpy(tmp.data(), scratch_.data(), n * sizeof(std::complex<double>));
        tmp.forward();
        double wp = 0.0, mp = 0.0, mpp = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = std::norm(tmp.data()[i]);
            const double p = hbar * grid_.wavenumber(i);
            wp += d;
            mp += d * p;
            mpp += d * p * p;
        }
        o.mean_p = mp / wp;
        o.var_p = mpp / wp - o.mean_p * o.mean_p;
        o.kinetic = mpp / wp / (2.0 * species_.mass);
        return o;
    }

    const GridSpec& grid() const { return grid_; }

private:
    GridSpec grid_;
    IonSpecies species_;
    SpectralTransform fft_;
    std::vector<std::complex<double>> half_v_;
    std::vector<std::complex<double>> kinetic_;
    std::vector<std::complex<double>> scratch_;
    double cached_center_;
    std::complex<double> cached_tau_{0.0, 0.0};
    const PotentialSpec* cached_shape_ = nullptr;
};

void check_momentum_resolution(const Wavefunction& psi, double classical_energy,
                               const IonSpecies& species) {
    // The grid must resolve the fastest momentum component with a factor-2
    // safety margin: dz < pi hbar / (2 p_max).
    const auto stats = psi.momentum_stats();
    const double p_packet = std::abs(stats.mean) + 6.0 * std::sqrt(std::max(stats.variance, 0.0));
    const double p_classical =
        classical_energy > 0.0 ? std::sqrt(2.0 * species.mass * classical_energy) : 0.0;
    const double p_max = p_packet + p_classical;
    if (p_max > 0.0 && !(psi.grid.dz() < constants::pi * hbar / (2.0 * p_max)))
        throw GridError("grid spacing too coarse for the expected momentum content");
}

struct CenterProgram {
    const PotentialSpec* moving_shape; // translated during the program
    const PotentialSpec* final_shape;  // holds after catch_end
    double catch_end;
    const TransportProtocol* protocol; // null => static well

    double center_at(double t) const {
        if (!protocol) return moving_shape->center;
        if (t >= catch_end) return final_shape->center;
        return protocol->center(std::min(t, protocol->total_duration()));
    }
    const PotentialSpec& shape_at(double t) const {
        if (!protocol || t < catch_end) return *moving_shape;
        return *final_shape;
    }
};

PropagationResult run(const Wavefunction& psi0, const CenterProgram& program,
                      const IonSpecies& species, const PropagationOptions& opts,
                      double classical_energy) {
    const GridSpec& grid = psi0.grid;
    if (grid.steps == 0) throw DomainError("propagation needs at least one step");
    if (opts.check_momentum_resolution)
        check_momentum_resolution(psi0, classical_energy, species);

    SplitStepper stepper(grid, species);
    stepper.load(psi0);
    stepper.set_kinetic_phase(grid.dt);

    PropagationResult result;
    auto sample = [&](std::size_t step_index) {
        const double t = static_cast<double>(step_index) * grid.dt;
        const auto& shape = program.shape_at(t);
        const auto o = stepper.observables(shape, program.center_at(t));
        result.trace.push_back(
            TraceSample{t, o.mean_z, o.mean_p, o.var_z, o.var_p, o.kinetic + o.potential});
        if (std::abs(o.norm - 1.0) > opts.norm_tolerance)
            throw NumericalError("norm drift exceeded tolerance during propagation");
        if (o.edge > opts.edge_tolerance)
            throw GeometryError("wavepacket reached the grid edge");
    };

    if (opts.trace_every > 0) sample(0);
    for (std::size_t k = 0; k < grid.steps; ++k) {
        const double t_mid = (static_cast<double>(k) + 0.5) * grid.dt;
        stepper.set_potential_half_phase(program.shape_at(t_mid), program.center_at(t_mid),
                                         grid.dt);
        stepper.step();
        if (opts.trace_every > 0 && (k + 1) % opts.trace_every == 0 && k + 1 < grid.steps)
            sample(k + 1);
    }
    if (opts.trace_every > 0) sample(grid.steps);

    result.final = stepper.store();
    const double norm = result.final.norm();
    result.norm_drift = std::abs(norm - 1.0);
    if (result.norm_drift > opts.norm_tolerance)
        throw NumericalError("norm drift exceeded tolerance during propagation");
    if (result.final.edge_weight() > opts.edge_tolerance)
        throw GeometryError("wavepacket reached the grid edge");
    return result;
}

} // namespace

PropagationResult propagate(const Wavefunction& psi, const PotentialSpec& well,
                            const IonSpecies& species, const PropagationOptions& opts) {
    CenterProgram program{&well, &well, 0.0, nullptr};
    const double e_rel =
        std::max(0.0, psi.energy(well, species) - potential_value(well, species, well.center));
    return run(psi, program, species, opts, e_rel);
}

PropagationResult propagate(const Wavefunction& psi, const TransportProtocol& protocol,
                            const IonSpecies& species, const PropagationOptions& opts) {
    CenterProgram program{&protocol.transport_well, &protocol.final_well,
                          protocol.total_duration(), &protocol};
    // Classical bound: full conversion of the release-point potential energy
    // measured in the transport well.
    const double z_start = psi.mean_position();
    const PotentialSpec transport = protocol.transport_well.at_center(protocol.center(0.0));
    const double e_rel = std::max(
        0.0, potential_value(transport, species, z_start) -
                 potential_value(transport, species, transport.center));
    return run(psi, program, species, opts, e_rel);
}

Wavefunction relax_ground_state(const GridSpec& grid, const PotentialSpec& well,
                                const IonSpecies& species) {
    const double omega0 = well.omega0();
    const double a0 = ground_state_extent(species, omega0);
    if (well.center - 5.0 * a0 < grid.z_min || well.center + 5.0 * a0 > grid.z_max)
        throw GeometryError("well center too close to the grid edge for relaxation");

    const double dtau = 0.01 / omega0;
    SplitStepper stepper(grid, species);
    const std::complex<double> tau(0.0, -dtau); // t -> -i tau
    stepper.set_kinetic_phase(tau);
    stepper.set_potential_half_phase(well, well.center, tau);

    Wavefunction psi = [&] {
        // start from the harmonic Gaussian of the well's own curvature
        const PotentialSpec harmonic = PotentialSpec::harmonic(well.f_z, well.center);
        return make_ground_state(grid, harmonic, species);
    }();
    stepper.load(psi);

    double last_energy = std::numeric_limits<double>::max();
    constexpr std::size_t max_steps = 200000;
    constexpr std::size_t energy_cadence = 8;
    for (std::size_t k = 0; k < max_steps; ++k) {
        stepper.step();
        stepper.renormalize();
        if (k % energy_cadence == 0) {
            const auto o = stepper.observables(well, well.center);
            const double e = o.kinetic + o.potential;
            if (std::abs(e - last_energy) <
                1e-12 * energy_cadence * std::max(std::abs(e), 1e-300)) {
                last_energy = e;
                break;
            }
            last_energy = e;
        }
    }
    Wavefunction out = stepper.store();
    out.normalize();
    return out;
}

void write_trace_csv(const std::vector<TraceSample>& trace, const std::filesystem::path& path) {
    CsvWriter csv(path, {"t", "mean_z", "mean_p", "var_z", "var_p", "energy"},
                  {"s", "m", "kg m/s", "m^2", "(kg m/s)^2", "J"});
    for (const auto& s : trace)
        csv.row({s.t, s.mean_z, s.mean_p, s.var_z, s.var_p, s.energy});
}

FidelityScan harmonic_reference_fidelity(const Wavefunction& psi0, const PotentialSpec& well_harm,
                                         const PotentialSpec& well_anharm,
                                         const IonSpecies& species, std::size_t sample_every,
                                         double threshold) {
    if (sample_every == 0) throw DomainError("sample_every must be positive");
    const GridSpec& grid = psi0.grid;
    SplitStepper harm(grid, species);
    SplitStepper anharm(grid, species);
    harm.load(psi0);
    anharm.load(psi0);
    harm.set_kinetic_phase(grid.dt);
    anharm.set_kinetic_phase(grid.dt);
    harm.set_potential_half_phase(well_harm, well_harm.center, grid.dt);
    anharm.set_potential_half_phase(well_anharm, well_anharm.center, grid.dt);

    FidelityScan scan;
    scan.threshold = threshold;
    scan.overlap.emplace_back(0.0, 1.0);
    double prev_t = 0.0;
    double prev_p = 1.0;
    for (std::size_t k = 0; k < grid.steps; ++k) {
        harm.step();
        anharm.step();
        if ((k + 1) % sample_every == 0 || k + 1 == grid.steps) {
            const double t = static_cast<double>(k + 1) * grid.dt;
            const double p = std::norm(anharm.overlap_with(harm));
            scan.overlap.emplace_back(t, p);
            if (!scan.lifetime && p < threshold) {
                const double frac = (prev_p - threshold) / (prev_p - p);
                scan.lifetime = prev_t + frac * (t - prev_t);
                break;
            }
            prev_t = t;
            prev_p = p;
        }
    }
    return scan;
}

} // namespace iontide
