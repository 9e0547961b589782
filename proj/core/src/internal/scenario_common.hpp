#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "iontide/csv.hpp"
#include "iontide/scenarios.hpp"
#include "iontide/species.hpp"
#include "iontide/wavefunction.hpp"

namespace iontide::scenarios::detail {

double wall_time();

IonSpecies species_from_config(const Config& cfg);

/// Writes the shared metadata block (scenario, version, seed, parameter echo,
/// timestamp). The "generated" line is the only one excluded from
/// byte-for-byte reproducibility.
void stamp(CsvWriter& csv, const ScenarioContext& ctx, const std::string& scenario);

void finish(RunReport& report, const ScenarioContext& ctx, const std::string& scenario,
            double t_start);

/// Fails the run on config keys nothing ever read (typo guard).
void reject_untouched(const Config& cfg);

/// Throw-catch transport inputs. Lengths are stored at paper scale; `scale`
/// shrinks every classical length (z0, L3, L4, grid span) while leaving
/// frequencies and times alone, preserving the dimensionless anharmonicity
/// z0^2/L4^2 that the overlap physics depends on.
struct TransportParams {
    IonSpecies species = IonSpecies::ca40();
    double f_end = 1e6;
    double f_transport = 1e6;
    double z0_paper = 50e-6;
    std::optional<double> l3_end;
    std::optional<double> l4_end;
    std::optional<double> l3_transport;
    std::optional<double> l4_transport;
    bool include_end_cubic = true;
    double scale = 1.0;
    std::size_t points = 32768;
    double span_factor = 1.6;
    std::size_t steps_per_half_period = 1400;

    double z0() const { return z0_paper * scale; }
    std::optional<double> scaled(const std::optional<double>& l) const;
    PotentialSpec initial_well() const;
    PotentialSpec transport_well() const;
    PotentialSpec final_well() const;
    GridSpec space_grid() const; // time axis filled in per point
};

TransportParams transport_from_config(const Config& cfg, bool paper_scale);

struct TransportPoint {
    double arrival_time;
    std::vector<double> overlaps; // |<n|psi>|^2 for n = 0..n_max
    double norm_drift;
};

/// One full throw-catch run: ground state of the initial well, instantaneous
/// throw, transport-well evolution until the classical arrival at +z0,
/// instantaneous catch, Fock analysis against the final well.
TransportPoint run_transport_point(const TransportParams& p, std::size_t n_max,
                                   const Wavefunction* psi0_cache = nullptr);

/// Ground state of the initial well; relaxation only when the anharmonic
/// corrections are above double noise, the analytic Gaussian otherwise.
Wavefunction initial_state(const TransportParams& p, const GridSpec& grid);

} // namespace iontide::scenarios::detail
