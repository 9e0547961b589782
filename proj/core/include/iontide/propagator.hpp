#pragma once

#include <filesystem>
#include <optional>
#include <utility>
#include <vector>

#include "iontide/potential.hpp"
#include "iontide/species.hpp"
#include "iontide/wavefunction.hpp"

namespace iontide {

struct TraceSample {
    double t;
    double mean_z;
    double mean_p;
    double var_z;
    double var_p;
    double energy; // against the instantaneous well
};

struct PropagationOptions {
    std::size_t trace_every = 0;        // sample cadence in steps; 0 disables
    double norm_tolerance = 1e-8;       // |norm - 1| guardrail
    double edge_tolerance = 1e-9;       // norm allowed to touch the grid edges
    bool check_momentum_resolution = true;
};

struct PropagationResult {
    Wavefunction final;
    std::vector<TraceSample> trace;
    double norm_drift;
};

/// Trace time series as CSV (t, <z>, <p>, Var z, Var p, <E>).
void write_trace_csv(const std::vector<TraceSample>& trace, const std::filesystem::path& path);

/// Strang-split propagation in a static well for grid.steps steps of grid.dt:
///   exp(-i V dt/2) . exp(-i T dt) . exp(-i V dt/2)
/// with the kinetic factor applied in the Fourier domain.
PropagationResult propagate(const Wavefunction& psi, const PotentialSpec& well,
                            const IonSpecies& species, const PropagationOptions& opts = {});

/// Propagation through a throw-catch program. The transport-well shape is
/// rigidly translated to the program center s(t); for moving segments the
/// potential is evaluated at each step's midpoint time (second-order
/// consistent). The time axis must cover the program: grid.duration() may
/// exceed total_duration(), in which case the final well holds afterwards.
PropagationResult propagate(const Wavefunction& psi, const TransportProtocol& protocol,
                            const IonSpecies& species, const PropagationOptions& opts = {});

/// Imaginary-time relaxation to the ground state of an arbitrary well with
/// the same split kernel (t -> -i tau) and per-step renormalization. Stops
/// once the variational energy changes by < 1e-12 relative per step.
Wavefunction relax_ground_state(const GridSpec& grid, const PotentialSpec& well,
                                const IonSpecies& species);

struct FidelityScan {
    std::vector<std::pair<double, double>> overlap; // (t, P_O)
    std::optional<double> lifetime;                 // first crossing below threshold
    double threshold;
};

/// P_O(t) = |<psi_anharm(t)|psi_harm(t)>|^2 for the same initial state
/// propagated in the two wells on one grid and time axis. The scan runs for
/// grid.steps steps, sampling every sample_every steps, and stops early once
/// P_O crosses the threshold.
FidelityScan harmonic_reference_fidelity(const Wavefunction& psi0, const PotentialSpec& well_harm,
                                         const PotentialSpec& well_anharm,
                                         const IonSpecies& species, std::size_t sample_every,
                                         double threshold = 0.5);

} // namespace iontide
