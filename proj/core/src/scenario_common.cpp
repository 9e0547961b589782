#include "internal/scenario_common.hpp"

#include <chrono>
#include <cmath>

#include "iontide/constants.hpp"
#include "iontide/errors.hpp"
#include "iontide/fock.hpp"
#include "iontide/propagator.hpp"
#include "iontide/trap.hpp"

namespace iontide::scenarios::detail {

double wall_time() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

IonSpecies species_from_config(const Config& cfg) {
    const std::string preset = cfg.get_string("species.preset", "");
    if (preset == "Ca40") return IonSpecies::ca40();
    if (!preset.empty()) throw ConfigError("unknown species preset '" + preset + "'");
    return IonSpecies::make(cfg.get("species.mass", UnitKind::mass),
                            cfg.get("species.charge", UnitKind::charge),
                            cfg.get_string("species.label", "custom"));
}

void stamp(CsvWriter& csv, const ScenarioContext& ctx, const std::string& scenario) {
    csv.metadata("scenario", scenario);
    csv.metadata("version", project_version);
    csv.metadata("seed", std::to_string(ctx.seed));
    csv.metadata("jobs", std::to_string(ctx.jobs));
    csv.metadata("slow", ctx.slow ? "true" : "false");
    for (const auto& [k, v] : ctx.config.entries()) csv.metadata("cfg." + k, v);
    const auto now = std::chrono::system_clock::now();
    csv.metadata("generated",
                 std::to_string(std::chrono::duration_cast<std::chrono::seconds>(
                                    now.time_since_epoch())
                                    .count()));
}

void finish(RunReport& report, const ScenarioContext& ctx, const std::string& scenario,
            double t_start) {
    report.scenario = scenario;
    report.parameters = ctx.config.entries();
    report.parameters.emplace_back("run.seed", std::to_string(ctx.seed));
    report.parameters.emplace_back("run.slow", ctx.slow ? "true" : "false");
    report.wall_seconds = wall_time() - t_start;
}

void reject_untouched(const Config& cfg) {
    const auto leftovers = cfg.untouched_keys();
    if (leftovers.empty()) return;
    std::string msg = "unrecognized config keys:";
    for (const auto& k : leftovers) msg += " " + k;
    throw ConfigError(msg);
}

std::optional<double> TransportParams::scaled(const std::optional<double>& l) const {
    if (!l) return std::nullopt;
    return ingest_length_scale(*l * scale);
}

PotentialSpec TransportParams::initial_well() const {
    return PotentialSpec::make(f_end, include_end_cubic ? scaled(l3_end) : std::nullopt,
                               scaled(l4_end), -z0());
}

PotentialSpec TransportParams::transport_well() const {
    return PotentialSpec::make(f_transport, scaled(l3_transport), scaled(l4_transport), 0.0);
}

PotentialSpec TransportParams::final_well() const {
    return PotentialSpec::make(f_end, include_end_cubic ? scaled(l3_end) : std::nullopt,
                               scaled(l4_end), z0());
}

GridSpec TransportParams::space_grid() const {
    const double a0 = ground_state_extent(species, constants::two_pi * f_end);
    const double half = std::max(span_factor * z0(), z0() + 20.0 * a0);
    // dt and steps are placeholders until the arrival time is known
    return GridSpec::make(-half, half, points, 1.0, 1);
}

TransportParams transport_from_config(const Config& cfg, bool paper_scale) {
    TransportParams p;
    p.species = species_from_config(cfg);
    p.f_end = cfg.get("trap.f_z", UnitKind::frequency);
    p.f_transport = p.f_end;
    p.z0_paper = cfg.get("transport.z0", UnitKind::length);
    p.l3_end = cfg.get_length_or_infinite("transport.l3_end");
    p.l4_end = cfg.get_length_or_infinite("transport.l4_end");
    p.l3_transport = cfg.get_length_or_infinite("transport.l3_transport");
    p.l4_transport = cfg.get_length_or_infinite("transport.l4_transport");
    p.include_end_cubic = cfg.get_bool("transport.include_end_cubic", true);
    p.span_factor = cfg.get_number("grid.span_factor", 1.6);
    p.steps_per_half_period =
        static_cast<std::size_t>(cfg.get_int("grid.steps_per_half_period", 1400));
    // read both presets so strict key checking sees them all
    const double desk_z0 = cfg.get("grid.desk_z0", UnitKind::length, 1e-6);
    const auto desk_points = static_cast<std::size_t>(cfg.get_int("grid.desk_points", 1 << 15));
    const auto paper_points =
        static_cast<std::size_t>(cfg.get_int("grid.paper_points", 1 << 24));
    if (paper_scale) {
        p.scale = 1.0;
        p.points = paper_points;
    } else {
        p.scale = desk_z0 / p.z0_paper;
        p.points = desk_points;
    }
    return p;
}

Wavefunction initial_state(const TransportParams& p, const GridSpec& grid) {
    const PotentialSpec well = p.initial_well();
    const double a0 = ground_state_extent(p.species, well.omega0());
    double correction = 0.0;
    if (well.L3) correction = std::max(correction, std::pow(a0 / *well.L3, 2));
    if (well.L4) correction = std::max(correction, std::pow(a0 / *well.L4, 2));
    if (correction < 1e-10) {
        const PotentialSpec harmonic = PotentialSpec::harmonic(well.f_z, well.center);
        return make_ground_state(grid, harmonic, p.species);
    }
    return make_ground_state(grid, well, p.species);
}

TransportPoint run_transport_point(const TransportParams& p, std::size_t n_max,
                                   const Wavefunction* psi0_cache) {
    const PotentialSpec initial = p.initial_well();
    const PotentialSpec transport = p.transport_well();
    const PotentialSpec final_well = p.final_well();

    const double arrival = transport_arrival_time(transport, p.z0());
    const double omega_t = transport.omega0();
    const double dt_nominal =
        (constants::pi / omega_t) / static_cast<double>(p.steps_per_half_period);
    const auto steps = static_cast<std::size_t>(std::ceil(arrival / dt_nominal));

    GridSpec grid = p.space_grid().with_time(arrival, steps);

    Wavefunction psi0 = psi0_cache ? *psi0_cache : initial_state(p, grid);
    psi0.grid = grid;

    const TransportProtocol protocol =
        TransportProtocol::make(initial, transport, final_well, TransitionShape::instantaneous(),
                                arrival, TransitionShape::instantaneous());

    const PropagationResult result = propagate(psi0, protocol, p.species);

    const PotentialSpec reference = PotentialSpec::harmonic(p.f_end, p.z0());
    const auto amps = fock_amplitudes(result.final, reference, p.species, n_max);

    TransportPoint point;
    point.arrival_time = arrival;
    point.norm_drift = result.norm_drift;
    point.overlaps.reserve(amps.size());
    for (const auto& a : amps) point.overlaps.push_back(std::norm(a));
    return point;
}

} // namespace iontide::scenarios::detail
