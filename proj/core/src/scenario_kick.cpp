#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "internal/scenario_common.hpp"
#include "iontide/constants.hpp"
#include "iontide/errors.hpp"
#include "iontide/propagator.hpp"
#include "iontide/trap.hpp"

namespace iontide::scenarios {

namespace {

std::vector<double> parse_length_list(const std::string& text) {
    std::vector<double> out;
    std::istringstream in(text);
    std::string token;
    while (in >> token) out.push_back(parse_as(token, UnitKind::length));
    if (out.empty()) throw ConfigError("empty offset list");
    return out;
}

} // namespace

RunReport run_kick_scenario(const ScenarioContext& ctx) {
    using namespace detail;
    const double t0 = wall_time();
    const Config& cfg = ctx.config;
    const IonSpecies species = species_from_config(cfg);

    const double f_z = cfg.get("trap.f_z", UnitKind::frequency, 1e6);
    const auto offsets = parse_length_list(cfg.get_string("kick.offsets", "0.25um 0.5um 1um"));
    const auto points = static_cast<std::size_t>(cfg.get_int("kick.points", 32768));
    const double span_factor = cfg.get_number("kick.span_factor", 2.6);
    const auto sphp = static_cast<std::size_t>(cfg.get_int("kick.steps_per_half_period", 1400));
    const double paper_max = cfg.get("kick.paper_offset_max", UnitKind::length, 50e-6);
    const auto paper_rows = static_cast<std::size_t>(cfg.get_int("kick.paper_offset_rows", 11));
    reject_untouched(cfg);

    const double omega = constants::two_pi * f_z;
    const double m = species.mass;
    const double hw = constants::hbar * omega;

    std::filesystem::create_directories(ctx.out_dir);
    RunReport report;

    CsvWriter csv(ctx.out_dir / "kick_energy.csv",
                  {"offset", "e_displaced_total", "e_kin_quarter", "e_pot_quarter", "e_kin_half",
                   "e_pot_half", "e_original_quarter", "e_original_half"},
                  {"m", "J", "J", "J", "J", "J", "J", "J"});
    stamp(csv, ctx, "kick");

    const double max_offset = *std::max_element(offsets.begin(), offsets.end());
    const double half_span = span_factor * std::max(max_offset, 1e-7);
    const PotentialSpec home = PotentialSpec::harmonic(f_z, 0.0);

    for (const double dz : offsets) {
        const PotentialSpec displaced = PotentialSpec::harmonic(f_z, dz);
        const double half_period = constants::pi / omega;
        const auto steps = 2 * sphp; // half period of evolution in the displaced well
        const GridSpec grid =
            GridSpec::make(-half_span, half_span, points, half_period / static_cast<double>(sphp),
                           steps)
                .with_time(half_period, steps);
        const Wavefunction psi0 = make_ground_state(grid, home, species);

        PropagationOptions opts;
        opts.trace_every = steps / 2; // sample at the quarter period
        const PropagationResult res = propagate(psi0, displaced, species, opts);

        auto kin = [&](const TraceSample& s) {
            return (s.var_p + s.mean_p * s.mean_p) / (2.0 * m);
        };
        // <V_home> = <V_displaced> + m w^2 dz <z> - m w^2 dz^2 / 2
        auto e_home = [&](const TraceSample& s) {
            const double pot = s.energy - kin(s);
            return kin(s) + pot + m * omega * omega * dz * (s.mean_z - 0.5 * dz);
        };

        const TraceSample& quarter = res.trace.at(1);
        const TraceSample& half = res.trace.back();
        const double e_total = quarter.energy;
        csv.row({dz, e_total, kin(quarter), quarter.energy - kin(quarter), kin(half),
                 half.energy - kin(half), e_home(quarter), e_home(half)});

        const double e_coherent = 0.5 * m * omega * omega * dz * dz;
        const double scale = std::max(e_coherent, hw);
        report.add("kick-energy-conserved-" + format_csv_number(dz * 1e6) + "um",
                   e_coherent + 0.5 * hw, e_total, 1e-4 * scale,
                   "total energy in the displaced well");
        report.add("kick-split-quarter-vs-half-" + format_csv_number(dz * 1e6) + "um",
                   quarter.energy, half.energy, 1e-6 * scale,
                   "same total, kinetic<->potential swapped");
        report.add("kick-kinetic-at-quarter-" + format_csv_number(dz * 1e6) + "um",
                   e_coherent + 0.25 * hw, kin(quarter), 1e-4 * scale,
                   "all coherent energy kinetic after pi/2w");
        // removing the offset at pi/2w leaves 2 E_coh in the home well; at
        // pi/w the ion rests at 2 dz, which is 4 E_coh of potential energy
        report.add("kick-original-well-quarter-" + format_csv_number(dz * 1e6) + "um",
                   2.0 * e_coherent + 0.5 * hw, e_home(quarter), 1e-4 * scale,
                   "kinetic-energy variant after pi/2w");
        report.add("kick-original-well-half-" + format_csv_number(dz * 1e6) + "um",
                   4.0 * e_coherent + 0.5 * hw, e_home(half), 1e-4 * scale,
                   "potential-energy variant after pi/w");
    }

    // Zero offset leaves the ion where it was.
    {
        const auto steps = 2 * sphp;
        const GridSpec grid = GridSpec::make(-half_span, half_span, points, 1.0, steps)
                                  .with_time(constants::pi / omega, steps);
        const Wavefunction psi0 = make_ground_state(grid, home, species);
        const PropagationResult res = propagate(psi0, home, species);
        const double gain = res.final.energy(home, species) - 0.5 * hw;
        report.add("kick-zero-offset-no-gain", 0.0, gain / hw, 1e-8,
                   "no displacement, no energy");
    }

    // Reference table at transport-like scales, with the offsets required for
    // thermal-collision energies back-computed from the closed forms.
    {
        CsvWriter table(ctx.out_dir / "kick_reference.csv",
                        {"offset", "e_quarter_variant", "e_half_variant"}, {"m", "eV", "eV"});
        stamp(table, ctx, "kick");
        for (std::size_t i = 0; i < paper_rows; ++i) {
            const double dz =
                paper_max * static_cast<double>(i) / static_cast<double>(paper_rows - 1);
            const double e_quarter = m * omega * omega * dz * dz / constants::electron_volt;
            table.row({dz, e_quarter, 2.0 * e_quarter});
        }
        const double e_target = 20e-3 * constants::electron_volt;
        const double dz_quarter = std::sqrt(e_target / m) / omega;
        const double dz_half = std::sqrt(e_target / (2.0 * m)) / omega;
        report.add_band("kick-20meV-within-transport-offsets", dz_half, 0.0, paper_max,
                        "offset for a 20 meV kick (half-period variant): " +
                            format_csv_number(dz_half * 1e6) + " um; quarter-period variant: " +
                            format_csv_number(dz_quarter * 1e6) + " um");
    }

    finish(report, ctx, "kick", t0);
    report.write_json(ctx.out_dir / "kick_report.json");
    return report;
}

} // namespace iontide::scenarios
