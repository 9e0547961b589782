#include <cmath>

#include "internal/scenario_common.hpp"
#include "iontide/constants.hpp"
#include "iontide/trap.hpp"

namespace iontide::scenarios {

RunReport run_micromotion_report(const ScenarioContext& ctx) {
    using namespace detail;
    const double t0 = wall_time();
    const Config& cfg = ctx.config;
    const IonSpecies species = species_from_config(cfg);

    const double f_secular = cfg.get("micromotion.secular", UnitKind::frequency, 1e6);
    const double f_drive = cfg.get("micromotion.drive", UnitKind::frequency, 100e6);
    const double c2 = cfg.get("micromotion.c2", UnitKind::curvature, 8e-6);
    const double d2 = cfg.get("micromotion.d2", UnitKind::curvature, 4.0);
    const double c0 = cfg.get("micromotion.c0", UnitKind::length, 100e-6);
    reject_untouched(cfg);

    const TrapContext trap = TrapContext::make(constants::two_pi * f_secular,
                                               constants::two_pi * f_drive, c2, d2);

    std::filesystem::create_directories(ctx.out_dir);
    CsvWriter csv(ctx.out_dir / "micromotion_report.csv",
                  {"c0", "d2", "a_z", "q_z", "beta_z", "c_plus2", "c_minus2"},
                  {"m", "V/m^2", "1", "1", "1", "m", "m"});
    stamp(csv, ctx, "micromotion");

    RunReport report;
    const auto mm = micromotion_coefficients(trap, species, c0);
    csv.row({c0, d2, mm.a_z, mm.q_z, mm.beta_z, mm.c_plus2, mm.c_minus2});

    report.add("micromotion-c-plus2", 2.5e-15, mm.c_plus2, 0.15 * 2.5e-15,
               "sideband amplitude, quoted to one significant figure");
    report.add("micromotion-c-minus2", 2.5e-15, mm.c_minus2, 0.15 * 2.5e-15);
    report.add("micromotion-beta-selfconsistent",
               std::sqrt(mm.a_z + 0.5 * mm.q_z * mm.q_z), mm.beta_z, 1e-12 * mm.beta_z);

    // rf-free trap: no sidebands
    const TrapContext dc_only = TrapContext::make(constants::two_pi * f_secular,
                                                  constants::two_pi * f_drive, c2, 0.0);
    const auto mm_dc = micromotion_coefficients(dc_only, species, c0);
    csv.row({c0, 0.0, mm_dc.a_z, mm_dc.q_z, mm_dc.beta_z, mm_dc.c_plus2, mm_dc.c_minus2});
    report.add("micromotion-dc-only-vanishes", 0.0, std::abs(mm_dc.c_plus2), 0.0);

    // linear in the secular amplitude
    const auto mm_double = micromotion_coefficients(trap, species, 2.0 * c0);
    csv.row({2.0 * c0, d2, mm_double.a_z, mm_double.q_z, mm_double.beta_z, mm_double.c_plus2,
             mm_double.c_minus2});
    report.add("micromotion-linear-in-c0", 2.0 * mm.c_plus2, mm_double.c_plus2,
               1e-12 * std::abs(mm.c_plus2));

    finish(report, ctx, "micromotion", t0);
    report.write_json(ctx.out_dir / "micromotion_report.json");
    return report;
}

} // namespace iontide::scenarios
