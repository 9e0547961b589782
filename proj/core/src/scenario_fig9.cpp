#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "internal/scenario_common.hpp"
#include "iontide/constants.hpp"
#include "iontide/errors.hpp"
#include "iontide/switching.hpp"
#include "iontide/trap.hpp"

namespace iontide::scenarios {

RunReport run_fig9_finite_switch(const ScenarioContext& ctx) {
    using namespace detail;
    const double t0 = wall_time();
    const Config& cfg = ctx.config;

    const IonSpecies species = species_from_config(cfg);
    const double f_z = cfg.get("trap.f_z", UnitKind::frequency, 1e6);
    const double omega = constants::two_pi * f_z;
    const double z0 = cfg.get("fig9.z0", UnitKind::length, 50e-6);
    const double tau = cfg.get("fig9.tau", UnitKind::time, 5e-9);
    const double lo = cfg.get_number("fig9.tau_p_min_over_tau", 0.1);
    const double hi = cfg.get_number("fig9.tau_p_max_over_tau", 3.0);
    const auto n_sweep = static_cast<std::size_t>(cfg.get_int("fig9.points", 59));
    reject_untouched(cfg);
    if (n_sweep < 2) throw ConfigError("fig9.points must be at least 2");

    // Uniform sweep plus the two quoted abscissae.
    std::vector<double> ratios;
    for (std::size_t i = 0; i < n_sweep; ++i)
        ratios.push_back(lo + (hi - lo) * static_cast<double>(i) /
                                  static_cast<double>(n_sweep - 1));
    ratios.push_back(1.0);
    ratios.push_back(1.5);
    std::sort(ratios.begin(), ratios.end());
    ratios.erase(std::unique(ratios.begin(), ratios.end(),
                             [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                 ratios.end());

    std::filesystem::create_directories(ctx.out_dir);
    CsvWriter csv(ctx.out_dir / "fig9_finite_switch.csv",
                  {"tau_p", "t_min", "alpha_min", "p_o", "t_min_approx", "alpha_min_approx",
                   "p_o_approx", "quadrature_rel_err"},
                  {"s", "s", "1", "1", "s", "1", "1", "1"});
    stamp(csv, ctx, "fig9");
    csv.metadata("note", "alpha_min: exact ramp integrals; *_approx: second-order forms");

    const PotentialSpec well = PotentialSpec::harmonic(f_z, 0.0);
    double max_quad_err = 0.0;
    double min_overlap_to_1p5 = 1.0;
    double overlap_exact_at_1p5 = 0.0;
    double overlap_approx_at_1p5 = 0.0;
    double alpha_at_tau = 0.0;
    double alpha_sweep_min = std::numeric_limits<double>::max();

    for (const double ratio : ratios) {
        const double tau_p = ratio * tau;
        const MinimizedResidual exact = minimal_residual_linear(z0, omega, tau, tau_p, species);

        const double t_approx = optimal_hold_linear(omega, tau, tau_p);
        const ResidualExcitation approx =
            residual_alpha_linear_approx(z0, omega, tau, tau_p, t_approx, species);

        // Quadrature cross-check at the minimizing catch start. Right at the
        // matched-ramp point the amplitude cancels to zero, so the relative
        // error is taken against at least the cancellation floor.
        const double hold = exact.t_min - tau;
        const double alpha_floor =
            1e-9 * z0 / (2.0 * ground_state_extent(species, omega));
        double quad_err = std::nan("");
        if (hold >= 0.0) {
            const TransportProtocol protocol = TransportProtocol::make(
                well.at_center(-z0), well, well.at_center(z0), TransitionShape::linear(tau),
                hold, TransitionShape::linear(tau_p));
            const std::complex<double> alpha_q = residual_alpha_general(protocol, species, omega);
            quad_err = std::abs(std::abs(alpha_q) - std::abs(exact.alpha)) /
                       std::max(std::abs(exact.alpha), alpha_floor);
            max_quad_err = std::max(max_quad_err, quad_err);
        }

        csv.row({tau_p, exact.t_min, std::abs(exact.alpha), exact.overlap, t_approx,
                 std::abs(approx.alpha), approx.overlap, quad_err});

        if (ratio <= 1.5 + 1e-12) min_overlap_to_1p5 = std::min(min_overlap_to_1p5, exact.overlap);
        if (std::abs(ratio - 1.5) < 1e-12) {
            overlap_exact_at_1p5 = exact.overlap;
            overlap_approx_at_1p5 = approx.overlap;
        }
        if (std::abs(ratio - 1.0) < 1e-12) alpha_at_tau = std::abs(exact.alpha);
        alpha_sweep_min = std::min(alpha_sweep_min, std::abs(exact.alpha));
    }

    RunReport report;
    report.add("fig9-quadrature-match", 0.0, max_quad_err, 1e-6,
               "closed forms vs adaptive quadrature, relative |alpha|");
    report.add_band("fig9-overlap-above-0.9-to-1.5tau", min_overlap_to_1p5, 0.9, 1.0,
                    "exact forms; catch start minimized per point");
    report.add("fig9-approx-crossing-near-0.9", 0.9, overlap_approx_at_1p5, 0.015,
               "published second-order curve quotes one digit at tau' = 1.5 tau");
    report.add("fig9-cancellation-valley-at-tau", alpha_sweep_min, alpha_at_tau,
               1e-9 * z0 / (2.0 * ground_state_extent(species, omega)),
               "|alpha| smallest where the ramps match");
    report.add_band("fig9-exact-overlap-at-1.5tau", overlap_exact_at_1p5, 0.9, 1.0);

    finish(report, ctx, "fig9", t0);
    report.write_json(ctx.out_dir / "fig9_report.json");
    return report;
}

} // namespace iontide::scenarios
