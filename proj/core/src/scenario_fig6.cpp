#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "internal/scenario_common.hpp"
#include "iontide/errors.hpp"

namespace iontide::scenarios {

namespace {

struct SweepPoint {
    double inv_l4_per_um; // paper-scale axis
    bool anchor;
    detail::TransportPoint result;
    std::string status;
};

} // namespace

RunReport run_fig6_quartic_scan(const ScenarioContext& ctx) {
    using namespace detail;
    const double t0 = wall_time();
    const Config& cfg = ctx.config;

    const bool paper_preset = cfg.get_string("grid.preset", "desk") == "paper";
    TransportParams params = transport_from_config(cfg, paper_preset);
    const auto n_sweep = static_cast<std::size_t>(cfg.get_int("sweep.points", 25));
    const double inv_min = cfg.get_number("sweep.inv_l4_min_per_um", -0.014);
    const double inv_max = cfg.get_number("sweep.inv_l4_max_per_um", 0.014);
    reject_untouched(cfg);
    if (n_sweep < 2) throw ConfigError("sweep.points must be at least 2");

    if (!params.l4_transport)
        throw ConfigError("fig6 needs a finite transport quartic scale as the anchor");
    const double anchor_inv = 1e-6 / *params.l4_transport; // 1/um

    std::vector<SweepPoint> points;
    for (std::size_t i = 0; i < n_sweep; ++i) {
        const double x = inv_min + (inv_max - inv_min) * static_cast<double>(i) /
                                       static_cast<double>(n_sweep - 1);
        points.push_back(SweepPoint{x, false, {}, "pending"});
    }
    points.push_back(SweepPoint{anchor_inv, true, {}, "pending"});
    std::sort(points.begin(), points.end(),
              [](const SweepPoint& a, const SweepPoint& b) {
                  return a.inv_l4_per_um < b.inv_l4_per_um;
              });

    // The initial well does not change across the sweep; relax it once.
    const Wavefunction psi0 = initial_state(params, params.space_grid().with_time(1e-9, 1));

    auto run_point = [&](SweepPoint& pt) {
        TransportParams p = params;
        if (pt.inv_l4_per_um == 0.0)
            p.l4_transport = std::nullopt;
        else
            p.l4_transport = 1e-6 / pt.inv_l4_per_um;
        try {
            pt.result = run_transport_point(p, 6, &psi0);
            pt.status = "ok";
        } catch (const std::exception& e) {
            pt.status = std::string("failed: ") + e.what();
        }
    };

    const int jobs = std::max(1, ctx.jobs);
    if (jobs == 1) {
        for (auto& pt : points) run_point(pt);
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        for (int j = 0; j < jobs; ++j) {
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= points.size()) return;
                    run_point(points[i]);
                }
            });
        }
        for (auto& t : pool) t.join();
    }

    std::filesystem::create_directories(ctx.out_dir);
    CsvWriter csv(ctx.out_dir / "fig6_quartic_scan.csv",
                  {"inv_l4", "p_n0", "p_n2", "p_n4", "p_n6", "arrival_time", "status"},
                  {"1/um", "1", "1", "1", "1", "s", "text"});
    stamp(csv, ctx, "fig6");
    for (const auto& pt : points) {
        if (pt.status == "ok") {
            csv.row_with_status({pt.inv_l4_per_um, pt.result.overlaps[0], pt.result.overlaps[2],
                                 pt.result.overlaps[4], pt.result.overlaps[6],
                                 pt.result.arrival_time},
                                pt.anchor ? "ok,anchor" : "ok");
        } else {
            csv.row_with_status({pt.inv_l4_per_um, std::nan(""), std::nan(""), std::nan(""),
                                 std::nan(""), std::nan("")},
                                pt.status);
        }
    }

    RunReport report;
    const auto* anchor = &*std::find_if(points.begin(), points.end(),
                                        [](const SweepPoint& p) { return p.anchor; });
    if (anchor->status == "ok") {
        report.add("fig6-anchor-p0", 0.90, anchor->result.overlaps[0], 0.03);
        report.add("fig6-anchor-p2", 0.10, anchor->result.overlaps[2], 0.03);
    } else {
        report.add_flag("fig6-anchor-p0", false, anchor->status);
        report.add_flag("fig6-anchor-p2", false, anchor->status);
    }

    const auto* harmonic_pt =
        &*std::min_element(points.begin(), points.end(),
                           [](const SweepPoint& a, const SweepPoint& b) {
                               return std::abs(a.inv_l4_per_um) < std::abs(b.inv_l4_per_um);
                           });
    if (harmonic_pt->status == "ok" && std::abs(harmonic_pt->inv_l4_per_um) < 1e-12) {
        report.add_band("fig6-harmonic-limit-p0", harmonic_pt->result.overlaps[0], 1.0 - 1e-4,
                        1.0 + 1e-12, "harmonic transport returns the ground state");
    }

    // Quoted claim: the curve does not depend on the axial frequency.
    {
        TransportParams half = params;
        half.f_end = half.f_transport = 0.5 * params.f_transport;
        try {
            const auto at_half = run_transport_point(half, 2);
            report.add("fig6-frequency-independence", anchor->result.overlaps[0],
                       at_half.overlaps[0], 0.01, "anchor re-run at f_z/2");
        } catch (const std::exception& e) {
            report.add_flag("fig6-frequency-independence", false, e.what());
        }
    }

    // The desk preset must preserve the dimensionless anharmonicity exactly.
    {
        const double kappa_paper = std::pow(params.z0_paper / *params.l4_transport, 2);
        const double kappa_run =
            std::pow(params.z0() / *params.scaled(params.l4_transport), 2);
        report.add("fig6-dimensionless-group", kappa_paper, kappa_run, 1e-12 * kappa_paper,
                   "z0^2/L4^2 preserved under scaling");
    }

    if (ctx.slow && !paper_preset) {
        TransportParams paper = transport_from_config(cfg, true);
        try {
            const auto full = run_transport_point(paper, 2);
            report.add("fig6-desk-vs-paper-p0", anchor->result.overlaps[0], full.overlaps[0],
                       0.01, "paper-scale grid");
        } catch (const std::exception& e) {
            report.add_flag("fig6-desk-vs-paper-p0", false, e.what());
        }
    }

    finish(report, ctx, "fig6", t0);
    report.write_json(ctx.out_dir / "fig6_report.json");
    return report;
}

} // namespace iontide::scenarios
