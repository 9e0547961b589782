#include "iontide/scenarios.hpp"

#include <iostream>

#include <CLI11.hpp>

#include "internal/scenario_common.hpp"
#include "iontide/errors.hpp"

namespace iontide::scenarios {

namespace {

const char* fig6_defaults = R"(
[species]
preset = Ca40
[trap]
f_z = 1MHz
[transport]
z0 = 50um
l3_end = 140um
l4_end = -200um
l3_transport = inf
l4_transport = -120um
include_end_cubic = true
[grid]
preset = desk
desk_z0 = 1um
desk_points = 32768
paper_points = 16777216
span_factor = 1.6
steps_per_half_period = 1400
[sweep]
points = 25
inv_l4_min_per_um = -0.014
inv_l4_max_per_um = 0.014
)";

const char* fig7_defaults = R"(
[species]
preset = Ca40
[trap]
f_z = 1MHz
[transport]
z0 = 50um
l3_end = inf
l4_end = inf
l3_transport = inf
l4_transport = -120um
include_end_cubic = false
[grid]
preset = desk
desk_z0 = 1um
desk_points = 32768
paper_points = 16777216
span_factor = 1.6
steps_per_half_period = 1400
[fig7]
points = 9
f_min = 1MHz
f_max = 3MHz
)";

const char* fig9_defaults = R"(
[species]
preset = Ca40
[trap]
f_z = 1MHz
[fig9]
z0 = 50um
tau = 5ns
tau_p_min_over_tau = 0.1
tau_p_max_over_tau = 3
points = 59
)";

const char* squeeze_defaults = R"(
[species]
preset = Ca40
[squeeze]
f1 = 1.2MHz
lambda_sq = 0.1
cycles = 3
[heating]
gamma = 10quanta/s
squeeze_db = -20dB
f_z = 1MHz
[mc]
realizations = 10000
steps_per_period = 8
[anharmonic]
f_z = 1MHz
l4 = -120um
squeeze_db = -20dB
points = 2048
half_span = 0.7um
steps_per_period = 314
horizon = 20ms
threshold = 0.5
sample_every = 2000
control_horizon = 1ms
)";

const char* kick_defaults = R"(
[species]
preset = Ca40
[trap]
f_z = 1MHz
[kick]
offsets = 0.25um 0.5um 1um
points = 32768
span_factor = 2.6
steps_per_half_period = 1400
paper_offset_max = 50um
paper_offset_rows = 11
)";

const char* micromotion_defaults = R"(
[species]
preset = Ca40
[micromotion]
secular = 1MHz
drive = 100MHz
c2 = 8e-6V/m2
d2 = 4V/m2
c0 = 100um
)";

} // namespace

const std::vector<ScenarioInfo>& registry() {
    static const std::vector<ScenarioInfo> scenarios = {
        {"fig6", "Fock overlaps after quartic-well transport vs 1/L4", run_fig6_quartic_scan,
         fig6_defaults},
        {"fig7", "final ground-state overlap vs end-well frequency", run_fig7_frequency_scan,
         fig7_defaults},
        {"fig9", "residual coherent excitation vs catch ramp duration", run_fig9_finite_switch,
         fig9_defaults},
        {"squeeze", "sudden-switch squeezing, heating and anharmonic lifetimes",
         run_squeeze_suite, squeeze_defaults},
        {"kick", "collision-emulating offset kicks and energy transfer", run_kick_scenario,
         kick_defaults},
        {"micromotion", "axial micromotion sideband amplitudes", run_micromotion_report,
         micromotion_defaults},
    };
    return scenarios;
}

const ScenarioInfo* find_scenario(const std::string& name) {
    for (const auto& s : registry())
        if (s.name == name) return &s;
    return nullptr;
}

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"iontide: fast-switched trapped-ion motion simulator and error budgets"};
    app.require_subcommand(1);

    std::string scenario_name;
    std::string config_path;
    std::string out_dir = "out";
    bool slow = false;
    std::uint64_t seed = 12345;
    int jobs = 1;

    auto* run_cmd = app.add_subcommand("run", "run a named scenario");
    run_cmd->add_option("scenario", scenario_name, "scenario name (see `iontide list`)")
        ->required();
    auto* cfg_opt = run_cmd->add_option("--config", config_path, "scenario config file");
    run_cmd->add_option("--out", out_dir, "output directory");
    auto* seed_opt = run_cmd->add_option("--seed", seed, "Monte-Carlo seed");
    auto* jobs_opt = run_cmd->add_option("--jobs", jobs, "worker threads for sweeps");
    run_cmd->add_flag("--slow", slow, "enable full-resolution (paper-scale) runs");

    auto* list_cmd = app.add_subcommand("list", "list available scenarios");

    auto* check_cmd = app.add_subcommand("check", "run the acceptance suite");
    check_cmd->add_option("--out", out_dir, "output directory");
    auto* check_seed = check_cmd->add_option("--seed", seed, "Monte-Carlo seed");
    auto* check_jobs = check_cmd->add_option("--jobs", jobs, "worker threads");
    check_cmd->add_flag("--slow", slow, "include the slow criteria");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (list_cmd->parsed()) {
            for (const auto& s : registry())
                std::cout << s.name << "  -  " << s.description << '\n';
            std::cout << "check  -  acceptance suite (also: iontide check)\n";
            return 0;
        }

        ScenarioContext ctx;
        ctx.slow = slow;
        ctx.jobs = jobs;
        ctx.seed = seed;

        if (check_cmd->parsed()) {
            ctx.out_dir = std::filesystem::path(out_dir) / "check";
            if (check_jobs->count() == 0) ctx.jobs = 2;
            (void)check_seed;
            const RunReport report = run_acceptance(ctx);
            report.print(std::cout);
            return report.all_passed() ? 0 : 1;
        }

        const ScenarioInfo* info = find_scenario(scenario_name);
        if (!info) {
            std::cerr << "unknown scenario '" << scenario_name << "'; try `iontide list`\n";
            return 2;
        }
        Config cfg = Config::from_string(info->default_config);
        if (cfg_opt->count() > 0) cfg.merge(Config::from_file(config_path));
        ctx.config = cfg;
        ctx.out_dir = std::filesystem::path(out_dir) / info->name;

        // CLI flags win; config may still pin run parameters.
        if (seed_opt->count() == 0 && cfg.has("run.seed"))
            ctx.seed = static_cast<std::uint64_t>(cfg.get_int("run.seed", 12345));
        if (jobs_opt->count() == 0 && cfg.has("run.jobs"))
            ctx.jobs = static_cast<int>(cfg.get_int("run.jobs", 1));
        if (!slow) ctx.slow = cfg.get_bool("run.slow", false);

        const RunReport report = info->run(ctx);
        report.print(std::cout);
        return report.all_passed() ? 0 : 1;
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace iontide::scenarios
