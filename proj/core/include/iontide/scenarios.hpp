#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "iontide/config.hpp"
#include "iontide/report.hpp"

namespace iontide::scenarios {

struct ScenarioContext {
    Config config;
    std::filesystem::path out_dir = "out";
    bool slow = false;
    std::uint64_t seed = 12345;
    int jobs = 1;
};

using ScenarioFn = RunReport (*)(const ScenarioContext&);

struct ScenarioInfo {
    std::string name;
    std::string description;
    ScenarioFn run;
    std::string default_config;
};

const std::vector<ScenarioInfo>& registry();
const ScenarioInfo* find_scenario(const std::string& name);

RunReport run_fig6_quartic_scan(const ScenarioContext& ctx);
RunReport run_fig7_frequency_scan(const ScenarioContext& ctx);
RunReport run_fig9_finite_switch(const ScenarioContext& ctx);
RunReport run_squeeze_suite(const ScenarioContext& ctx);
RunReport run_kick_scenario(const ScenarioContext& ctx);
RunReport run_micromotion_report(const ScenarioContext& ctx);

/// Full acceptance battery; one report line per criterion clause. Slow
/// clauses (paper-scale transport, anharmonic lifetime) run only with
/// ctx.slow and are reported as skipped otherwise.
RunReport run_acceptance(const ScenarioContext& ctx);

/// `iontide` command line: run <scenario> | list | check.
/// Exit code 0: all checks passed, 1: a check failed, 2: configuration error.
int cli_main(int argc, const char* const* argv);

} // namespace iontide::scenarios
