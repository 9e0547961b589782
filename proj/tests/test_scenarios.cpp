#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "iontide/config.hpp"
#include "iontide/scenarios.hpp"

using namespace iontide;
using namespace iontide::scenarios;

namespace {

std::filesystem::path fresh_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "iontide_scenarios" / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

ScenarioContext make_ctx(const std::string& scenario, const std::string& overrides,
                         const std::string& dir_name) {
    const ScenarioInfo* info = find_scenario(scenario);
    REQUIRE(info != nullptr);
    Config cfg = Config::from_string(info->default_config);
    if (!overrides.empty()) cfg.merge(Config::from_string(overrides));
    ScenarioContext ctx;
    ctx.config = cfg;
    ctx.out_dir = fresh_dir(dir_name);
    ctx.jobs = 2;
    ctx.seed = 777;
    return ctx;
}

std::string file_without_generated_line(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::string out, line;
    while (std::getline(in, line))
        if (line.rfind("# generated:", 0) != 0) out += line + "\n";
    return out;
}

} // namespace

TEST_CASE("registry lists the six named experiments") {
    std::vector<std::string> names;
    for (const auto& s : registry()) names.push_back(s.name);
    CHECK(names == std::vector<std::string>{"fig6", "fig7", "fig9", "squeeze", "kick",
                                            "micromotion"});
    CHECK(find_scenario("fig6") != nullptr);
    CHECK(find_scenario("nope") == nullptr);
}

TEST_CASE("micromotion scenario passes and emits deterministic csv") {
    auto ctx = make_ctx("micromotion", "", "mm1");
    const RunReport report = run_micromotion_report(ctx);
    CHECK(report.all_passed());
    CHECK(std::filesystem::exists(ctx.out_dir / "micromotion_report.csv"));
    CHECK(std::filesystem::exists(ctx.out_dir / "micromotion_report.json"));
    const std::string first = file_without_generated_line(ctx.out_dir / "micromotion_report.csv");

    auto ctx2 = make_ctx("micromotion", "", "mm2");
    run_micromotion_report(ctx2);
    const std::string second =
        file_without_generated_line(ctx2.out_dir / "micromotion_report.csv");
    CHECK(first == second);
}

TEST_CASE("fig9 scenario: closed forms, quadrature and published-curve checks") {
    auto ctx = make_ctx("fig9", "[fig9]\npoints = 23\n", "fig9");
    const RunReport report = run_fig9_finite_switch(ctx);
    for (const auto& c : report.checks) {
        INFO(c.name, " got ", c.got, " expected ", c.expected);
        CHECK(c.pass);
    }
    CHECK(std::filesystem::exists(ctx.out_dir / "fig9_finite_switch.csv"));
}

TEST_CASE("kick scenario converts offsets to the advertised energies") {
    auto ctx = make_ctx("kick", "[kick]\noffsets = 0.5um\npoints = 16384\n", "kick");
    const RunReport report = run_kick_scenario(ctx);
    for (const auto& c : report.checks) {
        INFO(c.name, " got ", c.got, " expected ", c.expected);
        CHECK(c.pass);
    }
    CHECK(std::filesystem::exists(ctx.out_dir / "kick_energy.csv"));
    CHECK(std::filesystem::exists(ctx.out_dir / "kick_reference.csv"));
}

TEST_CASE("squeeze scenario without the slow flag") {
    auto ctx = make_ctx("squeeze", "[mc]\nrealizations = 2500\n", "squeeze");
    const RunReport report = run_squeeze_suite(ctx);
    for (const auto& c : report.checks) {
        INFO(c.name, " got ", c.got, " expected ", c.expected, " [", c.note, "]");
        CHECK(c.pass);
    }
    CHECK(std::filesystem::exists(ctx.out_dir / "squeeze_cycles.csv"));
    CHECK(std::filesystem::exists(ctx.out_dir / "squeeze_noise_mc.csv"));
    CHECK(!std::filesystem::exists(ctx.out_dir / "squeeze_anharmonic_lifetime.csv"));
}

TEST_CASE("fig6 scenario at a reduced sweep") {
    auto ctx = make_ctx("fig6",
                        "[sweep]\npoints = 3\n[grid]\ndesk_points = 16384\n", "fig6");
    const RunReport report = run_fig6_quartic_scan(ctx);
    for (const auto& c : report.checks) {
        INFO(c.name, " got ", c.got, " expected ", c.expected);
        CHECK(c.pass);
    }
    CHECK(std::filesystem::exists(ctx.out_dir / "fig6_quartic_scan.csv"));
}

TEST_CASE("fig7 scenario at a reduced sweep") {
    auto ctx = make_ctx("fig7", "[fig7]\npoints = 3\n[grid]\ndesk_points = 16384\n", "fig7");
    const RunReport report = run_fig7_frequency_scan(ctx);
    for (const auto& c : report.checks) {
        INFO(c.name, " got ", c.got, " expected ", c.expected);
        CHECK(c.pass);
    }
    CHECK(std::filesystem::exists(ctx.out_dir / "fig7_frequency_scan.csv"));
}

TEST_CASE("cli contract: list, run, config errors") {
    const auto out = fresh_dir("cli");
    const std::string out_flag = out.string();

    {
        const char* argv[] = {"iontide", "list"};
        CHECK(cli_main(2, argv) == 0);
    }
    {
        const char* argv[] = {"iontide", "run", "micromotion", "--out", out_flag.c_str()};
        CHECK(cli_main(5, argv) == 0);
        CHECK(std::filesystem::exists(out / "micromotion" / "micromotion_report.json"));
    }
    {
        const char* argv[] = {"iontide", "run", "does-not-exist"};
        CHECK(cli_main(3, argv) == 2);
    }
    {
        // config with an unknown key is a hard configuration error
        const auto bad = out / "bad.cfg";
        std::ofstream(bad) << "[micromotion]\ndriv = 100MHz\n";
        const std::string bad_str = bad.string();
        const char* argv[] = {"iontide", "run",   "micromotion", "--config",
                              bad_str.c_str(), "--out", out_flag.c_str()};
        CHECK(cli_main(7, argv) == 2);
    }
    {
        const char* argv[] = {"iontide", "run", "micromotion", "--config", "/no/such/file"};
        CHECK(cli_main(5, argv) == 2);
    }
}
