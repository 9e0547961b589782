#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "iontide/config.hpp"
#include "iontide/constants.hpp"
#include "iontide/csv.hpp"
#include "iontide/errors.hpp"
#include "iontide/report.hpp"
#include "iontide/units.hpp"

using namespace iontide;

TEST_CASE("quantity parsing: units, scales, misparse protection") {
    CHECK(parse_as("50um", UnitKind::length) == doctest::Approx(50e-6));
    CHECK(parse_as("5ns", UnitKind::time) == doctest::Approx(5e-9));
    CHECK(parse_as("1MHz", UnitKind::frequency) == doctest::Approx(1e6));
    CHECK(parse_as("2.5fm", UnitKind::length) == doctest::Approx(2.5e-15));
    CHECK(parse_as("8e-6V/m2", UnitKind::curvature) == doctest::Approx(8e-6));
    CHECK(parse_as("4V/m^2", UnitKind::curvature) == doctest::Approx(4.0));
    CHECK(parse_as("-20dB", UnitKind::decibel) == doctest::Approx(-20.0));
    CHECK(parse_as("10quanta/s", UnitKind::rate) == doctest::Approx(10.0));
    CHECK(parse_as("10/s", UnitKind::rate) == doctest::Approx(10.0));
    CHECK(parse_as("39.9626u", UnitKind::mass) ==
          doctest::Approx(39.9626 * constants::atomic_mass_unit));
    CHECK(parse_as("1e", UnitKind::charge) == doctest::Approx(constants::elementary_charge));
    CHECK(parse_as("42", UnitKind::dimensionless) == 42.0);
    CHECK(parse_as(" 625ns ", UnitKind::time) == doctest::Approx(625e-9));
    CHECK(parse_as("-120um", UnitKind::length) == doctest::Approx(-120e-6));

    CHECK_THROWS_AS(parse_quantity("50parsec"), ConfigError);
    CHECK_THROWS_AS(parse_quantity("fast"), ConfigError);
    CHECK_THROWS_AS(parse_quantity(""), ConfigError);
    CHECK_THROWS_AS(parse_as("50um", UnitKind::time), ConfigError);
    CHECK_THROWS_AS(parse_as("50", UnitKind::length), ConfigError);
}

TEST_CASE("config files: sections, typos, merging, infinities") {
    const std::string text = R"(
# a comment
[trap]
f_z = 1MHz

[transport]
z0 = 50um
l3_transport = inf
l4_transport = -120um
flag = true
count = 7
)";
    Config cfg = Config::from_string(text);
    CHECK(cfg.get("trap.f_z", UnitKind::frequency) == doctest::Approx(1e6));
    CHECK(cfg.get("transport.z0", UnitKind::length) == doctest::Approx(50e-6));
    CHECK(!cfg.get_length_or_infinite("transport.l3_transport"));
    CHECK(cfg.get_length_or_infinite("transport.l4_transport") ==
          doctest::Approx(-120e-6));
    CHECK(cfg.get_bool("transport.flag", false));
    CHECK(cfg.get_int("transport.count", 0) == 7);
    CHECK(cfg.get_bool("transport.missing", true));
    CHECK(cfg.untouched_keys().empty());

    Config overlay = Config::from_string("[trap]\nf_z = 2MHz\n");
    cfg.merge(overlay);
    CHECK(cfg.get("trap.f_z", UnitKind::frequency) == doctest::Approx(2e6));

    Config with_typo = Config::from_string("[trap]\nf_z = 1MHz\nf_zz = 2MHz\n");
    CHECK(with_typo.get("trap.f_z", UnitKind::frequency) == doctest::Approx(1e6));
    CHECK(with_typo.untouched_keys() == std::vector<std::string>{"trap.f_zz"});

    CHECK_THROWS_AS(Config::from_string("key_without_section = 1\n"), ConfigError);
    CHECK_THROWS_AS(Config::from_string("[trap\nf = 1\n"), ConfigError);
    CHECK_THROWS_AS(Config::from_string("[trap]\nnovalue\n"), ConfigError);
    CHECK_THROWS_AS(Config::from_string("[trap]\nf_z = 1MHz\n").get("trap.f_z", UnitKind::time),
                    ConfigError);
    CHECK_THROWS_AS(Config::from_file("/nonexistent/path.cfg"), ConfigError);
}

TEST_CASE("csv writer layout and formatting") {
    const auto dir = std::filesystem::temp_directory_path() / "iontide_test_csv";
    std::filesystem::create_directories(dir);
    const auto path = dir / "table.csv";
    {
        CsvWriter csv(path, {"a", "b", "status"}, {"m", "s", "text"});
        csv.metadata("scenario", "demo");
        csv.row_with_status({1.5e-6, 2.0}, "ok");
        csv.row_with_status({-3.25e-9, 0.125}, "failed: detail");
    }
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    CHECK(line == "# scenario: demo");
    std::getline(in, line);
    CHECK(line == "a,b,status");
    std::getline(in, line);
    CHECK(line == "m,s,text");
    std::getline(in, line);
    CHECK(line == "1.5e-06,2,ok");
    std::getline(in, line);
    CHECK(line == "-3.25e-09,0.125,failed: detail");

    CsvWriter wide(dir / "wide.csv", {"x"}, {"1"});
    CHECK_THROWS(wide.row({1.0, 2.0}));
    CHECK(format_csv_number(0.1) == "0.1");
}

TEST_CASE("run report bookkeeping and json output") {
    RunReport report;
    report.scenario = "demo";
    report.add("close-enough", 1.0, 1.005, 0.01);
    report.add("too-far", 1.0, 1.5, 0.01);
    report.add_band("in-band", 5.0, 1.0, 10.0);
    report.add_flag("flagged", true, "note");
    CHECK(!report.all_passed());
    CHECK(report.checks[0].pass);
    CHECK(!report.checks[1].pass);
    CHECK(report.checks[2].pass);

    const auto dir = std::filesystem::temp_directory_path() / "iontide_test_csv";
    std::filesystem::create_directories(dir);
    report.write_json(dir / "report.json");
    std::ifstream in(dir / "report.json");
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string body = buf.str();
    CHECK(body.find("\"scenario\": \"demo\"") != std::string::npos);
    CHECK(body.find("\"all_passed\": false") != std::string::npos);
    CHECK(body.find("too-far") != std::string::npos);

    std::ostringstream os;
    report.print(os);
    CHECK(os.str().find("FAIL") != std::string::npos);
    CHECK(os.str().find("CHECKS FAILED") != std::string::npos);

    RunReport nan_report;
    nan_report.add("nan-fails", 1.0, std::nan(""), 1.0);
    CHECK(!nan_report.all_passed());
}
