#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "mmho/config.hpp"

using namespace mmho;

TEST_CASE("defaults are self-consistent")
{
    ExperimentConfig cfg;
    CHECK(cfg.check().empty());
    CHECK(cfg.sbs_count == 50);
    CHECK(cfg.beam_count == 3);
    CHECK(cfg.mmw_bandwidth_hz == doctest::Approx(5e9));
    CHECK(cfg.speeds_kmh.size() == 5);
}

TEST_CASE("empty text yields defaults")
{
    ExperimentConfig parsed = parse_config("");
    ExperimentConfig defaults;
    CHECK(parsed.canonical_text() == defaults.canonical_text());
    CHECK(parsed.hash() == defaults.hash());
}

TEST_CASE("overrides apply and change the hash")
{
    ExperimentConfig cfg = parse_config("mmw.tx_power_dbm = 30\nrun.trials = 50\n"
                                        "# comment line\n\n"
                                        "speeds_kmh = 10, 30\n");
    CHECK(cfg.mmw_tx_power_dbm == doctest::Approx(30.0));
    CHECK(cfg.trials == 50);
    REQUIRE(cfg.speeds_kmh.size() == 2);
    CHECK(cfg.speeds_kmh[1] == doctest::Approx(30.0));
    CHECK(cfg.hash() != ExperimentConfig{}.hash());
}

TEST_CASE("unknown key names a suggestion")
{
    try {
        parse_config("mmw.tx_power_dmb = 30\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        REQUIRE(e.errors().size() == 1);
        CHECK(e.errors()[0].find("mmw.tx_power_dmb") != std::string::npos);
        CHECK(e.errors()[0].find("mmw.tx_power_dbm") != std::string::npos);
    }
}

TEST_CASE("semantic violations are named and aggregated")
{
    try {
        parse_config("mmw.bandwidth_hz = -1\nho.ttt_s = 0\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.errors().size() >= 2);
        bool bandwidth_named = false;
        for (const auto& msg : e.errors())
            if (msg.find("bandwidth") != std::string::npos)
                bandwidth_named = true;
        CHECK(bandwidth_named);
    }
}

TEST_CASE("malformed values are rejected")
{
    CHECK_THROWS_AS(parse_config("run.trials = many\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("no_equals_sign\n"), ConfigError);
}

TEST_CASE("describe labels non-tabulated defaults")
{
    ExperimentConfig cfg;
    const std::string echo = cfg.describe();
    CHECK(echo.find("default chosen by this tool") != std::string::npos);
    CHECK(echo.find("mmw.tx_power_dbm") != std::string::npos);
}

TEST_CASE("derived builders carry config values")
{
    ExperimentConfig cfg;
    const BeamLayout layout = cfg.beam_layout();
    CHECK(layout.n_beams == 3);
    CHECK(layout.beam_width == doctest::Approx(deg2rad(10.0)));
    CHECK(layout.cell_radius == doctest::Approx(30.0));

    const LinkBudget los = cfg.mmw_link(true);
    const LinkBudget nlos = cfg.mmw_link(false);
    CHECK(los.combined_gain > nlos.combined_gain);
    CHECK(cfg.mmw_params(true).exponent == doctest::Approx(2.0));
    CHECK(cfg.mmw_params(false).exponent == doctest::Approx(3.5));
    CHECK(cfg.hof_model().cell_radius == doctest::Approx(30.0));
}
