#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mmho/geometry.hpp"
#include "mmho/radio.hpp"

using namespace mmho;

TEST_CASE("db round trip below 1e-12")
{
    for (double db : {-174.0, -80.0, -3.0, 0.0, 3.0, 18.0, 36.0, 46.0}) {
        CHECK(std::fabs(linear_to_db(db_to_linear(db)) - db) < 1e-12);
    }
}

TEST_CASE("path loss reference intercept at 73 GHz")
{
    PathLossParams p{73e9, 1.0, 2.0, 0.0, BandTag::MmwLos};
    // independent: PL(r0) = 20 log10(4 pi r0 f / c)
    const double intercept =
        20.0 * std::log10(4.0 * std::numbers::pi * 1.0 * 73e9 / kSpeedOfLight);
    CHECK(path_loss(1.0, p, 0.0) == doctest::Approx(intercept).epsilon(1e-12));
    CHECK(intercept == doctest::Approx(69.71).epsilon(1e-3));
    // slope: +20 dB per decade at alpha = 2
    CHECK(path_loss(10.0, p, 0.0) - path_loss(1.0, p, 0.0) ==
          doctest::Approx(20.0).epsilon(1e-12));
    // shadowing enters additively in dB
    CHECK(path_loss(10.0, p, 3.5) - path_loss(10.0, p, 0.0) ==
          doctest::Approx(3.5).epsilon(1e-12));
    CHECK_THROWS(path_loss(0.5, p, 0.0));
}

TEST_CASE("path loss monotone in distance and exponent")
{
    PathLossParams los{73e9, 1.0, 2.0, 0.0, BandTag::MmwLos};
    PathLossParams nlos{73e9, 1.0, 3.5, 0.0, BandTag::MmwNlos};
    double prev = path_loss(1.0, los, 0.0);
    for (double r = 2.0; r < 200.0; r *= 1.5) {
        const double pl = path_loss(r, los, 0.0);
        CHECK(pl > prev);
        CHECK(path_loss(r, nlos, 0.0) > pl);
        prev = pl;
    }
}

TEST_CASE("antenna gain sectorization is strict")
{
    AntennaPattern pat{18.0, -2.0, deg2rad(10.0)};
    CHECK(antenna_gain(0.0, pat) == doctest::Approx(18.0));
    CHECK(antenna_gain(deg2rad(9.999), pat) == doctest::Approx(18.0));
    CHECK(antenna_gain(deg2rad(10.0), pat) == doctest::Approx(-2.0));
    CHECK(antenna_gain(deg2rad(-10.0), pat) == doctest::Approx(-2.0));
    CHECK(antenna_gain(std::numbers::pi, pat) == doctest::Approx(-2.0));
}

TEST_CASE("snr and rate consistency")
{
    PathLossParams p{73e9, 1.0, 2.0, 0.0, BandTag::MmwLos};
    LinkBudget link = make_link_budget(27.0, 5e9, -174.0, 36.0, p);
    for (double r : {5.0, 20.0, 80.0}) {
        const double s = snr(r, link, p);
        CHECK(s > 0.0);
        CHECK(instantaneous_rate(r, link, p) ==
              doctest::Approx(5e9 * std::log2(1.0 + s)).epsilon(1e-12));
    }
    // independent check through the dB budget at one distance
    const double r = 20.0;
    const double rx_dbm = 27.0 + 36.0 - path_loss(r, p, 0.0);
    const double noise_dbm = -174.0 + 10.0 * std::log10(5e9);
    CHECK(linear_to_db(snr(r, link, p)) ==
          doctest::Approx(rx_dbm - noise_dbm).epsilon(1e-9));
    CHECK(snr(5.0, link, p) > snr(20.0, link, p));
}

TEST_CASE("rss decreases with distance and carries gains")
{
    PathLossParams p{2e9, 1.0, 3.5, 0.0, BandTag::Microwave};
    LinkBudget link = make_link_budget(30.0, 20e6, -174.0, 0.0, p);
    const double near = rss_dbm(10.0, link, p, 0.0, 0.0, 0.0);
    const double far = rss_dbm(100.0, link, p, 0.0, 0.0, 0.0);
    CHECK(near > far);
    CHECK(far == doctest::Approx(near - 35.0).epsilon(1e-12)); // 3.5 * 10 dB/decade
    CHECK(rss_dbm(10.0, link, p, 0.0, 5.0, 2.0) ==
          doctest::Approx(near + 7.0).epsilon(1e-12));
    CHECK(rss_dbm(10.0, link, p, -4.0, 0.0, 0.0) ==
          doctest::Approx(near + 4.0).epsilon(1e-12));
}
