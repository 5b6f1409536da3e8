#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mmho/geometry.hpp"
#include "mmho/rng.hpp"
#include "mmho/sim.hpp"

using namespace mmho;

namespace {

// Independent oracle: distance from p to the line through the origin with
// direction angle t, computed by explicit projection.
double point_line_distance(Point2D p, double t)
{
    const Point2D d{std::cos(t), std::sin(t)};
    const double along = p.x * d.x + p.y * d.y;
    const Point2D foot{along * d.x, along * d.y};
    return (p - foot).norm();
}

// Independent oracle: param s >= 0 with pos + s*dir on the line through the
// origin at angle t, via a 2x2 linear solve.
double ray_line_param(Point2D pos, double dir, double t)
{
    // pos + s*(cos dir, sin dir) = u*(cos t, sin t)
    const double a11 = std::cos(dir), a12 = -std::cos(t);
    const double a21 = std::sin(dir), a22 = -std::sin(t);
    const double det = a11 * a22 - a12 * a21;
    if (std::fabs(det) < 1e-12)
        return -1.0;
    const double s = (-pos.x * a22 + pos.y * a12) / det;
    return s;
}

} // namespace

TEST_CASE("angle helpers")
{
    CHECK(wrap_angle(-0.25) == doctest::Approx(kTwoPi - 0.25));
    CHECK(wrap_angle(kTwoPi + 0.5) == doctest::Approx(0.5));
    CHECK(deg2rad(rad2deg(1.234)) == doctest::Approx(1.234).epsilon(1e-14));
}

TEST_CASE("beam layout azimuth containment")
{
    BeamLayout layout{3, deg2rad(10.0), deg2rad(40.0), 30.0};
    layout.validate();
    // beam 0 spans [30, 40) degrees
    CHECK(layout.contains_azimuth(deg2rad(35.0)));
    CHECK(layout.contains_azimuth(deg2rad(31.0)));
    CHECK_FALSE(layout.contains_azimuth(deg2rad(45.0)));
    // beams repeat at pitch 2*pi/3
    CHECK(layout.contains_azimuth(deg2rad(35.0 + 120.0)));
    CHECK(layout.contains_azimuth(deg2rad(35.0 + 240.0)));
    CHECK_FALSE(layout.contains_azimuth(deg2rad(35.0 + 60.0)));
}

TEST_CASE("coverage probability closed form basics")
{
    BeamLayout wide{3, deg2rad(120.0), 0.0, 30.0};
    CHECK(coverage_probability(wide) == doctest::Approx(1.0));

    BeamLayout narrow{3, deg2rad(10.0), 0.0, 30.0};
    const double n = 3.0, th = deg2rad(10.0);
    const double direct = n * th / kTwoPi;
    const double expected =
        direct + (1.0 - direct) * (0.5 * (1.0 - 1.0 / n) + th / (2.0 * kTwoPi));
    CHECK(coverage_probability(narrow) == doctest::Approx(expected).epsilon(1e-14));

    BeamLayout bad{1, deg2rad(10.0), 0.0, 30.0};
    CHECK_THROWS(coverage_probability(bad));
}

TEST_CASE("coverage probability matches monte carlo crossing frequency")
{
    struct Case {
        int n;
        double width_deg;
    };
    for (Case c : {Case{2, 10.0}, Case{3, 30.0}}) {
        BeamLayout layout{c.n, deg2rad(c.width_deg), deg2rad(7.0), 30.0};
        Rng rng(42);
        const long long samples = 200000;
        const double freq = sample_beam_crossing_frequency(layout, samples, rng);
        const double p = coverage_probability(layout);
        const double sigma = std::sqrt(p * (1.0 - p) / samples);
        CHECK(std::fabs(freq - p) < 4.0 * sigma + 1e-12);
    }
}

TEST_CASE("min crossing distance equals projected point-line distance")
{
    BeamLayout layout{3, deg2rad(10.0), deg2rad(25.0), 30.0};
    Rng rng(7);
    for (int i = 0; i < 200; ++i) {
        const Point2D p{rng.uniform(-40.0, 40.0), rng.uniform(-40.0, 40.0)};
        if (p.norm() < 1e-6)
            continue;
        const int beam = static_cast<int>(rng.uniform() * 3);
        const double d = min_crossing_distance(p, layout, beam);
        const double oracle = point_line_distance(p, layout.leading_azimuth(beam));
        CHECK(d == doctest::Approx(oracle).epsilon(1e-10));
    }
    CHECK_THROWS(min_crossing_distance(Point2D{0.0, 0.0}, layout, 0));
}

TEST_CASE("crossing length agrees with linear-solve oracle and bounds")
{
    BeamLayout layout{3, deg2rad(10.0), 0.0, 30.0};
    Rng rng(11);
    int checked = 0;
    while (checked < 200) {
        // start on the trailing edge of beam 0, crossing direction
        const double r = rng.uniform(2.0, 30.0);
        const double t = layout.trailing_azimuth(0);
        const Point2D pos{r * std::cos(t), r * std::sin(t)};
        const double theta_hat = rng.uniform(layout.beam_width + 0.05,
                                             std::numbers::pi - 0.05);
        const double dir = layout.base_azimuth - layout.beam_width + theta_hat;
        double len = 0.0;
        try {
            len = crossing_length(pos, dir, layout, 0);
        } catch (...) {
            continue;
        }
        const double oracle = ray_line_param(pos, dir, layout.leading_azimuth(0));
        REQUIRE(oracle > 0.0);
        CHECK(len == doctest::Approx(oracle).epsilon(1e-9));
        CHECK(len >= min_crossing_distance(pos, layout, 0) - 1e-9);
        ++checked;
    }
}

TEST_CASE("chord pdf normalizes and matches analytic cdf derivative")
{
    const double a = 30.0;
    // Simpson integration up to 2a - 1 (the density is singular at 2a);
    // compare against the analytic mass (2/pi) asin((2a-1)/2a)
    const double hi = 2.0 * a - 1.0;
    const int n = 200000;
    const double h = hi / n;
    double integral = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x0 = i * h, x1 = x0 + h, xm = 0.5 * (x0 + x1);
        integral += h / 6.0 *
                    (chord_length_pdf(x0, a) + 4.0 * chord_length_pdf(xm, a) +
                     chord_length_pdf(x1, a));
    }
    const double mass = 2.0 / std::numbers::pi * std::asin(hi / (2.0 * a));
    CHECK(integral == doctest::Approx(mass).epsilon(1e-8));

    // derivative of (2/pi) asin(d / 2a)
    for (double d : {5.0, 20.0, 40.0, 55.0}) {
        const double eps = 1e-6;
        const auto cdf = [&](double x) {
            return 2.0 / std::numbers::pi * std::asin(x / (2.0 * a));
        };
        const double fd = (cdf(d + eps) - cdf(d - eps)) / (2.0 * eps);
        CHECK(chord_length_pdf(d, a) == doctest::Approx(fd).epsilon(1e-6));
    }
    CHECK_THROWS(chord_length_pdf(2.0 * a + 1.0, a));
    CHECK_THROWS(chord_length_pdf(-1.0, a));
}

TEST_CASE("circle entry crossing equals quadratic-root oracle")
{
    const double a = 30.0;
    Rng rng(5);
    for (int i = 0; i < 500; ++i) {
        const double phi = rng.uniform(0.0, kTwoPi);
        const Point2D entry{a * std::cos(phi), a * std::sin(phi)};
        const double dir = rng.uniform(0.0, kTwoPi);
        const double len = circle_entry_crossing(entry, dir, a);
        // oracle: largest s with |entry + s*d| = a
        const Point2D d{std::cos(dir), std::sin(dir)};
        const double b = 2.0 * (entry.x * d.x + entry.y * d.y);
        const double s = -b; // c term vanishes on the rim
        if (s <= 0.0)
            CHECK(len == 0.0);
        else
            CHECK(len == doctest::Approx(s).epsilon(1e-12));
        CHECK(len <= 2.0 * a + 1e-9);
    }
}
