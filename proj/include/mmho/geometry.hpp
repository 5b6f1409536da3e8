#ifndef MMHO_GEOMETRY_HPP
#define MMHO_GEOMETRY_HPP

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mmho {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Normalizes an angle to [0, 2*pi).
inline double wrap_angle(double a)
{
    a = std::fmod(a, kTwoPi);
    return a < 0.0 ? a + kTwoPi : a;
}

inline double deg2rad(double d) { return d * std::numbers::pi / 180.0; }
inline double rad2deg(double r) { return r * 180.0 / std::numbers::pi; }

struct Point2D {
    double x = 0.0; // meters
    double y = 0.0; // meters

    double norm() const { return std::hypot(x, y); }
};

inline Point2D operator+(Point2D a, Point2D b) { return {a.x + b.x, a.y + b.y}; }
inline Point2D operator-(Point2D a, Point2D b) { return {a.x - b.x, a.y - b.y}; }
inline Point2D operator*(double s, Point2D p) { return {s * p.x, s * p.y}; }

/// Fixed-azimuth mmW beam configuration of one SBS. Beam i occupies the
/// angular sector [base_azimuth + i*2*pi/n_beams - beam_width,
/// base_azimuth + i*2*pi/n_beams), i.e. base_azimuth is the leading edge of
/// beam 0 and the beams are equidistant in azimuth.
struct BeamLayout {
    int n_beams = 3;            // N_k
    double beam_width = 0.0;    // theta_k, radians
    double base_azimuth = 0.0;  // theta_0 of beam 0, radians
    double cell_radius = 30.0;  // a, meters

    void validate() const;

    /// Leading-edge azimuth of beam `i` (the line y = x*tan(theta_0)).
    double leading_azimuth(int i) const
    {
        return wrap_angle(base_azimuth + i * kTwoPi / n_beams);
    }
    /// Trailing-edge azimuth of beam `i` (the line y = x*tan(theta_0 - theta_k)).
    double trailing_azimuth(int i) const
    {
        return wrap_angle(leading_azimuth(i) - beam_width);
    }
    /// True if the polar angle `phi` falls inside some beam sector.
    bool contains_azimuth(double phi) const;
};

/// Straight-line trajectory of one MUE over a frame.
struct Ray {
    Point2D origin;
    double direction = 0.0; // theta_u, radians, [0, 2*pi)
    double speed = 1.0;     // v_u, m/s
};

/// Probability that an MUE entering the cell at a uniform boundary point
/// with a uniform direction crosses a mmW beam sector.
///
/// The "1/N" in the second bracket of the closed form is read as 1/N_k,
/// consistent with the equidistant-beam geometry it is derived from.
/// Requires n_beams >= 2 and n_beams*beam_width <= 2*pi.
double coverage_probability(const BeamLayout& layout);

/// Same, but also reports the value before clamping to [0,1] so callers can
/// monitor how far floating-point composition grazed the bound.
double coverage_probability_raw(const BeamLayout& layout);

/// Perpendicular distance from `pos` (on the beam's trailing edge) to the
/// beam's leading edge: r_min. Uses the normal form |x sin(t0) - y cos(t0)|,
/// stable for all leading-edge azimuths including vertical ones.
double min_crossing_distance(Point2D pos, const BeamLayout& layout, int beam_index);

/// Distance traversed from `pos` along `ray_direction` until the beam's
/// leading edge is reached: r_c. Caching duration is r_c / speed.
/// Throws if the ray is parallel to the edge or exits away from it.
double crossing_length(Point2D pos, double ray_direction, const BeamLayout& layout,
                       int beam_index);

/// PDF of a random chord length within a circle of radius a, with one chord
/// endpoint fixed and the other set by a uniform angle in [0, pi]:
/// f(d) = 2 / (pi * sqrt(4 a^2 - d^2)), 0 <= d < 2a.
double chord_length_pdf(double d, double cell_radius);

/// Chord length traversed by a ray entering the disk of radius `cell_radius`
/// at boundary point `entry` with direction `direction`. Tangent or outward
/// directions yield 0.
double circle_entry_crossing(Point2D entry, double direction, double cell_radius);

} // namespace mmho

#endif
