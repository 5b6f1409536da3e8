#include "mmho/geometry.hpp"

#include <algorithm>
#include <string>

namespace mmho {

void BeamLayout::validate() const
{
    if (n_beams < 1)
        throw std::domain_error("BeamLayout: n_beams must be >= 1");
    if (!(beam_width > 0.0) || !(beam_width < kTwoPi))
        throw std::domain_error("BeamLayout: beam_width must be in (0, 2*pi)");
    if (n_beams * beam_width > kTwoPi * (1.0 + 1e-12))
        throw std::domain_error("BeamLayout: n_beams * beam_width exceeds 2*pi");
    if (!(cell_radius > 0.0))
        throw std::domain_error("BeamLayout: cell_radius must be positive");
}

bool BeamLayout::contains_azimuth(double phi) const
{
    // Beam i spans [leading - width, leading); measure the angular offset
    // behind beam 0's leading edge modulo the beam pitch.
    const double pitch = kTwoPi / n_beams;
    const double behind = wrap_angle(base_azimuth - phi);
    const double off = std::fmod(behind, pitch);
    return off > 0.0 && off <= beam_width;
}

double coverage_probability_raw(const BeamLayout& layout)
{
    layout.validate();
    if (layout.n_beams < 2)
        throw std::domain_error("coverage_probability: requires n_beams >= 2");
    const double n = static_cast<double>(layout.n_beams);
    const double frac = n * layout.beam_width / kTwoPi; // N*theta / 2*pi
    return frac + (1.0 - frac) * (0.5 * (1.0 - 1.0 / n) + layout.beam_width / (2.0 * kTwoPi));
}

double coverage_probability(const BeamLayout& layout)
{
    return std::clamp(coverage_probability_raw(layout), 0.0, 1.0);
}

double min_crossing_distance(Point2D pos, const BeamLayout& layout, int beam_index)
{
    layout.validate();
    if (pos.norm() == 0.0)
        throw std::domain_error("min_crossing_distance: position coincides with the SBS");
    const double t0 = layout.leading_azimuth(beam_index);
    return std::abs(pos.x * std::sin(t0) - pos.y * std::cos(t0));
}

double crossing_length(Point2D pos, double ray_direction, const BeamLayout& layout,
                       int beam_index)
{
    layout.validate();
    const double t0 = layout.leading_azimuth(beam_index);
    // r_c = (y - x tan t0) / (tan t0 cos tu - sin tu), rewritten with the
    // cos(t0) factor folded in so vertical edges are regular:
    const double num = pos.y * std::cos(t0) - pos.x * std::sin(t0);
    const double den = std::sin(t0 - ray_direction);
    if (std::abs(den) < 1e-15)
        throw std::domain_error("crossing_length: ray parallel to the beam leading edge");
    const double rc = num / den;
    if (!(rc > 0.0))
        throw std::domain_error("crossing_length: ray does not reach the leading edge");
    return rc;
}

double chord_length_pdf(double d, double cell_radius)
{
    if (!(cell_radius > 0.0))
        throw std::domain_error("chord_length_pdf: cell_radius must be positive");
    if (d < 0.0 || d >= 2.0 * cell_radius)
        throw std::domain_error("chord_length_pdf: d must be in [0, 2a)");
    const double a = cell_radius;
    return 2.0 / (std::numbers::pi * std::sqrt(4.0 * a * a - d * d));
}

double circle_entry_crossing(Point2D entry, double direction, double cell_radius)
{
    if (!(cell_radius > 0.0))
        throw std::domain_error("circle_entry_crossing: cell_radius must be positive");
    // |entry + t*d| = a with |entry| = a gives t = -2 (entry . d).
    const double dot = entry.x * std::cos(direction) + entry.y * std::sin(direction);
    const double t = -2.0 * dot;
    return t > 0.0 ? t : 0.0;
}

} // namespace mmho
