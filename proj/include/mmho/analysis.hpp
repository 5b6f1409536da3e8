#ifndef MMHO_ANALYSIS_HPP
#define MMHO_ANALYSIS_HPP

#include "mmho/geometry.hpp"
#include "mmho/radio.hpp"

namespace mmho {

/// One MUE crossing one mmW beam: the MUE starts on the beam's trailing edge
/// at distance `initial_distance` from the SBS and moves along `direction`.
/// theta_hat = theta_u - theta_0 + theta_k is the angle between the outward
/// radial at the start point and the travel direction; a crossing of the
/// leading edge exists for theta_hat in (theta_k, pi).
struct CachingScenario {
    double initial_distance = 20.0; // r_{u,k}(x), m
    double speed = 60.0 / 3.6;      // v_u, m/s
    double direction = 0.0;         // theta_u, radians
    BeamLayout beam;                // beam 0 is the beam being crossed
    LinkBudget link;
    PathLossParams channel;

    double theta_hat() const
    {
        return direction - beam.base_azimuth + beam.beam_width;
    }
    /// r_min: perpendicular distance from the start point to the leading edge.
    double min_distance() const { return initial_distance * std::sin(beam.beam_width); }
    /// r_c as a function of theta_hat.
    double crossing_distance() const
    {
        return initial_distance * std::sin(beam.beam_width) /
               std::sin(theta_hat() - beam.beam_width);
    }
    void validate() const;
};

/// Video traffic: fixed-size segments played back at a constant rate, stored
/// in a device cache of `cache_bits` capacity.
struct TrafficModel {
    double segment_bits = 1e6;  // B
    double play_rate = 1000.0;  // Q, segments/s
    double cache_bits = 32e9;   // Psi_u

    void validate() const;
};

/// Inputs of the handover-failure closed form.
struct HofModel {
    double cell_radius = 30.0;            // a, m
    double mts = 1.0;                     // t_MTS, s
    double mean_intercell_distance = 60.0; // l, m

    void validate() const;
};

struct CdfValue {
    double value = 0.0; // clamped to [0,1]
    double raw = 0.0;   // pre-clamp expression value
};

/// CDF of the caching duration t_c at t0 seconds, clamped to [0,1].
double caching_duration_cdf(double t0, const CachingScenario& scenario);

/// Same, returning the raw pre-clamp value alongside for diagnostics.
CdfValue caching_duration_cdf_diag(double t0, const CachingScenario& scenario);

/// Inverse of caching_duration_cdf (analytic), p in [0, 1).
double caching_duration_quantile(double p, const CachingScenario& scenario);

/// Average achievable caching rate (bits/s), including the coverage
/// probability factor. Uses the alpha = 2 closed form when applicable and
/// falls back to adaptive quadrature otherwise.
double average_caching_rate(const CachingScenario& scenario);

/// alpha = 2 closed form only; throws for other exponents.
double average_caching_rate_closed_form(const CachingScenario& scenario);

/// Numeric route: adaptive quadrature of the rate integral over the
/// SBS-distance coordinate, valid for any exponent.
double average_caching_rate_quadrature(const CachingScenario& scenario);

/// Number of segments cached in `duration` at `rate`:
/// min(floor(rate * duration / B), Psi / B).
long long cached_segments(double rate, double duration, const TrafficModel& traffic);

/// Distance traversable on cached playback: (M / Q) * v.
double cache_distance(long long segments, double speed, const TrafficModel& traffic);

/// E[t_c] as the integral of the survival function, truncated where the CDF
/// exceeds 1 - 1e-9. The untruncated integral diverges logarithmically, so
/// the reported value is tied to that documented cutoff.
double expected_caching_duration(const CachingScenario& scenario);

/// E[d_c]: expectation of the cache distance over the caching-duration
/// distribution, composed through the floor/min of the traffic model by
/// averaging over equally spaced quantiles of t_c.
double expected_cache_distance(const CachingScenario& scenario, const TrafficModel& traffic,
                               int quantile_samples = 100000);

/// zeta: number of SBSs traversable on cached content, floor(E[d_c] / l).
long long ho_skip_factor(double expected_distance, const HofModel& model);

struct HofProbability {
    double value = 0.0;
    bool saturated = false; // v * t_MTS exceeded the cell diameter
};

/// P(HOF) = (2/pi) * arcsin(v * t_MTS / 2a) for a random chord crossing.
HofProbability hof_probability(double speed, const HofModel& model);

} // namespace mmho

#endif
