#include "mmho/analysis.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace mmho {

namespace {
constexpr double kPi = std::numbers::pi;

using Quadrature = boost::math::quadrature::gauss_kronrod<double, 15>;
} // namespace

void CachingScenario::validate() const
{
    beam.validate();
    link.validate();
    channel.validate();
    if (!(initial_distance > 0.0))
        throw std::domain_error("CachingScenario: initial_distance must be positive");
    if (!(speed > 0.0))
        throw std::domain_error("CachingScenario: speed must be positive");
    const double th = theta_hat();
    if (!(th > 0.0) || !(th < kPi))
        throw std::domain_error("CachingScenario: theta_hat must lie in (0, pi)");
}

void TrafficModel::validate() const
{
    if (!(segment_bits > 0.0) || !(play_rate > 0.0) || !(cache_bits > 0.0))
        throw std::domain_error("TrafficModel: all fields must be positive");
}

void HofModel::validate() const
{
    if (!(cell_radius > 0.0) || !(mts > 0.0) || !(mean_intercell_distance > 0.0))
        throw std::domain_error("HofModel: all fields must be positive");
}

CdfValue caching_duration_cdf_diag(double t0, const CachingScenario& scenario)
{
    scenario.validate();
    if (t0 < 0.0)
        throw std::domain_error("caching_duration_cdf: t0 must be >= 0");

    const double rmin = scenario.min_distance();
    const double reach = scenario.speed * t0;
    if (reach <= rmin)
        return {0.0, 0.0};

    const double theta_k = scenario.beam.beam_width;
    const double a1 = std::acos(rmin / reach);
    const double a2 = std::acos(std::min(1.0, rmin / scenario.initial_distance));
    const double raw = (a1 + std::min(a1, a2)) / (kPi - theta_k);
    return {std::clamp(raw, 0.0, 1.0), raw};
}

double caching_duration_cdf(double t0, const CachingScenario& scenario)
{
    return caching_duration_cdf_diag(t0, scenario).value;
}

double caching_duration_quantile(double p, const CachingScenario& scenario)
{
    scenario.validate();
    if (p < 0.0 || p >= 1.0)
        throw std::domain_error("caching_duration_quantile: p must be in [0, 1)");
    const double theta_k = scenario.beam.beam_width;
    const double width = kPi - theta_k;
    // Invert the two arccos branches. For small p both terms equal
    // arccos(r_min / v t0); past the branch point the second term is pinned
    // at arccos(r_min / r).
    const double branch = (kPi - 2.0 * theta_k) / width;
    const double s = (p <= branch) ? 0.5 * (kPi - p * width) : width * (1.0 - p);
    return scenario.min_distance() / (scenario.speed * std::sin(s));
}

namespace {

/// Shared pieces of the average-rate expressions.
struct RateParts {
    double theta_hat;
    double delta1;
    double r_far;   // r_{u,k}(x'): SBS distance at the leading edge
    double r_cross; // r_c: traversed distance
    double coverage;
};

RateParts rate_parts(const CachingScenario& s)
{
    s.validate();
    const double th = s.theta_hat();
    const double theta_k = s.beam.beam_width;
    if (!(th > theta_k))
        throw std::domain_error("average_caching_rate: theta_hat must exceed beam_width");
    RateParts p;
    p.theta_hat = th;
    const double r = s.initial_distance;
    p.delta1 = s.link.beta * s.link.tx_power_mw() * s.link.combined_gain *
               std::pow(r * std::sin(th), -s.channel.exponent) / s.link.noise_mw();
    p.r_far = r * std::sin(th) / std::sin(th - theta_k);
    p.r_cross = r * std::sin(theta_k) / std::sin(th - theta_k);
    p.coverage = coverage_probability(s.beam);
    return p;
}

} // namespace

double average_caching_rate_closed_form(const CachingScenario& scenario)
{
    if (std::abs(scenario.channel.exponent - 2.0) > 1e-9)
        throw std::domain_error("average_caching_rate_closed_form: requires alpha = 2");
    const RateParts p = rate_parts(scenario);
    const double theta_k = scenario.beam.beam_width;
    const double r = scenario.initial_distance;
    const double d1 = p.delta1;
    const double d2 =
        scenario.link.bandwidth * r * std::sin(p.theta_hat) * p.coverage / p.r_cross;
    const auto antiderivative = [d1](double f) {
        return 2.0 * std::sqrt(d1) * std::atan(std::sqrt(d1) * f) -
               std::log1p(d1 * f * f) / f;
    };
    return d2 / std::log(2.0) *
           (antiderivative(std::sin(p.theta_hat)) -
            antiderivative(std::sin(p.theta_hat - theta_k)));
}

double average_caching_rate_quadrature(const CachingScenario& scenario)
{
    const RateParts p = rate_parts(scenario);
    const double alpha = scenario.channel.exponent;
    const double k = scenario.link.beta * scenario.link.tx_power_mw() *
                     scenario.link.combined_gain / scenario.link.noise_mw();
    const double w = scenario.link.bandwidth;
    const auto integrand = [&](double x) { return w * std::log2(1.0 + k * std::pow(x, -alpha)); };
    double error = 0.0;
    const double value = Quadrature::integrate(integrand, scenario.initial_distance, p.r_far,
                                               15, 1e-12, &error);
    if (!std::isfinite(value))
        throw std::runtime_error("average_caching_rate_quadrature: integral did not converge");
    return p.coverage * value / p.r_cross;
}

double average_caching_rate(const CachingScenario& scenario)
{
    if (std::abs(scenario.channel.exponent - 2.0) <= 1e-9)
        return average_caching_rate_closed_form(scenario);
    return average_caching_rate_quadrature(scenario);
}

long long cached_segments(double rate, double duration, const TrafficModel& traffic)
{
    traffic.validate();
    if (rate < 0.0 || duration < 0.0)
        throw std::domain_error("cached_segments: rate and duration must be >= 0");
    const double cap = std::floor(traffic.cache_bits / traffic.segment_bits);
    const double filled = rate * duration / traffic.segment_bits;
    if (filled >= cap)
        return static_cast<long long>(cap);
    return static_cast<long long>(std::floor(filled));
}

double cache_distance(long long segments, double speed, const TrafficModel& traffic)
{
    traffic.validate();
    return static_cast<double>(segments) / traffic.play_rate * speed;
}

double expected_caching_duration(const CachingScenario& scenario)
{
    const double t_hi = caching_duration_quantile(1.0 - 1e-9, scenario);
    const double t_min = scenario.min_distance() / scenario.speed;
    // The survival function decays like c/t, so the truncated mean spreads
    // logarithmically over [t_min, t_hi]; substitute t = t_min * e^u to give
    // the quadrature a well-behaved integrand. Below t_min survival is 1.
    const auto survival_log = [&](double u) {
        const double t = t_min * std::exp(u);
        return (1.0 - caching_duration_cdf(t, scenario)) * t;
    };
    double error = 0.0;
    const double value = Quadrature::integrate(survival_log, 0.0, std::log(t_hi / t_min),
                                               15, 1e-12, &error);
    if (!std::isfinite(value))
        throw std::runtime_error("expected_caching_duration: integral did not converge");
    return t_min + value;
}

double expected_cache_distance(const CachingScenario& scenario, const TrafficModel& traffic,
                               int quantile_samples)
{
    traffic.validate();
    if (quantile_samples < 1)
        throw std::domain_error("expected_cache_distance: need at least one sample");
    const double rate = average_caching_rate(scenario);
    double total = 0.0;
    for (int i = 0; i < quantile_samples; ++i) {
        const double p = (i + 0.5) / quantile_samples;
        const double t = caching_duration_quantile(p, scenario);
        const long long m = cached_segments(std::max(0.0, rate), t, traffic);
        total += cache_distance(m, scenario.speed, traffic);
    }
    return total / quantile_samples;
}

long long ho_skip_factor(double expected_distance, const HofModel& model)
{
    model.validate();
    if (expected_distance < 0.0)
        return 0;
    return static_cast<long long>(std::floor(expected_distance / model.mean_intercell_distance));
}

HofProbability hof_probability(double speed, const HofModel& model)
{
    model.validate();
    if (speed < 0.0)
        throw std::domain_error("hof_probability: speed must be >= 0");
    const double x = speed * model.mts / (2.0 * model.cell_radius);
    if (x > 1.0)
        return {1.0, true};
    return {2.0 / kPi * std::asin(x), false};
}

} // namespace mmho
