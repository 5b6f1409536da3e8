#include "mmho/radio.hpp"

#include <cmath>
#include <numbers>

namespace mmho {

void PathLossParams::validate() const
{
    if (!(carrier_frequency > 0.0))
        throw std::domain_error("PathLossParams: carrier_frequency must be positive");
    if (!(reference_distance > 0.0))
        throw std::domain_error("PathLossParams: reference_distance must be positive");
    if (!(exponent > 0.0))
        throw std::domain_error("PathLossParams: exponent must be positive");
    if (shadowing_std < 0.0)
        throw std::domain_error("PathLossParams: shadowing_std must be >= 0");
}

void AntennaPattern::validate() const
{
    if (main_lobe_gain < side_lobe_gain)
        throw std::domain_error("AntennaPattern: main_lobe_gain must be >= side_lobe_gain");
    if (!(main_lobe_width > 0.0) || !(main_lobe_width < 2.0 * std::numbers::pi))
        throw std::domain_error("AntennaPattern: main_lobe_width must be in (0, 2*pi)");
}

void LinkBudget::validate() const
{
    if (!(bandwidth > 0.0))
        throw std::domain_error("LinkBudget: bandwidth must be positive");
    if (!(beta > 0.0))
        throw std::domain_error("LinkBudget: beta must be positive");
}

LinkBudget make_link_budget(double tx_power_dbm, double bandwidth, double noise_psd_dbm_hz,
                            double combined_gain_db, const PathLossParams& params)
{
    params.validate();
    LinkBudget link;
    link.tx_power_dbm = tx_power_dbm;
    link.bandwidth = bandwidth;
    link.noise_psd_dbm_hz = noise_psd_dbm_hz;
    link.combined_gain = db_to_linear(combined_gain_db);
    const double lam = params.wavelength();
    const double r0 = params.reference_distance;
    link.beta = std::pow(lam / (4.0 * std::numbers::pi * r0), 2.0) *
                std::pow(r0, params.exponent);
    link.validate();
    return link;
}

double path_loss(double distance, const PathLossParams& params, double shadowing_sample)
{
    params.validate();
    if (distance < params.reference_distance)
        throw std::domain_error("path_loss: distance below reference_distance");
    const double lam = params.wavelength();
    const double r0 = params.reference_distance;
    return 20.0 * std::log10(4.0 * std::numbers::pi * r0 / lam) +
           10.0 * params.exponent * std::log10(distance / r0) + shadowing_sample;
}

double antenna_gain(double offset_angle, const AntennaPattern& pattern)
{
    return std::abs(offset_angle) < pattern.main_lobe_width ? pattern.main_lobe_gain
                                                            : pattern.side_lobe_gain;
}

double snr(double distance, const LinkBudget& link, const PathLossParams& params)
{
    link.validate();
    params.validate();
    if (distance < params.reference_distance)
        throw std::domain_error("snr: distance below reference_distance");
    return link.beta * link.tx_power_mw() * link.combined_gain *
           std::pow(distance, -params.exponent) / link.noise_mw();
}

double instantaneous_rate(double distance, const LinkBudget& link, const PathLossParams& params)
{
    return link.bandwidth * std::log2(1.0 + snr(distance, link, params));
}

double rss_dbm(double distance, const LinkBudget& link, const PathLossParams& params,
               double shadowing_sample, double tx_gain_db, double rx_gain_db)
{
    return link.tx_power_dbm + tx_gain_db + rx_gain_db -
           path_loss(distance, params, shadowing_sample);
}

} // namespace mmho
