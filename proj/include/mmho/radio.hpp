#ifndef MMHO_RADIO_HPP
#define MMHO_RADIO_HPP

#include <cmath>
#include <stdexcept>
#include <string>

namespace mmho {

inline constexpr double kSpeedOfLight = 299792458.0; // m/s

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

enum class BandTag { MmwLos, MmwNlos, Microwave };

/// Large-scale path loss parameters for one band / propagation condition.
struct PathLossParams {
    double carrier_frequency = 73e9;  // f_c, Hz
    double reference_distance = 1.0;  // r_0, m
    double exponent = 2.0;            // alpha
    double shadowing_std = 0.0;       // xi, dB
    BandTag band_tag = BandTag::MmwLos;

    double wavelength() const { return kSpeedOfLight / carrier_frequency; }
    void validate() const;
};

/// Sectorized antenna pattern: main lobe of width theta_m, flat side lobes.
struct AntennaPattern {
    double main_lobe_gain = 18.0; // G_max, dB
    double side_lobe_gain = -2.0; // G_min, dB
    double main_lobe_width = 0.0; // theta_m, radians

    void validate() const;
};

/// Everything needed to turn a distance into an SNR / rate on one link.
/// combined_gain is the overall transmit-receive gain psi (linear);
/// beta = (lambda / 4 pi r_0)^2 r_0^alpha (linear).
struct LinkBudget {
    double tx_power_dbm = 27.0;    // P_t
    double bandwidth = 5e9;        // w, Hz
    double noise_psd_dbm_hz = -174.0; // N_0
    double combined_gain = 0.0;    // psi, linear
    double beta = 0.0;             // linear

    double tx_power_mw() const { return db_to_linear(tx_power_dbm); }
    double noise_mw() const { return bandwidth * db_to_linear(noise_psd_dbm_hz); }
    void validate() const;
};

/// Builds a LinkBudget with beta derived from the path loss parameters and
/// psi from a combined tx+rx gain in dB.
LinkBudget make_link_budget(double tx_power_dbm, double bandwidth, double noise_psd_dbm_hz,
                            double combined_gain_db, const PathLossParams& params);

/// Path loss in dB at `distance`, log-distance model with shadowing.
/// `shadowing_sample` is the chi draw in dB; pass 0 for deterministic use.
/// Requires distance >= reference_distance.
double path_loss(double distance, const PathLossParams& params, double shadowing_sample);

/// Sectorized gain: main lobe iff |offset_angle| < main_lobe_width (strict).
double antenna_gain(double offset_angle, const AntennaPattern& pattern);

/// Noise-limited linear SNR: beta * P_t * psi * r^-alpha / (w * N_0).
double snr(double distance, const LinkBudget& link, const PathLossParams& params);

/// Shannon rate w * log2(1 + SNR) in bits/s.
double instantaneous_rate(double distance, const LinkBudget& link, const PathLossParams& params);

/// Received signal strength in dBm: P_t + gains - path loss.
double rss_dbm(double distance, const LinkBudget& link, const PathLossParams& params,
               double shadowing_sample, double tx_gain_db, double rx_gain_db);

} // namespace mmho

#endif
