#ifndef MMHO_CONFIG_HPP
#define MMHO_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mmho/analysis.hpp"
#include "mmho/geometry.hpp"
#include "mmho/radio.hpp"

namespace mmho {

/// Aggregated configuration failure: one message per violation.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(std::vector<std::string> errors);
    const std::vector<std::string>& errors() const { return errors_; }

  private:
    std::vector<std::string> errors_;
};

/// Full experiment configuration. Defaults reproduce the reference setup;
/// any field can be overridden from a key = value config file.
struct ExperimentConfig {
    // topology
    int sbs_count = 50;
    double area_radius_m = 500.0;
    double min_intercell_distance_m = 30.0;

    // mmW beams
    int beam_count = 3;
    double beam_width_deg = 10.0;
    double beam_cell_radius_m = 30.0;

    // mmW link
    double mmw_carrier_hz = 73e9;
    double mmw_bandwidth_hz = 5e9;
    double mmw_tx_power_dbm = 27.0; // middle of the 20/27/30 dBm SBS set
    double mmw_noise_psd_dbm_hz = -174.0;
    double mmw_reference_distance_m = 1.0;
    double mmw_alpha_los = 2.0;
    double mmw_alpha_nlos = 3.5;
    double mmw_shadowing_los_db = 4.9;
    double mmw_shadowing_nlos_db = 7.6;
    double mmw_gain_max_db = 18.0;
    double mmw_gain_min_db = -2.0;
    double mmw_main_lobe_width_deg = 10.0;
    double mmw_combined_gain_los_db = 36.0;  // G_max on both ends
    double mmw_combined_gain_nlos_db = 16.0; // blockage breaks rx alignment
    double mmw_p_los = 1.0; // Bernoulli LoS probability per SBS link

    // microwave (association / control plane)
    double uw_carrier_hz = 2e9;
    double uw_alpha = 3.5;
    double uw_shadowing_db = 4.0;
    double uw_reference_distance_m = 1.0;
    double uw_sbs_tx_power_dbm = 30.0;
    double uw_mbs_tx_power_dbm = 46.0;

    // traffic
    double segment_bits = 1e6;
    double play_rate_per_s = 1000.0;
    double cache_bits = 32e9;

    // handover
    double search_period_s = 0.2;
    double ttt_s = 0.16;
    double hysteresis_db = 3.0;
    double mts_s = 1.0;
    double filter_window_s = 0.2;
    double serving_threshold_dbm = -80.0;

    // simulation
    double dt_s = 0.01;
    double frame_s = 60.0;
    int mues = 2;
    double rss_cutoff_m = 250.0;
    bool caching_enabled = true;
    std::vector<double> speeds_kmh = {3.0, 10.0, 30.0, 45.0, 60.0};

    // run control
    int trials = 200;
    std::uint64_t seed = 1;

    // analytic HOF model
    double hof_cell_radius_m = 30.0;
    double hof_mean_intercell_distance_m = 60.0;

    // figure sweeps
    std::vector<double> fig3_r_list_m = {5.0, 10.0, 20.0};
    long long fig3_samples = 1000000;
    int fig3_t_points = 60;
    double fig3_t_max_s = 5.0;
    double fig5_r_min_m = 20.0;
    double fig5_r_max_m = 100.0;
    double fig5_r_step_m = 10.0;
    std::vector<double> fig5_theta_u_deg = {30.0, 45.0, 60.0};

    // --- derived builders ---
    BeamLayout beam_layout(double base_azimuth = 0.0) const;
    PathLossParams mmw_params(bool los) const;
    PathLossParams uw_params() const;
    LinkBudget mmw_link(bool los) const;
    TrafficModel traffic() const;
    HofModel hof_model() const;

    /// Semantic validation; returns the list of violations (empty when valid).
    std::vector<std::string> check() const;

    /// Canonical "key = value" rendering of every field, sorted by key.
    std::string canonical_text() const;

    /// FNV-1a hash of the canonical text, for report headers.
    std::uint64_t hash() const;

    /// Echo with provenance labels for each default that is not taken from
    /// the reference parameter table.
    std::string describe() const;
};

/// Parses config text (key = value lines, '#' comments) over the defaults.
/// Unknown keys, malformed values, and semantic violations are aggregated
/// into a single ConfigError.
ExperimentConfig parse_config(const std::string& text);

/// Convenience: read a file and parse it. An empty path yields the defaults.
ExperimentConfig load_config(const std::string& path);

} // namespace mmho

#endif
