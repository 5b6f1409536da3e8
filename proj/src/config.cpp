#include "mmho/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace mmho {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string join(const std::vector<double>& v)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i)
        os << (i ? "," : "") << v[i];
    return os.str();
}

enum class Origin { Reference, Setup, Invented };

struct KeySpec {
    std::string key;
    Origin origin;
    std::function<void(ExperimentConfig&, const std::string&)> set;
    std::function<std::string(const ExperimentConfig&)> get;
};

double parse_double(const std::string& key, const std::string& v)
{
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size() || !std::isfinite(d))
            throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw std::invalid_argument(key + ": not a number: '" + v + "'");
    }
}

long long parse_int(const std::string& key, const std::string& v)
{
    const double d = parse_double(key, v);
    if (d != std::floor(d))
        throw std::invalid_argument(key + ": not an integer: '" + v + "'");
    return static_cast<long long>(d);
}

bool parse_bool(const std::string& key, const std::string& v)
{
    if (v == "true" || v == "on" || v == "1")
        return true;
    if (v == "false" || v == "off" || v == "0")
        return false;
    throw std::invalid_argument(key + ": not a boolean: '" + v + "'");
}

std::vector<double> parse_list(const std::string& key, const std::string& v)
{
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty())
            out.push_back(parse_double(key, item));
    }
    if (out.empty())
        throw std::invalid_argument(key + ": empty list");
    return out;
}

std::string fmt(double d)
{
    std::ostringstream os;
    os << d;
    return os.str();
}

#define DBL_KEY(name, field, origin)                                                   \
    {name, origin, [](ExperimentConfig& c, const std::string& v) {                     \
         c.field = parse_double(name, v);                                              \
     },                                                                                \
     [](const ExperimentConfig& c) { return fmt(c.field); }}
#define INT_KEY(name, field, origin)                                                   \
    {name, origin, [](ExperimentConfig& c, const std::string& v) {                     \
         c.field = static_cast<decltype(c.field)>(parse_int(name, v));                 \
     },                                                                                \
     [](const ExperimentConfig& c) { return fmt(static_cast<double>(c.field)); }}
#define BOOL_KEY(name, field, origin)                                                  \
    {name, origin, [](ExperimentConfig& c, const std::string& v) {                     \
         c.field = parse_bool(name, v);                                                \
     },                                                                                \
     [](const ExperimentConfig& c) { return c.field ? std::string("true")              \
                                                    : std::string("false"); }}
#define LIST_KEY(name, field, origin)                                                  \
    {name, origin, [](ExperimentConfig& c, const std::string& v) {                     \
         c.field = parse_list(name, v);                                                \
     },                                                                                \
     [](const ExperimentConfig& c) { return join(c.field); }}

const std::vector<KeySpec>& key_table()
{
    static const std::vector<KeySpec> table = {
        INT_KEY("topology.sbs_count", sbs_count, Origin::Reference),
        DBL_KEY("topology.area_radius_m", area_radius_m, Origin::Setup),
        DBL_KEY("topology.min_intercell_distance_m", min_intercell_distance_m,
                Origin::Setup),
        INT_KEY("beam.count", beam_count, Origin::Reference),
        DBL_KEY("beam.width_deg", beam_width_deg, Origin::Reference),
        DBL_KEY("beam.cell_radius_m", beam_cell_radius_m, Origin::Invented),
        DBL_KEY("mmw.carrier_hz", mmw_carrier_hz, Origin::Reference),
        DBL_KEY("mmw.bandwidth_hz", mmw_bandwidth_hz, Origin::Reference),
        DBL_KEY("mmw.tx_power_dbm", mmw_tx_power_dbm, Origin::Reference),
        DBL_KEY("mmw.noise_psd_dbm_hz", mmw_noise_psd_dbm_hz, Origin::Reference),
        DBL_KEY("mmw.reference_distance_m", mmw_reference_distance_m, Origin::Reference),
        DBL_KEY("mmw.alpha_los", mmw_alpha_los, Origin::Reference),
        DBL_KEY("mmw.alpha_nlos", mmw_alpha_nlos, Origin::Reference),
        DBL_KEY("mmw.shadowing_los_db", mmw_shadowing_los_db, Origin::Invented),
        DBL_KEY("mmw.shadowing_nlos_db", mmw_shadowing_nlos_db, Origin::Invented),
        DBL_KEY("mmw.gain_max_db", mmw_gain_max_db, Origin::Reference),
        DBL_KEY("mmw.gain_min_db", mmw_gain_min_db, Origin::Reference),
        DBL_KEY("mmw.main_lobe_width_deg", mmw_main_lobe_width_deg, Origin::Reference),
        DBL_KEY("mmw.combined_gain_los_db", mmw_combined_gain_los_db, Origin::Setup),
        DBL_KEY("mmw.combined_gain_nlos_db", mmw_combined_gain_nlos_db, Origin::Invented),
        DBL_KEY("mmw.p_los", mmw_p_los, Origin::Invented),
        DBL_KEY("uw.carrier_hz", uw_carrier_hz, Origin::Invented),
        DBL_KEY("uw.alpha", uw_alpha, Origin::Invented),
        DBL_KEY("uw.shadowing_db", uw_shadowing_db, Origin::Invented),
        DBL_KEY("uw.reference_distance_m", uw_reference_distance_m, Origin::Invented),
        DBL_KEY("uw.sbs_tx_power_dbm", uw_sbs_tx_power_dbm, Origin::Invented),
        DBL_KEY("uw.mbs_tx_power_dbm", uw_mbs_tx_power_dbm, Origin::Invented),
        DBL_KEY("traffic.segment_bits", segment_bits, Origin::Reference),
        DBL_KEY("traffic.play_rate_per_s", play_rate_per_s, Origin::Reference),
        DBL_KEY("traffic.cache_bits", cache_bits, Origin::Invented),
        DBL_KEY("ho.search_period_s", search_period_s, Origin::Invented),
        DBL_KEY("ho.ttt_s", ttt_s, Origin::Invented),
        DBL_KEY("ho.hysteresis_db", hysteresis_db, Origin::Invented),
        DBL_KEY("ho.mts_s", mts_s, Origin::Reference),
        DBL_KEY("ho.filter_window_s", filter_window_s, Origin::Invented),
        DBL_KEY("ho.serving_threshold_dbm", serving_threshold_dbm, Origin::Setup),
        DBL_KEY("sim.dt_s", dt_s, Origin::Invented),
        DBL_KEY("sim.frame_s", frame_s, Origin::Invented),
        INT_KEY("sim.mues", mues, Origin::Invented),
        DBL_KEY("sim.rss_cutoff_m", rss_cutoff_m, Origin::Invented),
        BOOL_KEY("sim.caching_enabled", caching_enabled, Origin::Invented),
        LIST_KEY("speeds_kmh", speeds_kmh, Origin::Reference),
        INT_KEY("run.trials", trials, Origin::Invented),
        INT_KEY("run.seed", seed, Origin::Invented),
        DBL_KEY("hof.cell_radius_m", hof_cell_radius_m, Origin::Invented),
        DBL_KEY("hof.mean_intercell_distance_m", hof_mean_intercell_distance_m,
                Origin::Invented),
        LIST_KEY("fig3.r_list_m", fig3_r_list_m, Origin::Invented),
        INT_KEY("fig3.samples", fig3_samples, Origin::Invented),
        INT_KEY("fig3.t_points", fig3_t_points, Origin::Invented),
        DBL_KEY("fig3.t_max_s", fig3_t_max_s, Origin::Invented),
        DBL_KEY("fig5.r_min_m", fig5_r_min_m, Origin::Invented),
        DBL_KEY("fig5.r_max_m", fig5_r_max_m, Origin::Invented),
        DBL_KEY("fig5.r_step_m", fig5_r_step_m, Origin::Invented),
        LIST_KEY("fig5.theta_u_deg", fig5_theta_u_deg, Origin::Invented),
    };
    return table;
}

#undef DBL_KEY
#undef INT_KEY
#undef BOOL_KEY
#undef LIST_KEY

std::size_t edit_distance(const std::string& a, const std::string& b)
{
    std::vector<std::size_t> row(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j)
        row[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        std::size_t prev = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t cur = row[j];
            row[j] = std::min({row[j] + 1, row[j - 1] + 1,
                               prev + (a[i - 1] == b[j - 1] ? 0 : 1)});
            prev = cur;
        }
    }
    return row[b.size()];
}

std::string nearest_key(const std::string& key)
{
    std::string best;
    std::size_t best_d = std::string::npos;
    for (const auto& spec : key_table()) {
        const std::size_t d = edit_distance(key, spec.key);
        if (d < best_d) {
            best_d = d;
            best = spec.key;
        }
    }
    return best;
}

} // namespace

ConfigError::ConfigError(std::vector<std::string> errors)
    : std::runtime_error([&] {
          std::string msg = "configuration invalid:";
          for (const auto& e : errors)
              msg += "\n  - " + e;
          return msg;
      }()),
      errors_(std::move(errors))
{
}

BeamLayout ExperimentConfig::beam_layout(double base_azimuth) const
{
    BeamLayout b;
    b.n_beams = beam_count;
    b.beam_width = deg2rad(beam_width_deg);
    b.base_azimuth = wrap_angle(base_azimuth);
    b.cell_radius = beam_cell_radius_m;
    return b;
}

PathLossParams ExperimentConfig::mmw_params(bool los) const
{
    PathLossParams p;
    p.carrier_frequency = mmw_carrier_hz;
    p.reference_distance = mmw_reference_distance_m;
    p.exponent = los ? mmw_alpha_los : mmw_alpha_nlos;
    p.shadowing_std = los ? mmw_shadowing_los_db : mmw_shadowing_nlos_db;
    p.band_tag = los ? BandTag::MmwLos : BandTag::MmwNlos;
    return p;
}

PathLossParams ExperimentConfig::uw_params() const
{
    PathLossParams p;
    p.carrier_frequency = uw_carrier_hz;
    p.reference_distance = uw_reference_distance_m;
    p.exponent = uw_alpha;
    p.shadowing_std = uw_shadowing_db;
    p.band_tag = BandTag::Microwave;
    return p;
}

LinkBudget ExperimentConfig::mmw_link(bool los) const
{
    return make_link_budget(mmw_tx_power_dbm, mmw_bandwidth_hz, mmw_noise_psd_dbm_hz,
                            los ? mmw_combined_gain_los_db : mmw_combined_gain_nlos_db,
                            mmw_params(los));
}

TrafficModel ExperimentConfig::traffic() const
{
    return {segment_bits, play_rate_per_s, cache_bits};
}

HofModel ExperimentConfig::hof_model() const
{
    return {hof_cell_radius_m, mts_s, hof_mean_intercell_distance_m};
}

std::vector<std::string> ExperimentConfig::check() const
{
    std::vector<std::string> errors;
    const auto positive = [&](double v, const char* key) {
        if (!(v > 0.0))
            errors.push_back(std::string(key) + " must be positive");
    };
    if (sbs_count < 1)
        errors.push_back("topology.sbs_count must be >= 1");
    positive(area_radius_m, "topology.area_radius_m");
    positive(min_intercell_distance_m, "topology.min_intercell_distance_m");
    if (beam_count < 1)
        errors.push_back("beam.count must be >= 1");
    positive(beam_width_deg, "beam.width_deg");
    if (beam_count * deg2rad(beam_width_deg) > kTwoPi)
        errors.push_back("beam.count * beam.width_deg exceeds a full circle");
    positive(beam_cell_radius_m, "beam.cell_radius_m");
    positive(mmw_carrier_hz, "mmw.carrier_hz");
    positive(mmw_bandwidth_hz, "mmw.bandwidth_hz");
    positive(mmw_reference_distance_m, "mmw.reference_distance_m");
    positive(mmw_alpha_los, "mmw.alpha_los");
    positive(mmw_alpha_nlos, "mmw.alpha_nlos");
    if (mmw_shadowing_los_db < 0.0 || mmw_shadowing_nlos_db < 0.0)
        errors.push_back("mmw shadowing std must be >= 0");
    if (mmw_p_los < 0.0 || mmw_p_los > 1.0)
        errors.push_back("mmw.p_los must be in [0, 1]");
    if (mmw_gain_max_db < mmw_gain_min_db)
        errors.push_back("mmw.gain_max_db must be >= mmw.gain_min_db");
    positive(mmw_main_lobe_width_deg, "mmw.main_lobe_width_deg");
    positive(uw_carrier_hz, "uw.carrier_hz");
    positive(uw_alpha, "uw.alpha");
    if (uw_shadowing_db < 0.0)
        errors.push_back("uw.shadowing_db must be >= 0");
    positive(uw_reference_distance_m, "uw.reference_distance_m");
    positive(segment_bits, "traffic.segment_bits");
    positive(play_rate_per_s, "traffic.play_rate_per_s");
    positive(cache_bits, "traffic.cache_bits");
    if (std::fmod(cache_bits, segment_bits) != 0.0)
        errors.push_back("traffic.cache_bits must be an integer multiple of segment_bits");
    positive(search_period_s, "ho.search_period_s");
    positive(ttt_s, "ho.ttt_s");
    if (hysteresis_db < 0.0)
        errors.push_back("ho.hysteresis_db must be >= 0");
    positive(mts_s, "ho.mts_s");
    positive(filter_window_s, "ho.filter_window_s");
    positive(dt_s, "sim.dt_s");
    if (dt_s > std::min(search_period_s, ttt_s) / 10.0 + 1e-12)
        errors.push_back("sim.dt_s must be <= min(ho.search_period_s, ho.ttt_s) / 10");
    if (frame_s < 0.0)
        errors.push_back("sim.frame_s must be >= 0");
    if (mues < 1)
        errors.push_back("sim.mues must be >= 1");
    positive(rss_cutoff_m, "sim.rss_cutoff_m");
    if (speeds_kmh.empty())
        errors.push_back("speeds_kmh must be non-empty");
    for (double v : speeds_kmh)
        if (!(v > 0.0))
            errors.push_back("speeds_kmh entries must be positive");
    if (trials < 1)
        errors.push_back("run.trials must be >= 1");
    positive(hof_cell_radius_m, "hof.cell_radius_m");
    positive(hof_mean_intercell_distance_m, "hof.mean_intercell_distance_m");
    for (double r : fig3_r_list_m)
        if (!(r > 0.0))
            errors.push_back("fig3.r_list_m entries must be positive");
    if (fig3_samples < 1)
        errors.push_back("fig3.samples must be >= 1");
    if (fig3_t_points < 2)
        errors.push_back("fig3.t_points must be >= 2");
    positive(fig3_t_max_s, "fig3.t_max_s");
    positive(fig5_r_min_m, "fig5.r_min_m");
    if (fig5_r_max_m < fig5_r_min_m)
        errors.push_back("fig5.r_max_m must be >= fig5.r_min_m");
    positive(fig5_r_step_m, "fig5.r_step_m");
    for (double t : fig5_theta_u_deg) {
        if (!(t > beam_width_deg) || !(t < 180.0))
            errors.push_back("fig5.theta_u_deg entries must be in (beam.width_deg, 180)");
    }
    return errors;
}

std::string ExperimentConfig::canonical_text() const
{
    std::map<std::string, std::string> entries;
    for (const auto& spec : key_table())
        entries[spec.key] = spec.get(*this);
    std::ostringstream os;
    for (const auto& [k, v] : entries)
        os << k << " = " << v << "\n";
    return os.str();
}

std::uint64_t ExperimentConfig::hash() const
{
    const std::string text = canonical_text();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string ExperimentConfig::describe() const
{
    std::ostringstream os;
    for (const auto& spec : key_table()) {
        os << spec.key << " = " << spec.get(*this);
        switch (spec.origin) {
        case Origin::Reference:
            break; // reference parameter-table value
        case Origin::Setup:
            os << "   # reference setup";
            break;
        case Origin::Invented:
            os << "   # default chosen by this tool";
            break;
        }
        os << "\n";
    }
    return os.str();
}

ExperimentConfig parse_config(const std::string& text)
{
    ExperimentConfig cfg;
    std::vector<std::string> errors;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash_pos = line.find('#');
        if (hash_pos != std::string::npos)
            line = line.substr(0, hash_pos);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            errors.push_back("line " + std::to_string(lineno) + ": expected key = value");
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto& table = key_table();
        const auto it = std::find_if(table.begin(), table.end(),
                                     [&](const KeySpec& s) { return s.key == key; });
        if (it == table.end()) {
            errors.push_back("unknown key '" + key + "' (did you mean '" +
                             nearest_key(key) + "'?)");
            continue;
        }
        try {
            it->set(cfg, value);
        } catch (const std::exception& e) {
            errors.push_back(e.what());
        }
    }
    for (auto& e : cfg.check())
        errors.push_back(std::move(e));
    if (!errors.empty())
        throw ConfigError(std::move(errors));
    return cfg;
}

ExperimentConfig load_config(const std::string& path)
{
    if (path.empty())
        return parse_config("");
    std::ifstream in(path);
    if (!in)
        throw ConfigError({"cannot open config file: " + path});
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

} // namespace mmho
