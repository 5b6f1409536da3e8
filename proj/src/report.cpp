#include "mmho/report.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <cstdio>
#include <optional>
#include <ostream>
#include <stdexcept>

#include "mmho/analysis.hpp"
#include "mmho/rng.hpp"
#include "mmho/sim.hpp"

namespace mmho {

namespace {

void require_finite(double v, const char* what)
{
    if (!std::isfinite(v))
        throw std::runtime_error(std::string("numeric failure: non-finite ") + what);
}

void write_preamble(std::ostream& out, const ExperimentConfig& cfg)
{
    char hash[32];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(cfg.hash()));
    out << "# seed=" << cfg.seed << "\n";
    out << "# config_hash=" << hash << "\n";
    out << "# version=" << kToolVersion << "\n";
}

double mean(const std::vector<double>& v)
{
    double s = 0.0;
    for (double x : v)
        s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

// 95% normal-approximation half-width of the mean.
double ci_half_width(const std::vector<double>& v)
{
    if (v.size() < 2)
        return 0.0;
    const double m = mean(v);
    double ss = 0.0;
    for (double x : v)
        ss += (x - m) * (x - m);
    const double var = ss / static_cast<double>(v.size() - 1);
    return 1.96 * std::sqrt(var / static_cast<double>(v.size()));
}

CachingScenario base_scenario(const ExperimentConfig& cfg, double r, double speed,
                              double direction, bool los)
{
    CachingScenario s;
    s.initial_distance = r;
    s.speed = speed;
    s.direction = direction;
    s.beam = cfg.beam_layout();
    s.link = cfg.mmw_link(los);
    s.channel = cfg.mmw_params(los);
    return s;
}

} // namespace

ReportMode parse_mode(const std::string& text)
{
    if (text == "analysis")
        return ReportMode::Analysis;
    if (text == "simulation")
        return ReportMode::Simulation;
    if (text == "compare")
        return ReportMode::Compare;
    throw ConfigError({"mode must be one of: analysis | simulation | compare (got '" +
                       text + "')"});
}

std::string csv_field(const std::string& raw)
{
    if (raw.find_first_of(",\"\n\r") == std::string::npos)
        return raw;
    std::string quoted = "\"";
    for (char c : raw) {
        if (c == '"')
            quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

std::string csv_number(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

void run_fig3(const ExperimentConfig& cfg, ReportMode mode, std::ostream& out)
{
    const bool want_analysis = mode != ReportMode::Simulation;
    const bool want_empirical = mode != ReportMode::Analysis;
    const double speed = *std::max_element(cfg.speeds_kmh.begin(), cfg.speeds_kmh.end()) / 3.6;

    write_preamble(out, cfg);
    out << "t0,r,F_analytic,F_empirical,ks_stat\n";

    std::vector<double> radii = cfg.fig3_r_list_m;
    std::sort(radii.begin(), radii.end());

    for (std::size_t i = 0; i < radii.size(); ++i) {
        const double r = radii[i];
        const CachingScenario scenario = base_scenario(cfg, r, speed, 0.0, true);

        std::optional<EmpiricalCdf> ecdf;
        double ks = 0.0;
        if (want_empirical) {
            Rng rng = Rng::stream(cfg.seed, 2000 + i);
            ecdf.emplace(sample_crossing_durations(scenario, cfg.fig3_samples, rng));
            if (want_analysis) {
                ks = ecdf->ks_distance(
                    [&](double t) { return caching_duration_cdf(t, scenario); });
                require_finite(ks, "KS statistic");
            }
        }

        for (int j = 0; j <= cfg.fig3_t_points; ++j) {
            const double t0 = cfg.fig3_t_max_s * j / cfg.fig3_t_points;
            out << csv_number(t0) << ',' << csv_number(r) << ',';
            if (want_analysis) {
                const double fa = caching_duration_cdf(t0, scenario);
                require_finite(fa, "analytic CDF");
                out << csv_number(fa);
            }
            out << ',';
            if (want_empirical)
                out << csv_number((*ecdf)(t0));
            out << ',';
            if (want_empirical && want_analysis)
                out << csv_number(ks);
            out << '\n';
        }
    }
}

void run_fig4(const ExperimentConfig& cfg, ReportMode mode, std::ostream& out)
{
    const bool want_analysis = mode != ReportMode::Simulation;
    const bool want_sim = mode != ReportMode::Analysis;
    const bool both = want_analysis && want_sim;

    write_preamble(out, cfg);
    out << "speed,hof_off,hof_on,relative_reduction,ci";
    if (both)
        out << ",hof_off_analytic,discrepancy";
    out << "\n";

    std::vector<double> speeds = cfg.speeds_kmh;
    std::sort(speeds.begin(), speeds.end());
    const HofModel hof = cfg.hof_model();

    for (double kmh : speeds) {
        const double v = kmh / 3.6;

        // published metric: HOF events per MUE-hour
        double hof_off = 0.0, hof_on = 0.0, reduction = 0.0, ci = 0.0;
        // analytic arm on the same scale: per-crossing failure probability
        // times the cell-encounter rate v / l
        const double hof_off_analytic =
            hof_probability(v, hof).value * 3600.0 * v / hof.mean_intercell_distance;
        require_finite(hof_off_analytic, "analytic HOF probability");

        if (want_sim) {
            const auto off = run_trials(cfg, v, false, cfg.seed, cfg.trials);
            const auto on = run_trials(cfg, v, true, cfg.seed, cfg.trials);
            std::vector<double> off_rates, on_rates, diff;
            off_rates.reserve(off.size());
            on_rates.reserve(on.size());
            diff.reserve(off.size());
            for (std::size_t i = 0; i < off.size(); ++i) {
                const double per_hr_off =
                    off[i].hof_count / std::max(1e-9, off[i].simulated_mue_time) * 3600.0;
                const double per_hr_on =
                    on[i].hof_count / std::max(1e-9, on[i].simulated_mue_time) * 3600.0;
                off_rates.push_back(per_hr_off);
                on_rates.push_back(per_hr_on);
                diff.push_back(per_hr_off - per_hr_on);
            }
            hof_off = mean(off_rates);
            hof_on = mean(on_rates);
            reduction = hof_off > 0.0 ? (hof_off - hof_on) / hof_off : 0.0;
            // paired-difference CI, expressed on the relative-reduction scale
            ci = hof_off > 0.0 ? ci_half_width(diff) / hof_off : 0.0;
        } else {
            // analytic caching-on model: a full cache lets the MUE skip the
            // next zeta cells, so one in every zeta+1 crossings risks a HOF
            // representative perpendicular crossing of the beam
            const double dir = std::numbers::pi / 2.0 - deg2rad(cfg.beam_width_deg);
            const CachingScenario s =
                base_scenario(cfg, cfg.beam_cell_radius_m, v, dir, true);
            const double dist = expected_cache_distance(s, cfg.traffic());
            const long long zeta = ho_skip_factor(dist, hof);
            hof_off = hof_off_analytic;
            hof_on = hof_off / static_cast<double>(1 + zeta);
            reduction = hof_off > 0.0 ? (hof_off - hof_on) / hof_off : 0.0;
        }
        require_finite(hof_off, "hof_off");
        require_finite(hof_on, "hof_on");

        out << csv_number(kmh) << ',' << csv_number(hof_off) << ',' << csv_number(hof_on)
            << ',' << csv_number(reduction) << ',' << csv_number(ci);
        if (both)
            out << ',' << csv_number(hof_off_analytic) << ','
                << csv_number(std::fabs(hof_off - hof_off_analytic));
        out << '\n';
    }
}

void run_fig5(const ExperimentConfig& cfg, ReportMode /*mode*/, std::ostream& out)
{
    const double speed = *std::max_element(cfg.speeds_kmh.begin(), cfg.speeds_kmh.end()) / 3.6;

    write_preamble(out, cfg);
    out << "r,theta_u,rate_los,rate_nlos\n";

    std::vector<double> thetas = cfg.fig5_theta_u_deg;
    std::sort(thetas.begin(), thetas.end());

    for (double r = cfg.fig5_r_min_m; r <= cfg.fig5_r_max_m + 1e-9; r += cfg.fig5_r_step_m) {
        for (double theta_deg : thetas) {
            const double theta = deg2rad(theta_deg);
            CachingScenario los = base_scenario(cfg, r, speed, theta, true);
            CachingScenario nlos = base_scenario(cfg, r, speed, theta, false);
            const double rate_los = average_caching_rate(los);
            const double rate_nlos = average_caching_rate(nlos);
            require_finite(rate_los, "LoS rate");
            require_finite(rate_nlos, "NLoS rate");
            out << csv_number(r) << ',' << csv_number(theta_deg) << ','
                << csv_number(rate_los) << ',' << csv_number(rate_nlos) << '\n';
        }
    }
}

void run_single(const ExperimentConfig& cfg, std::ostream& out)
{
    const double v = cfg.speeds_kmh.front() / 3.6;
    std::vector<Event> trace;
    const ExperimentResult res =
        run_trial(cfg, v, cfg.caching_enabled, cfg.seed, &trace);

    write_preamble(out, cfg);
    out << "# speed_kmh=" << csv_number(cfg.speeds_kmh.front()) << " caching="
        << (cfg.caching_enabled ? "on" : "off") << "\n";
    out << "time,mue,kind,cell,value\n";
    for (const Event& e : trace)
        out << csv_number(e.time) << ',' << e.mue << ',' << event_kind_name(e.kind)
            << ',' << e.cell << ',' << csv_number(e.value) << '\n';
    out << "# ho=" << res.ho_count << " hof=" << res.hof_count
        << " hof_rate=" << csv_number(res.hof_rate) << "\n";
}

} // namespace mmho
