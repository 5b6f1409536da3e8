#include "mmho/sim.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace mmho {

namespace {
constexpr double kPi = std::numbers::pi;

Point2D uniform_in_disk(double radius, Rng& rng)
{
    const double r = radius * std::sqrt(rng.uniform());
    const double phi = rng.uniform(0.0, kTwoPi);
    return {r * std::cos(phi), r * std::sin(phi)};
}

Point2D uniform_on_circle(double radius, Rng& rng)
{
    const double phi = rng.uniform(0.0, kTwoPi);
    return {radius * std::cos(phi), radius * std::sin(phi)};
}
} // namespace

double NetworkTopology::mean_nn_distance() const
{
    if (sbs.size() < 2)
        return 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < sbs.size(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < sbs.size(); ++j) {
            if (i == j)
                continue;
            best = std::min(best, (sbs[i].position - sbs[j].position).norm());
        }
        total += best;
    }
    return total / static_cast<double>(sbs.size());
}

NetworkTopology generate_topology(std::uint64_t seed, int k, double area_radius,
                                  double min_dist, const BeamLayout& beam_template)
{
    if (k < 1)
        throw std::domain_error("generate_topology: k must be >= 1");
    Rng rng = Rng::stream(seed, 0);
    NetworkTopology topo;
    topo.area_radius = area_radius;
    topo.min_intercell_distance = min_dist;
    topo.sbs.reserve(static_cast<std::size_t>(k));
    constexpr int kMaxAttempts = 100000;
    int attempts = 0;
    while (static_cast<int>(topo.sbs.size()) < k) {
        if (++attempts > kMaxAttempts)
            throw std::runtime_error(
                "generate_topology: packing infeasible within attempt budget");
        const Point2D candidate = uniform_in_disk(area_radius, rng);
        bool ok = true;
        for (const auto& site : topo.sbs) {
            if ((site.position - candidate).norm() < min_dist) {
                ok = false;
                break;
            }
        }
        if (!ok)
            continue;
        SbsSite site;
        site.position = candidate;
        site.beam = beam_template;
        site.beam.base_azimuth = rng.uniform(0.0, kTwoPi);
        topo.sbs.push_back(site);
    }
    return topo;
}

std::string event_kind_name(EventKind kind)
{
    switch (kind) {
    case EventKind::Association: return "association";
    case EventKind::HoExecuted: return "ho";
    case EventKind::Hof: return "hof";
    case EventKind::Respawn: return "respawn";
    case EventKind::MuteStart: return "mute_start";
    case EventKind::MuteEnd: return "mute_end";
    case EventKind::BeamExit: return "beam_exit";
    }
    return "unknown";
}

SimWorld::SimWorld(const ExperimentConfig& cfg, NetworkTopology topology,
                   bool caching_enabled, Rng& rng)
    : cfg_(cfg), topology_(std::move(topology)), caching_(caching_enabled),
      uw_(cfg.uw_params()), mmw_los_(cfg.mmw_params(true)), mmw_nlos_(cfg.mmw_params(false)),
      mmw_link_los_(cfg.mmw_link(true)), mmw_link_nlos_(cfg.mmw_link(false))
{
    const double r0 = uw_.reference_distance;
    const double a0 = 20.0 * std::log10(4.0 * kPi * r0 / uw_.wavelength());
    uw_sbs_const_dbm_ = cfg.uw_sbs_tx_power_dbm - a0;
    uw_mbs_const_dbm_ = cfg.uw_mbs_tx_power_dbm - a0;
    sbs_los_.reserve(topology_.sbs.size());
    for (std::size_t i = 0; i < topology_.sbs.size(); ++i)
        sbs_los_.push_back(rng.uniform() < cfg.mmw_p_los);
}

double SimWorld::sample_uw_rss(int cell, Point2D pos, Rng& rng) const
{
    const Point2D site = cell == kMbsCell ? topology_.mbs
                                          : topology_.sbs[static_cast<std::size_t>(cell)].position;
    double d = (pos - site).norm();
    if (cell != kMbsCell && d > cfg_.rss_cutoff_m)
        return kRssFloorDbm;
    d = std::max(d, uw_.reference_distance);
    const double base = cell == kMbsCell ? uw_mbs_const_dbm_ : uw_sbs_const_dbm_;
    const double shadow = uw_.shadowing_std > 0.0 ? rng.normal(0.0, uw_.shadowing_std) : 0.0;
    return base - 10.0 * uw_.exponent * std::log10(d / uw_.reference_distance) - shadow;
}

double SimWorld::mmw_rate(int cell, Point2D pos) const
{
    const auto& site = topology_.sbs[static_cast<std::size_t>(cell)];
    const bool los = sbs_los_[static_cast<std::size_t>(cell)];
    const auto& params = los ? mmw_los_ : mmw_nlos_;
    const double d = std::max((pos - site.position).norm(), params.reference_distance);
    return instantaneous_rate(d, los ? mmw_link_los_ : mmw_link_nlos_, params);
}

bool SimWorld::in_mmw_beam(int cell, Point2D pos) const
{
    const auto& site = topology_.sbs[static_cast<std::size_t>(cell)];
    const Point2D rel = pos - site.position;
    const double d = rel.norm();
    if (d <= 0.0 || d > site.beam.cell_radius)
        return false;
    return site.beam.contains_azimuth(std::atan2(rel.y, rel.x));
}

MueRuntime::MueRuntime(int id, const SimWorld& world, MueTrajectory start, Rng& rng)
    : id_(id), mue_(start)
{
    const int cells = world.cell_count() + 1; // MBS last
    window_ = std::max(1, static_cast<int>(std::lround(world.config().filter_window_s /
                                                       world.config().dt_s)));
    rss_ring_.assign(static_cast<std::size_t>(cells) * window_, 0.0);
    rss_sum_.assign(static_cast<std::size_t>(cells), 0.0);
    rss_fill_.assign(static_cast<std::size_t>(cells), 0);

    // Warm the filters with one sample and pick the initial serving cell.
    const int n = world.cell_count();
    int best = kMbsCell;
    double best_rss = world.sample_uw_rss(kMbsCell, mue_.position, rng);
    push_sample(n, best_rss);
    for (int c = 0; c < n; ++c) {
        const double rss = world.sample_uw_rss(c, mue_.position, rng);
        push_sample(c, rss);
        if (rss >= world.config().serving_threshold_dbm && rss > best_rss) {
            best = c;
            best_rss = rss;
        }
    }
    fsm_.serving_cell = best;
}

void MueRuntime::push_sample(int slot, double rss)
{
    const std::size_t base = static_cast<std::size_t>(slot) * window_;
    if (rss_fill_[static_cast<std::size_t>(slot)] < window_) {
        rss_ring_[base + static_cast<std::size_t>(rss_fill_[static_cast<std::size_t>(slot)])] = rss;
        rss_sum_[static_cast<std::size_t>(slot)] += rss;
        ++rss_fill_[static_cast<std::size_t>(slot)];
    } else {
        const std::size_t at = base + static_cast<std::size_t>(ring_pos_);
        rss_sum_[static_cast<std::size_t>(slot)] += rss - rss_ring_[at];
        rss_ring_[at] = rss;
    }
}

double MueRuntime::filtered_rss(int cell) const
{
    const int slot = cell == kMbsCell ? static_cast<int>(rss_sum_.size()) - 1 : cell;
    const int fill = rss_fill_[static_cast<std::size_t>(slot)];
    return fill > 0 ? rss_sum_[static_cast<std::size_t>(slot)] / fill : SimWorld::kRssFloorDbm;
}

void MueRuntime::exit_serving_cell(double mts, double now, std::vector<Event>* events,
                                   bool count_hof)
{
    if (fsm_.serving_cell == kMbsCell)
        return;
    tos_samples_.push_back(fsm_.time_in_cell);
    if (count_hof && fsm_.entered_by_ho && fsm_.time_in_cell < mts) {
        ++hof_count_;
        if (events)
            events->push_back({now, id_, EventKind::Hof, fsm_.serving_cell,
                               fsm_.time_in_cell});
    }
}

void MueRuntime::associate(int cell, bool via_ho, double now, std::vector<Event>* events)
{
    fsm_.serving_cell = cell;
    fsm_.entered_by_ho = via_ho && cell != kMbsCell;
    fsm_.time_in_cell = 0.0;
    fsm_.candidate_cell.reset();
    fsm_.ttt_elapsed = 0.0;
    was_in_beam_ = false;
}

void MueRuntime::step(const SimWorld& world, double dt, double now, Rng& rng,
                      std::vector<Event>* events)
{
    const ExperimentConfig& cfg = world.config();

    // 1. motion
    mue_.position = mue_.position + (mue_.speed * dt) *
                                        Point2D{std::cos(mue_.direction), std::sin(mue_.direction)};
    mue_.frame_elapsed += dt;
    fsm_.time_in_cell += dt;
    fsm_.time_since_search += dt;

    // 2. boundary: respawn on the rim with an inward direction; this ends
    // the MUE's frame, so the visit being cut short is not an HOF.
    if (mue_.position.norm() > world.topology().area_radius) {
        exit_serving_cell(cfg.mts_s, now, events, /*count_hof=*/false);
        mue_.position = uniform_on_circle(world.topology().area_radius, rng);
        const double inward = std::atan2(-mue_.position.y, -mue_.position.x);
        mue_.direction = wrap_angle(inward + rng.uniform(-kPi / 2.0, kPi / 2.0));
        mue_.frame_elapsed = 0.0;
        std::fill(rss_sum_.begin(), rss_sum_.end(), 0.0);
        std::fill(rss_fill_.begin(), rss_fill_.end(), 0);
        associate(kMbsCell, false, now, events);
        if (fsm_.state != HoState::Muted)
            fsm_.state = HoState::IdleSearching;
        if (events)
            events->push_back({now, id_, EventKind::Respawn, kMbsCell, 0.0});
    }

    // 3. RSS sampling into the moving-average filters (fixed cell order so
    // the shadowing draw sequence is reproducible)
    const int n = world.cell_count();
    for (int c = 0; c < n; ++c)
        push_sample(c, world.sample_uw_rss(c, mue_.position, rng));
    push_sample(n, world.sample_uw_rss(kMbsCell, mue_.position, rng));
    ring_pos_ = (ring_pos_ + 1) % window_;

    // 4. cache accrual while crossing the serving SBS's mmW beam
    if (world.caching_enabled() && fsm_.serving_cell != kMbsCell) {
        const bool in_beam = world.in_mmw_beam(fsm_.serving_cell, mue_.position);
        if (in_beam) {
            const double rate = world.mmw_rate(fsm_.serving_cell, mue_.position);
            mue_.cache_bits = std::min(cfg.cache_bits, mue_.cache_bits + rate * dt);
        }
        if (was_in_beam_ && !in_beam) {
            cache_samples_.push_back(mue_.cache_bits);
            if (events)
                events->push_back({now, id_, EventKind::BeamExit, fsm_.serving_cell,
                                   mue_.cache_bits});
        }
        was_in_beam_ = in_beam;
    }

    // 5. playback drain
    if (world.caching_enabled())
        mue_.cache_bits = std::max(0.0, mue_.cache_bits -
                                            cfg.play_rate_per_s * cfg.segment_bits * dt);

    // 6. cell-search muting while remaining playback exceeds the TTT
    if (world.caching_enabled()) {
        const double playback_s =
            mue_.cache_bits / (cfg.play_rate_per_s * cfg.segment_bits);
        const bool mute = playback_s > cfg.ttt_s;
        if (mute && fsm_.state != HoState::Muted) {
            fsm_.state = HoState::Muted;
            fsm_.candidate_cell.reset();
            fsm_.ttt_elapsed = 0.0;
            if (events)
                events->push_back({now, id_, EventKind::MuteStart, fsm_.serving_cell,
                                   playback_s});
        } else if (!mute && fsm_.state == HoState::Muted) {
            fsm_.state = HoState::IdleSearching;
            if (events)
                events->push_back({now, id_, EventKind::MuteEnd, fsm_.serving_cell,
                                   playback_s});
        }
    }

    // 7. handover protocol
    if (fsm_.state == HoState::TttPending) {
        const int cand = *fsm_.candidate_cell;
        const double cand_rss = filtered_rss(cand);
        const bool still_better =
            cand_rss > filtered_rss(fsm_.serving_cell) + cfg.hysteresis_db &&
            (cand == kMbsCell || cand_rss >= cfg.serving_threshold_dbm);
        if (!still_better) {
            fsm_.state = HoState::IdleSearching;
            fsm_.candidate_cell.reset();
            fsm_.ttt_elapsed = 0.0;
        } else {
            fsm_.ttt_elapsed += dt;
            if (fsm_.ttt_elapsed >= cfg.ttt_s) {
                fsm_.state = HoState::Executing;
                exit_serving_cell(cfg.mts_s, now, events, true);
                if (cand != kMbsCell)
                    ++ho_count_;
                associate(cand, true, now, events);
                if (events)
                    events->push_back({now, id_, EventKind::HoExecuted, cand,
                                       filtered_rss(cand)});
                fsm_.state = HoState::IdleSearching;
            }
        }
    } else if (fsm_.state == HoState::IdleSearching &&
               fsm_.time_since_search >= cfg.search_period_s) {
        fsm_.time_since_search = 0.0;
        const double serving_rss = filtered_rss(fsm_.serving_cell);
        if (fsm_.serving_cell != kMbsCell && serving_rss < cfg.serving_threshold_dbm) {
            // Coverage lost: fall back to the best cell (usually the MBS).
            exit_serving_cell(cfg.mts_s, now, events, true);
            int best = kMbsCell;
            double best_rss = filtered_rss(kMbsCell);
            for (int c = 0; c < n; ++c) {
                const double rss = filtered_rss(c);
                if (rss >= cfg.serving_threshold_dbm && rss > best_rss) {
                    best = c;
                    best_rss = rss;
                }
            }
            associate(best, false, now, events);
            if (events)
                events->push_back({now, id_, EventKind::Association, best, best_rss});
        } else {
            int best = fsm_.serving_cell;
            double best_rss = serving_rss;
            for (int c = 0; c < n; ++c) {
                const double rss = filtered_rss(c);
                if (c != fsm_.serving_cell && rss >= cfg.serving_threshold_dbm &&
                    rss > best_rss) {
                    best = c;
                    best_rss = rss;
                }
            }
            if (fsm_.serving_cell != kMbsCell) {
                const double mbs_rss = filtered_rss(kMbsCell);
                if (mbs_rss > best_rss) {
                    best = kMbsCell;
                    best_rss = mbs_rss;
                }
            }
            if (best != fsm_.serving_cell && best_rss > serving_rss + cfg.hysteresis_db) {
                fsm_.state = HoState::TttPending;
                fsm_.candidate_cell = best;
                fsm_.ttt_elapsed = 0.0;
            }
        }
    }
}

void MueRuntime::collect(ExperimentResult& result) const
{
    result.ho_count += ho_count_;
    result.hof_count += hof_count_;
    result.time_of_stay_samples.insert(result.time_of_stay_samples.end(),
                                       tos_samples_.begin(), tos_samples_.end());
    result.cache_fill_samples.insert(result.cache_fill_samples.end(),
                                     cache_samples_.begin(), cache_samples_.end());
}

ExperimentResult run_trial(const ExperimentConfig& cfg, double speed_mps,
                           bool caching_enabled, std::uint64_t seed,
                           std::vector<Event>* trace)
{
    NetworkTopology topo = generate_topology(seed, cfg.sbs_count, cfg.area_radius_m,
                                             cfg.min_intercell_distance_m,
                                             cfg.beam_layout());
    Rng link_rng = Rng::stream(seed, 1);
    SimWorld world(cfg, std::move(topo), caching_enabled, link_rng);

    ExperimentResult result;
    result.seed = seed;
    const long long steps = std::llround(cfg.frame_s / cfg.dt_s);
    for (int i = 0; i < cfg.mues; ++i) {
        Rng rng = Rng::stream(seed, 1000 + static_cast<std::uint64_t>(i));
        MueTrajectory start;
        start.position = uniform_in_disk(cfg.area_radius_m * 0.999, rng);
        start.direction = rng.uniform(0.0, kTwoPi);
        start.speed = speed_mps;
        MueRuntime mue(i, world, start, rng);
        for (long long s = 0; s < steps; ++s)
            mue.step(world, cfg.dt_s, (s + 1) * cfg.dt_s, rng, trace);
        mue.collect(result);
        result.simulated_mue_time += cfg.frame_s;
    }
    if (trace)
        std::stable_sort(trace->begin(), trace->end(), [](const Event& a, const Event& b) {
            return a.time < b.time || (a.time == b.time && a.mue < b.mue);
        });
    result.hof_rate =
        static_cast<double>(result.hof_count) / static_cast<double>(std::max(1LL, result.ho_count));
    return result;
}

std::vector<ExperimentResult> run_trials(const ExperimentConfig& cfg, double speed_mps,
                                         bool caching_enabled, std::uint64_t seed,
                                         int trials)
{
    std::vector<ExperimentResult> results(static_cast<std::size_t>(trials));
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned workers = std::min<unsigned>(hw, static_cast<unsigned>(trials));
    if (workers <= 1) {
        for (int t = 0; t < trials; ++t)
            results[static_cast<std::size_t>(t)] =
                run_trial(cfg, speed_mps, caching_enabled, seed + static_cast<std::uint64_t>(t));
        return results;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned wkr = 0; wkr < workers; ++wkr) {
        pool.emplace_back([&, wkr] {
            for (int t = static_cast<int>(wkr); t < trials; t += static_cast<int>(workers))
                results[static_cast<std::size_t>(t)] = run_trial(
                    cfg, speed_mps, caching_enabled, seed + static_cast<std::uint64_t>(t));
        });
    }
    for (auto& th : pool)
        th.join();
    return results;
}

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples) : samples_(std::move(samples))
{
    if (samples_.empty())
        throw std::domain_error("EmpiricalCdf: needs at least one sample");
    std::sort(samples_.begin(), samples_.end());
}

double EmpiricalCdf::operator()(double x) const
{
    const auto it = std::upper_bound(samples_.begin(), samples_.end(), x);
    return static_cast<double>(it - samples_.begin()) / static_cast<double>(samples_.size());
}

double EmpiricalCdf::ks_distance(const std::function<double(double)>& cdf) const
{
    const double n = static_cast<double>(samples_.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        const double f = cdf(samples_[i]);
        d = std::max(d, std::abs((static_cast<double>(i) + 1.0) / n - f));
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    }
    return d;
}

namespace {

double cross(Point2D o, Point2D a, Point2D b)
{
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

/// Proper segment intersection test (shared endpoints / collinear overlap
/// are measure-zero under the samplers and treated as non-crossing).
bool segments_intersect(Point2D p1, Point2D p2, Point2D q1, Point2D q2)
{
    const double d1 = cross(q1, q2, p1);
    const double d2 = cross(q1, q2, p2);
    const double d3 = cross(p1, p2, q1);
    const double d4 = cross(p1, p2, q2);
    return ((d1 > 0.0) != (d2 > 0.0)) && ((d3 > 0.0) != (d4 > 0.0));
}

} // namespace

double sample_beam_crossing_frequency(const BeamLayout& layout, long long samples, Rng& rng)
{
    layout.validate();
    if (samples < 1)
        throw std::domain_error("sample_beam_crossing_frequency: samples must be >= 1");
    const double a = layout.cell_radius;
    long long hits = 0;
    for (long long i = 0; i < samples; ++i) {
        const double phi = rng.uniform(0.0, kTwoPi);
        const double dir = rng.uniform(0.0, kTwoPi);
        const Point2D entry{a * std::cos(phi), a * std::sin(phi)};
        if (layout.contains_azimuth(phi)) {
            ++hits;
            continue;
        }
        const double chord = circle_entry_crossing(entry, dir, a);
        if (chord <= 0.0)
            continue;
        const Point2D exit = entry + chord * Point2D{std::cos(dir), std::sin(dir)};
        const double exit_phi = std::atan2(exit.y, exit.x);
        bool covered = layout.contains_azimuth(exit_phi);
        for (int b = 0; !covered && b < layout.n_beams; ++b) {
            for (const double edge :
                 {layout.leading_azimuth(b), layout.trailing_azimuth(b)}) {
                const Point2D rim{a * std::cos(edge), a * std::sin(edge)};
                if (segments_intersect(entry, exit, {0.0, 0.0}, rim)) {
                    covered = true;
                    break;
                }
            }
        }
        if (covered)
            ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(samples);
}

std::vector<double> sample_crossing_durations(const CachingScenario& scenario,
                                              long long samples, Rng& rng)
{
    scenario.validate();
    if (samples < 1)
        throw std::domain_error("sample_crossing_durations: samples must be >= 1");
    const double theta_k = scenario.beam.beam_width;
    const double t0 = scenario.beam.leading_azimuth(0);
    const double start_azimuth = t0 - theta_k; // trailing edge
    const Point2D pos{scenario.initial_distance * std::cos(start_azimuth),
                      scenario.initial_distance * std::sin(start_azimuth)};
    std::vector<double> durations;
    durations.reserve(static_cast<std::size_t>(samples));
    for (long long i = 0; i < samples; ++i) {
        const double theta_hat = rng.uniform(theta_k, kPi);
        const double dir = theta_hat + t0 - theta_k;
        const double rc = crossing_length(pos, dir, scenario.beam, 0);
        durations.push_back(rc / scenario.speed);
    }
    return durations;
}

std::vector<double> sample_single_cell_tos(double cell_radius, double speed,
                                           long long samples, Rng& rng)
{
    if (!(cell_radius > 0.0) || !(speed > 0.0))
        throw std::domain_error("sample_single_cell_tos: radius and speed must be positive");
    std::vector<double> tos;
    tos.reserve(static_cast<std::size_t>(samples));
    for (long long i = 0; i < samples; ++i) {
        const Point2D entry = uniform_on_circle(cell_radius, rng);
        const double inward = std::atan2(-entry.y, -entry.x);
        const double dir = inward + rng.uniform(-kPi / 2.0, kPi / 2.0);
        tos.push_back(circle_entry_crossing(entry, dir, cell_radius) / speed);
    }
    return tos;
}

double sample_single_cell_hof_frequency(double cell_radius, double speed, double mts,
                                        long long samples, Rng& rng)
{
    const auto tos = sample_single_cell_tos(cell_radius, speed, samples, rng);
    const long long failures =
        std::count_if(tos.begin(), tos.end(), [&](double t) { return t < mts; });
    return static_cast<double>(failures) / static_cast<double>(samples);
}

} // namespace mmho
