#ifndef MMHO_SIM_HPP
#define MMHO_SIM_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mmho/analysis.hpp"
#include "mmho/config.hpp"
#include "mmho/geometry.hpp"
#include "mmho/radio.hpp"
#include "mmho/rng.hpp"

namespace mmho {

/// Cell id of the macro base station; SBSs are numbered from 0.
inline constexpr int kMbsCell = -1;

struct SbsSite {
    Point2D position;
    BeamLayout beam;
};

struct NetworkTopology {
    std::vector<SbsSite> sbs;
    Point2D mbs{0.0, 0.0};
    double area_radius = 500.0;
    double min_intercell_distance = 30.0;

    /// Mean nearest-neighbour distance between SBSs (the l of the analytic
    /// HO-skip factor).
    double mean_nn_distance() const;
};

/// Uniform SBS placement in the disk conditioned on the pairwise minimum
/// distance, by bounded rejection sampling. Beam base azimuths are drawn
/// uniformly per SBS and then fixed.
NetworkTopology generate_topology(std::uint64_t seed, int k, double area_radius,
                                  double min_dist, const BeamLayout& beam_template);

struct MueTrajectory {
    Point2D position;
    double direction = 0.0; // fixed within a frame
    double speed = 1.0;
    double cache_bits = 0.0;
    double frame_elapsed = 0.0;
};

enum class HoState { IdleSearching, TttPending, Executing, Muted };

struct HoStateMachine {
    HoState state = HoState::IdleSearching;
    int serving_cell = kMbsCell;
    std::optional<int> candidate_cell;
    double ttt_elapsed = 0.0;
    double time_in_cell = 0.0;
    double time_since_search = 0.0;
    bool entered_by_ho = false; // serving cell was entered via a triggered HO
};

enum class EventKind {
    Association, // initial or threshold fallback association
    HoExecuted,
    Hof,
    Respawn,
    MuteStart,
    MuteEnd,
    BeamExit, // value = cache_bits at mmW beam exit
};

struct Event {
    double time = 0.0;
    int mue = 0;
    EventKind kind = EventKind::Association;
    int cell = kMbsCell;
    double value = 0.0;
};

std::string event_kind_name(EventKind kind);

struct ExperimentResult {
    long long ho_count = 0;  // executed HOs into SBS targets (= HOF attempts)
    long long hof_count = 0;
    double hof_rate = 0.0;   // hof_count / max(1, attempts)
    std::vector<double> cache_fill_samples;  // cache_bits at beam exits
    std::vector<double> time_of_stay_samples; // per SBS-cell visit, seconds
    double simulated_mue_time = 0.0; // total MUE-seconds simulated
    std::uint64_t seed = 0;
};

/// Everything a step needs besides per-MUE state: topology plus the derived
/// radio constants of both bands.
class SimWorld {
  public:
    /// `rng` supplies the per-SBS LoS/NLoS link draws (Bernoulli p_los).
    SimWorld(const ExperimentConfig& cfg, NetworkTopology topology, bool caching_enabled,
             Rng& rng);

    const NetworkTopology& topology() const { return topology_; }
    const ExperimentConfig& config() const { return cfg_; }
    bool caching_enabled() const { return caching_; }

    /// Raw (unfiltered) microwave RSS in dBm from cell `cell` at `pos`;
    /// draws one shadowing sample when the link is within the evaluation
    /// cutoff. Out-of-range links report a floor value and consume no
    /// randomness, so trajectories fully determine the draw sequence.
    double sample_uw_rss(int cell, Point2D pos, Rng& rng) const;

    /// Instantaneous mmW downlink rate from SBS `cell` at `pos` (bits/s).
    double mmw_rate(int cell, Point2D pos) const;

    /// True if `pos` lies inside an active mmW beam sector of SBS `cell`.
    bool in_mmw_beam(int cell, Point2D pos) const;

    int cell_count() const { return static_cast<int>(topology_.sbs.size()); }

    static constexpr double kRssFloorDbm = -300.0;

  private:
    ExperimentConfig cfg_;
    NetworkTopology topology_;
    bool caching_;
    PathLossParams uw_;
    double uw_sbs_const_dbm_;
    double uw_mbs_const_dbm_;
    PathLossParams mmw_los_;
    PathLossParams mmw_nlos_;
    LinkBudget mmw_link_los_;
    LinkBudget mmw_link_nlos_;
    std::vector<bool> sbs_los_;
};

/// Per-MUE mutable state: trajectory, HO state machine, RSS filters.
class MueRuntime {
  public:
    MueRuntime(int id, const SimWorld& world, MueTrajectory start, Rng& rng);

    const MueTrajectory& trajectory() const { return mue_; }
    const HoStateMachine& fsm() const { return fsm_; }
    int id() const { return id_; }

    /// Advances one time step. Order: move (respawning at the boundary if
    /// the area is left), sample + filter RSS, accrue cache while in the
    /// serving SBS's beam, drain playback, update muting, then run the
    /// search / TTT / execute handover logic.
    void step(const SimWorld& world, double dt, double now, Rng& rng,
              std::vector<Event>* events);

    void collect(ExperimentResult& result) const;

  private:
    double filtered_rss(int cell) const;
    void associate(int cell, bool via_ho, double now, std::vector<Event>* events);
    void push_sample(int slot, double rss);
    void exit_serving_cell(double mts, double now, std::vector<Event>* events,
                           bool count_hof = true);

    int id_;
    MueTrajectory mue_;
    HoStateMachine fsm_;
    // moving-average RSS filter, one ring per cell (MBS last)
    int window_ = 1;
    std::vector<double> rss_ring_;
    std::vector<double> rss_sum_;
    std::vector<int> rss_fill_;
    int ring_pos_ = 0;
    bool was_in_beam_ = false;
    long long ho_count_ = 0;
    long long hof_count_ = 0;
    std::vector<double> tos_samples_;
    std::vector<double> cache_samples_;
};

/// Runs one seeded trial: `cfg.mues` MUEs at `speed_mps` for one frame
/// length of simulated time. Identical (cfg, speed, caching, seed) yield
/// bit-identical results including event order.
ExperimentResult run_trial(const ExperimentConfig& cfg, double speed_mps,
                           bool caching_enabled, std::uint64_t seed,
                           std::vector<Event>* trace = nullptr);

/// Runs `trials` independent trials concurrently (seeds seed+0 .. seed+n-1)
/// and returns them ordered by trial index.
std::vector<ExperimentResult> run_trials(const ExperimentConfig& cfg, double speed_mps,
                                         bool caching_enabled, std::uint64_t seed,
                                         int trials);

/// Right-continuous empirical CDF with a KS-distance helper.
class EmpiricalCdf {
  public:
    explicit EmpiricalCdf(std::vector<double> samples);

    double operator()(double x) const;
    std::size_t size() const { return samples_.size(); }

    /// sup_x |F_n(x) - F(x)| evaluated at the sample points (both one-sided
    /// deviations).
    double ks_distance(const std::function<double(double)>& cdf) const;

  private:
    std::vector<double> samples_; // sorted
};

// --- Monte Carlo sampling surfaces used to cross-check the analysis ---

/// Fraction of uniformly random (entry point, direction) cell entries whose
/// chord crosses a mmW beam sector, decided by segment/sector intersection.
double sample_beam_crossing_frequency(const BeamLayout& layout, long long samples, Rng& rng);

/// Caching durations for MUEs placed on the beam trailing edge at distance
/// `initial_distance`, with directions uniform over the crossing-admissible
/// range of width pi - beam_width.
std::vector<double> sample_crossing_durations(const CachingScenario& scenario,
                                              long long samples, Rng& rng);

/// Time-of-stay samples through one circular cell: uniform boundary entry,
/// uniform inward direction, exact chord traversal.
std::vector<double> sample_single_cell_tos(double cell_radius, double speed,
                                           long long samples, Rng& rng);

/// Fraction of single-cell crossings with time-of-stay below `mts`.
double sample_single_cell_hof_frequency(double cell_radius, double speed, double mts,
                                        long long samples, Rng& rng);

} // namespace mmho

#endif
