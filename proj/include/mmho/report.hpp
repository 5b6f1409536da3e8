#ifndef MMHO_REPORT_HPP
#define MMHO_REPORT_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "mmho/config.hpp"

namespace mmho {

inline constexpr const char* kToolVersion = "1.0.0";

enum class ReportMode { Analysis, Simulation, Compare };

ReportMode parse_mode(const std::string& text); // throws ConfigError

/// RFC-4180 field quoting: fields containing comma, quote or newline are
/// quoted and embedded quotes doubled.
std::string csv_field(const std::string& raw);

/// Fixed-width decimal rendering used for all numeric CSV fields so that
/// reruns are byte-identical across platforms.
std::string csv_number(double v);

/// Caching-duration CDF sweep: analytic vs empirical CDF per initial
/// distance. Columns: t0,r,F_analytic,F_empirical,ks_stat.
void run_fig3(const ExperimentConfig& cfg, ReportMode mode, std::ostream& out);

/// HOF-vs-speed sweep with caching on/off.
/// Columns: speed,hof_off,hof_on,relative_reduction,ci
/// (compare mode appends hof_off_analytic,discrepancy).
void run_fig4(const ExperimentConfig& cfg, ReportMode mode, std::ostream& out);

/// Average caching rate vs initial distance per approach angle.
/// Columns: r,theta_u,rate_los,rate_nlos.
void run_fig5(const ExperimentConfig& cfg, ReportMode mode, std::ostream& out);

/// One fully traced trial at the first configured speed; one event per line.
void run_single(const ExperimentConfig& cfg, std::ostream& out);

} // namespace mmho

#endif
