#pragma once

#include "rarewave/config.hpp"
#include "rarewave/relative_energy.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace rarewave {

/// The wave and solver setup shared by all runs of a sweep.  Configurations
/// with u_L <= 0 and u_R < 0 are mirrored onto the native u_L > 0 form
/// (energies and L1 metrics are reflection-invariant; profile emitters undo
/// the reflection).
struct PreparedProblem {
    RarefactionWave wave;  ///< possibly reflected
    bool reflected = false;
};
PreparedProblem prepare_problem(const SweepConfig& cfg);

SolverConfig solver_config_for(const SweepConfig& cfg, const PreparedProblem& prob,
                               double eps);

struct RunRecord {
    double eps = 0.0;
    bool aborted = false;
    std::string abort_reason;
    std::vector<EnergyReport> trajectory;  ///< initialization row + probe rows
};

struct SweepResult {
    PreparedProblem problem;
    std::vector<RunRecord> runs;  ///< in the order of eps_list

    /// probe-time rows only (the trajectory's initialization row stays in the
    /// per-run files)
    std::vector<EnergyReport> aggregate() const;
};

/// Runs every eps of the sweep (concurrently, one worker per eps); positivity
/// aborts are recorded and the sweep continues.
SweepResult sweep(const SweepConfig& cfg);

struct RateFit {
    double t = 0.0;
    std::string metric;
    double slope = 0.0;     ///< d log(metric) / d log(eps)
    double residual = 0.0;  ///< RMS residual of the log-log fit
    int points = 0;
    std::string note;       ///< set when the metric was excluded
};

/// Least-squares slope of log(metric) against log(eps) per probe time and
/// metric; degenerate (non-positive) metrics are excluded with a note.
std::vector<RateFit> estimate_rates(const std::vector<EnergyReport>& table);

// --- CSV ---------------------------------------------------------------------

/// eps,t,E_rel_total,L1_rho,L1_theta,L1_m,ballistic_total,dissipation_accum
void write_energy_csv(std::ostream& os, const std::vector<EnergyReport>& rows);
std::vector<EnergyReport> read_energy_csv(std::istream& is);

/// Writes the full report set under dir: per-run CSVs, aggregate.csv,
/// rates.csv, long.csv (plot-ready), and a README.md describing every schema.
void write_reports(const SweepResult& result, const std::vector<RateFit>& rates,
                   const std::string& dir);

/// Re-reads the per-run CSVs of a report directory.
std::vector<RunRecord> read_report_runs(const std::string& dir);

} // namespace rarewave
