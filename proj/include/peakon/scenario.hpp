#pragma once

#include "peakon/config.hpp"
#include "peakon/diagnostics.hpp"
#include "peakon/io.hpp"
#include "peakon/oracle.hpp"
#include "peakon/spectral.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace peakon {

struct ResidualRow {
  double t;
  double r_plus;
  double r_minus;
  double jx_residual;
  double bound_excess;  // max over x of lhs - C0 |m|
  bool bound_holds;
};

/// One integrator run from one initial datum.
struct RunOutcome {
  Integrator integrator = Integrator::spectral;
  double theta = 0.0;
  double ramp = 0.0;  // blow-up datum only
  BlowupPrediction prediction;

  std::string fault;  // non-empty when the run aborted on a numerical fault
  bool blown_up = false;
  double blowup_time = std::numeric_limits<double>::quiet_NaN();
  std::string blowup_reason;
  double final_t = 0.0;

  std::vector<DiagnosticsRecord> diagnostics;
  std::vector<Snapshot> snapshots;  // particle runs: reconstructed m
  std::vector<MonitorSample> monitor;
  std::vector<ResidualRow> residuals;
  // Smallest inf J_x and largest ||m||_inf / ||m0||_inf seen strictly
  // before the blow-up declaration (over the whole run otherwise).
  double monitor_min = 0.0;
  double linf_growth = 1.0;

  std::optional<TrackingResult> tracking;
  std::string tracking_error;

  bool faulted() const noexcept { return !fault.empty(); }
};

struct CrossCheckRow {
  double t;
  double rel_l2;
};

struct RunArtifact {
  ScenarioConfig config;
  std::vector<RunOutcome> runs;
  std::vector<CrossCheckRow> cross_check;  // integrator = both, first datum

  bool faulted() const noexcept;
};

int worker_count();  // PEAKON_WORKERS, else hardware concurrency

// The sweep's theta list for blowup_sweep (default k pi/8, k = 0..7), else {theta}.
std::vector<double> scenario_thetas(const ScenarioConfig& c);

// m0 for the configured scenario; theta and ramp matter for the blow-up datum.
GridFunction initial_data(const ScenarioConfig& c);
GridFunction blowup_datum(const Grid& g, double amplitude, double width, double ramp);

// Largest dt admitted at t = 0 by every requested integrator.
double initial_dt_limit(const ScenarioConfig& c, const GridFunction& m0);

// Pure computation; blow-up is an outcome, numerical faults are recorded
// per run. Throws InvalidConfig for configurations that cannot start.
RunArtifact run_scenario(const ScenarioConfig& c);

// diagnostics_<run>.csv, snapshots/<run>_<k>.json, runs.csv, crosscheck.csv,
// residuals_<run>.csv, tracking.csv and config.ini under dir.
void write_artifact(const RunArtifact& a, const std::filesystem::path& dir);

Table summary_table(const RunArtifact& a, const std::string& source = "");

/**
 * Runs every config on a worker pool and returns one row per run in input
 * order, regardless of completion order. Invalid configs and unexpected
 * errors become rows with status "invalid" or "error".
 */
Table sweep(const std::vector<std::filesystem::path>& configs, int workers);

}  // namespace peakon
