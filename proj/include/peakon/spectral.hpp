#pragma once

#include "peakon/diagnostics.hpp"
#include "peakon/grid.hpp"

#include <string>
#include <vector>

namespace peakon {

struct BlowupThresholds {
  double monitor = 1e6;        // declare when inf J_x < -monitor
  double linf_factor = 1e6;    // declare when max|m| > linf_factor * initial
  double spacing_ratio = 1e-6;  // particle gap / dx
  // Spectral runs: declare "unresolved" once this fraction of ||m||_2^2 sits
  // above 2/3 of the Nyquist wavenumber. Off (inf) by default.
  double spectral_tail = kInf;
};

/// The evolved unknown of the grid integrator.
struct MomentumState {
  double t = 0.0;
  GridFunction m;
  double theta = 0.0;
  bool blown_up = false;
  double blowup_time = std::numeric_limits<double>::quiet_NaN();
  std::string blowup_reason;

  MomentumState(double t_, GridFunction m_, double theta_) : t(t_), m(std::move(m_)), theta(theta_) {}
};

struct SpectralOptions {
  bool dealias = true;
  double cfl = 0.4;
  // Exponential filter exp(-strength (|k|/k_max)^order) after each step.
  bool filter = false;
  int filter_order = 8;
  double filter_strength = 36.0;
  BlowupThresholds thresholds;
};

// m_t = -J m_x + K m. Non-finite output is returned as is; step() flags it.
GridFunction rhs(const MomentumState& s, const SpectralOptions& opts = {});

// Largest dt the CFL guard admits for this state (infinite for m = 0).
double max_stable_dt(const MomentumState& s, const SpectralOptions& opts = {});

// One RK4 step with no guard; dt may be negative. Used by residual probes.
// Fraction of ||f||_2^2 carried by wavenumbers above 2/3 of Nyquist.
double spectral_tail_fraction(const GridFunction& f);

GridFunction rk4_advance(const GridFunction& m, double theta, double dt, const SpectralOptions& opts = {});

// Guarded RK4 step. Throws CflViolation; non-finite results come back
// flagged as blown up.
MomentumState step(const MomentumState& s, double dt, const SpectralOptions& opts = {});

struct MonitorSample {
  double t;
  double inf_Jx;
  double linf_m;
};

struct SpectralRun {
  MomentumState final_state;
  std::vector<MomentumState> snapshots;
  std::vector<DiagnosticsRecord> diagnostics;
  std::vector<MonitorSample> monitor;  // every step
};

/**
 * Steps from state0 to t_end with fixed dt (the last step is shortened to
 * land on t_end). Snapshots and diagnostics rows are taken every
 * snapshot_every steps and at the final time. Stops early on blow-up.
 */
SpectralRun run(const MomentumState& state0, double dt, double t_end, int snapshot_every,
                const SpectralOptions& opts = {});

}  // namespace peakon
