#pragma once

#include "peakon/diagnostics.hpp"
#include "peakon/grid.hpp"
#include "peakon/helmholtz.hpp"
#include "peakon/spectral.hpp"

#include <string>
#include <vector>

namespace peakon {

/**
 * Characteristics representation of m. Particle j starts at grid node x_j
 * and carries the complex weight w_j e^{i(phase0_j + psi_j)}, where
 * w_j = |m0(x_j)| dx never changes. Positions are kept in [-L, L).
 */
struct ParticleEnsemble {
  double t = 0.0;
  double theta = 0.0;
  double half_length = 0.0;
  double dx = 0.0;  // spacing of the grid the particles were seeded on
  ArrayXd h;
  ArrayXd psi;
  ArrayXd w;
  ArrayXd phase0;
  bool blown_up = false;
  double blowup_time = std::numeric_limits<double>::quiet_NaN();
  std::string blowup_reason;

  Index size() const noexcept { return h.size(); }
  ArrayXcd weights() const;
};

struct ParticleOptions {
  double cfl = 0.5;
  // Particles lighter than drop_threshold * max weight are moved but do not
  // act as kernel sources.
  double drop_threshold = 1e-14;
  BlowupThresholds thresholds;
  // Keep stepping after the first blow-up flag (the flag and its time are
  // retained). Used for crest tracking through mollified-peakon steepening.
  bool continue_past_blowup = false;
  // run_particles retries a step that breaks the ordering with half the step,
  // up to this many times, so the approach to a collision is resolved.
  int max_halvings = 40;
};

ParticleEnsemble init_particles(const GridFunction& m0, double theta);

struct ParticleRates {
  ArrayXd dh;    // Re(e^{i theta} Q) at each particle
  ArrayXd dpsi;  // Im(e^{i theta} Q) at each particle
  ArrayXcd u;
  ArrayXcd ux;
};

ParticleRates particle_rhs(const ParticleEnsemble& ens, const ParticleOptions& opts = {});

// u and u_x induced by the ensemble at arbitrary points in [-L, L).
KernelSums velocity_at(const ParticleEnsemble& ens, const ArrayXd& targets, const ParticleOptions& opts = {});

struct OrderCheck {
  bool ordered;
  double min_spacing_ratio;
};

// Cyclic gaps mod 2L must sum to one period while the flow map is monotone.
OrderCheck check_order(const ParticleEnsemble& ens);

// RK4 on (h, psi). Throws CflViolation when dt > cfl dx / max|J|.
ParticleEnsemble step_particles(const ParticleEnsemble& ens, double dt, const ParticleOptions& opts = {});

// Deposits each complex weight with a normalized discrete Gaussian of
// width_cells target spacings, divided by the target spacing.
GridFunction reconstruct_m(const ParticleEnsemble& ens, const Grid& target, double width_cells = 2.0);

// m at each particle from the local density of characteristics:
// 2 w~_j / (h_{j+1} - h_{j-1}) with cyclic, wrapped neighbour gaps.
ArrayXcd particle_momentum(const ParticleEnsemble& ens);

struct ParticleRun {
  ParticleEnsemble final_state;
  std::vector<ParticleEnsemble> snapshots;
  std::vector<DiagnosticsRecord> diagnostics;
  std::vector<MonitorSample> monitor;
};

ParticleRun run_particles(const ParticleEnsemble& ens0, double dt, double t_end, int snapshot_every,
                          const ParticleOptions& opts = {});

}  // namespace peakon
