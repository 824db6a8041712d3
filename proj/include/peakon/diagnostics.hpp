#pragma once

#include "peakon/fields.hpp"
#include "peakon/grid.hpp"

#include <optional>
#include <string>
#include <vector>

namespace peakon {

struct MomentumState;
struct SpectralOptions;
struct ParticleEnsemble;

/// One snapshot of conserved quantities and blow-up indicators.
/// min_spacing_ratio is NaN for grid runs.
struct DiagnosticsRecord {
  double t = 0.0;
  double l1_m = 0.0;
  double linf_m = 0.0;
  double H1 = 0.0;
  double H2 = 0.0;
  double max_abs_u = 0.0;
  double max_abs_ux = 0.0;
  double inf_Jx = 0.0;
  double min_spacing_ratio = std::numeric_limits<double>::quiet_NaN();
  std::optional<double> besov_h_s;
};

struct Hamiltonians {
  double H1;
  double H2;
};

// Riemann sums of the two conserved densities; both are linear in m once
// u and u_x are fixed, which the particle quadrature relies on.
Hamiltonians hamiltonians(const FieldBundle& b);
Hamiltonians hamiltonians(const GridFunction& m, double theta);

// inf over the grid of J_x = Re(e^{i theta} Q_x).
double blowup_monitor(const FieldBundle& b);

DiagnosticsRecord record_from_bundle(double t, const FieldBundle& b);
DiagnosticsRecord record_from_particles(const ParticleEnsemble& ens);

struct BlowupPrediction {
  bool triggered = false;
  double x0 = 0.0;
  Index index = -1;
  double Jx0 = 0.0;
  double m0_at_x0 = 0.0;
  double C0 = 0.0;
  double T_star = std::numeric_limits<double>::quiet_NaN();
  // (-Jx0) / sqrt(2 C0 |m0(x0)|) - 1 at the point of largest margin;
  // nonnegative iff some point satisfies the trigger condition.
  double margin = -1.0;
};

// Smaller root of 1 + Jx0 t + C0 |m0| t^2 / 2; NaN when the condition
// Jx0 <= -sqrt(2 C0 |m0|) fails.
double predicted_blowup_time(double Jx0, double C0, double m0_abs);

// c0_factor multiplies the cube of the L^1 norm (default 7).
BlowupPrediction predict_blowup(const GridFunction& m0, double theta, double c0_factor = 7.0);

struct TransportResidual {
  double r_plus;
  double r_minus;
};

struct JxTransportReport {
  double residual;      // sup |lhs - rhs| of the J_x transport identity
  double lhs_max_excess;  // max over x of lhs - C0 |m|
  double slack;         // 10 * residual
  bool bound_holds;     // lhs <= C0 |m| + slack everywhere
};

// Both use centred differences of RK4 steps of +-dt_probe from the state.
TransportResidual vpm_transport_residual(const MomentumState& s, double dt_probe, const SpectralOptions& opts);
JxTransportReport jx_transport_residual(const MomentumState& s, double dt_probe, const SpectralOptions& opts,
                                        double c0_factor = 7.0);

}  // namespace peakon
