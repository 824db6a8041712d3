#include "peakon/diagnostics.hpp"

#include "peakon/errors.hpp"
#include "peakon/helmholtz.hpp"
#include "peakon/particles.hpp"
#include "peakon/spectral.hpp"

#include <cmath>

namespace peakon {

namespace {

// Both densities are linear in m, so `mdx` may be m * dx on a grid or the
// complex particle weights.
Hamiltonians hamiltonian_sums(const ArrayXcd& u, const ArrayXcd& ux, const ArrayXcd& mdx, double theta) {
  const double s = std::sin(theta), c = std::cos(theta);
  const ArrayXd re_um = (u.conjugate() * mdx).real();
  const ArrayXd im_uxm = (ux.conjugate() * mdx).imag();
  const ArrayXd h1 = s * re_um + c * im_uxm;
  const ArrayXd quad = 0.25 * (u.abs2() - ux.abs2());
  const ArrayXd cross = 0.5 * (u.conjugate() * ux).imag();
  const ArrayXd h2 = quad * h1 + cross * (s * im_uxm - c * re_um);
  return {h1.sum(), h2.sum()};
}

}  // namespace

Hamiltonians hamiltonians(const FieldBundle& b) {
  return hamiltonian_sums(b.u.values(), b.ux.values(), b.m.values() * b.grid().spacing(), b.theta);
}

Hamiltonians hamiltonians(const GridFunction& m, double theta) { return hamiltonians(assemble_fields(m, theta)); }

double blowup_monitor(const FieldBundle& b) { return b.Jx.minCoeff(); }

DiagnosticsRecord record_from_bundle(double t, const FieldBundle& b) {
  DiagnosticsRecord r;
  r.t = t;
  r.l1_m = lp_norm(b.m, 1.0);
  r.linf_m = lp_norm(b.m, kInf);
  const Hamiltonians h = hamiltonians(b);
  r.H1 = h.H1;
  r.H2 = h.H2;
  r.max_abs_u = b.u.values().abs().maxCoeff();
  r.max_abs_ux = b.ux.values().abs().maxCoeff();
  r.inf_Jx = blowup_monitor(b);
  return r;
}

DiagnosticsRecord record_from_particles(const ParticleEnsemble& ens) {
  DiagnosticsRecord r;
  r.t = ens.t;
  r.l1_m = ens.w.sum();
  if (ens.size() == 0) return r;
  const KernelSums f = velocity_at(ens, ens.h);
  const ArrayXcd wt = ens.weights();
  const ArrayXcd m = particle_momentum(ens);
  r.linf_m = m.abs().maxCoeff();
  const Hamiltonians h = hamiltonian_sums(f.u, f.ux, wt, ens.theta);
  r.H1 = h.H1;
  r.H2 = h.H2;
  r.max_abs_u = f.u.abs().maxCoeff();
  r.max_abs_ux = f.ux.abs().maxCoeff();
  // Compression rate of each gap, (J_{j+1} - J_j) / gap: J_x to O(dx^2) while
  // smooth, and it diverges like -1/(T - t) as two particles close in.
  const ArrayXd J = (std::polar(1.0, ens.theta) * ((f.u + f.ux) * (f.u - f.ux).conjugate())).real();
  const Index n = ens.size();
  const double P = 2.0 * ens.half_length;
  r.inf_Jx = kInf;
  for (Index j = 0; j < n && n > 1; ++j) {
    double gap = ens.h[(j + 1) % n] - ens.h[j];
    gap -= P * std::floor(gap / P);
    if (gap > 0.0) r.inf_Jx = std::min(r.inf_Jx, (J[(j + 1) % n] - J[j]) / gap);
  }
  if (std::isinf(r.inf_Jx)) r.inf_Jx = 0.0;
  r.min_spacing_ratio = check_order(ens).min_spacing_ratio;
  return r;
}

double predicted_blowup_time(double Jx0, double C0, double m0_abs) {
  const double q = 2.0 * C0 * m0_abs;
  if (!(q > 0.0) || !(Jx0 <= -std::sqrt(q))) return std::numeric_limits<double>::quiet_NaN();
  const double J = -Jx0;
  // Smaller root of 1 - J t + (C0 |m0| / 2) t^2, in the cancellation-free form.
  return 2.0 / (J + std::sqrt(std::max(0.0, J * J - q)));
}

BlowupPrediction predict_blowup(const GridFunction& m0, double theta, double c0_factor) {
  check_theta(theta);
  if (!m0.is_finite()) throw BlownUpState("prediction requested on a non-finite state");
  BlowupPrediction p;
  const double l1 = lp_norm(m0, 1.0);
  if (l1 == 0.0) return p;
  p.C0 = c0_factor * l1 * l1 * l1;
  const FieldBundle b = assemble_fields(m0, theta);
  const ArrayXd am = m0.values().abs();
  const double floor = 1e-12 * am.maxCoeff();
  for (Index j = 0; j < am.size(); ++j) {
    if (am[j] < floor) continue;
    const double margin = -b.Jx[j] / std::sqrt(2.0 * p.C0 * am[j]) - 1.0;
    p.margin = std::max(p.margin, margin);
    const double T = predicted_blowup_time(b.Jx[j], p.C0, am[j]);
    if (std::isnan(T)) continue;
    if (!p.triggered || T < p.T_star) {
      p.triggered = true;
      p.T_star = T;
      p.index = j;
      p.x0 = m0.grid().x(j);
      p.Jx0 = b.Jx[j];
      p.m0_at_x0 = am[j];
    }
  }
  return p;
}

namespace {

struct Probe {
  FieldBundle now;
  FieldBundle fwd;
  FieldBundle bwd;
};

Probe probe(const MomentumState& s, double dt_probe, const SpectralOptions& opts) {
  if (s.blown_up || !s.m.is_finite()) throw BlownUpState("transport residual needs a classical state");
  if (!(dt_probe > 0.0)) throw InvalidParameter("dt_probe must be positive");
  return {assemble_fields(s.m, s.theta), assemble_fields(rk4_advance(s.m, s.theta, dt_probe, opts), s.theta),
          assemble_fields(rk4_advance(s.m, s.theta, -dt_probe, opts), s.theta)};
}

ArrayXcd dx_of(const Grid& g, const ArrayXcd& f) { return spectral_derivative(GridFunction(g, f)).values(); }

ArrayXcd inv_helmholtz(const Grid& g, const ArrayXcd& f) { return u_from_m(GridFunction(g, f)).values(); }

struct Forcing {
  ArrayXcd plus;
  ArrayXcd minus;
};

// L+- = inv(1 - d^2)(1 +- d)(-J_x u + i Im(K) m) -+ inv(1 - d^2)(1 +- d)(J_x u_x)
Forcing transport_forcing(const FieldBundle& b) {
  const Grid& g = b.grid();
  const ArrayXcd S = -b.Jx.cast<cplx>() * b.u.values() + cplx(0.0, 1.0) * b.K.imag().cast<cplx>() * b.m.values();
  const ArrayXcd T = b.Jx.cast<cplx>() * b.ux.values();
  const ArrayXcd P = S - T, M = S + T;
  return {inv_helmholtz(g, P + dx_of(g, P)), inv_helmholtz(g, M - dx_of(g, M))};
}

}  // namespace

TransportResidual vpm_transport_residual(const MomentumState& s, double dt_probe, const SpectralOptions& opts) {
  const Probe p = probe(s, dt_probe, opts);
  const Grid& g = p.now.grid();
  const Forcing L = transport_forcing(p.now);
  const ArrayXcd J = p.now.J.cast<cplx>();
  const double inv2 = 1.0 / (2.0 * dt_probe);
  const ArrayXcd lp = (p.fwd.v_plus - p.bwd.v_plus) * inv2 + J * dx_of(g, p.now.v_plus);
  const ArrayXcd lm = (p.fwd.v_minus - p.bwd.v_minus) * inv2 + J * dx_of(g, p.now.v_minus);
  return {(lp - L.plus).abs().maxCoeff(), (lm - L.minus).abs().maxCoeff()};
}

JxTransportReport jx_transport_residual(const MomentumState& s, double dt_probe, const SpectralOptions& opts,
                                        double c0_factor) {
  const Probe p = probe(s, dt_probe, opts);
  const FieldBundle& b = p.now;
  const Grid& g = b.grid();
  const Forcing L = transport_forcing(b);
  const cplx e = std::polar(1.0, b.theta);
  const ArrayXcd& m = b.m.values();
  const ArrayXd Jxx = dx_of(g, b.Jx.cast<cplx>()).real();
  const ArrayXd lhs = (p.fwd.Jx - p.bwd.Jx) / (2.0 * dt_probe) + b.J * Jxx + b.Jx.square();
  const ArrayXd imeQ = (e * b.Q).imag();
  const ArrayXd rhs = imeQ * (e * (b.v_plus * m.conjugate() + b.v_minus.conjugate() * m)).imag() +
                      (e * (m.conjugate() * L.plus - m * L.minus.conjugate())).real();
  JxTransportReport r;
  r.residual = (lhs - rhs).abs().maxCoeff();
  r.slack = 10.0 * r.residual;
  const double l1 = lp_norm(b.m, 1.0);
  const double C0 = c0_factor * l1 * l1 * l1;
  r.lhs_max_excess = (lhs - C0 * m.abs()).maxCoeff();
  r.bound_holds = r.lhs_max_excess <= r.slack;
  return r;
}

}  // namespace peakon
