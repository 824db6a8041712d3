#include "peakon/particles.hpp"

#include "peakon/errors.hpp"
#include "peakon/fields.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace peakon {

namespace {

double wrap_to(double x, double L) {
  const double p = 2.0 * L;
  double y = x - p * std::floor((x + L) / p);
  if (y >= L) y -= p;
  if (y < -L) y = -L;
  return y;
}

ArrayXd wrapped(const ArrayXd& h, double L) {
  return h.unaryExpr([L](double x) { return wrap_to(x, L); });
}

struct Sources {
  ArrayXd points;
  ArrayXcd weights;
};

Sources active_sources(const ParticleEnsemble& ens, const ArrayXd& h, const ArrayXd& psi, double drop) {
  const double cut = ens.w.size() ? drop * ens.w.maxCoeff() : 0.0;
  Index n = 0;
  for (Index j = 0; j < ens.size(); ++j) n += ens.w[j] > cut ? 1 : 0;
  Sources s{ArrayXd(n), ArrayXcd(n)};
  Index i = 0;
  for (Index j = 0; j < ens.size(); ++j) {
    if (ens.w[j] > cut) {
      s.points[i] = h[j];
      s.weights[i] = std::polar(ens.w[j], ens.phase0[j] + psi[j]);
      ++i;
    }
  }
  return s;
}

ParticleRates rates_at(const ParticleEnsemble& ens, const ArrayXd& h, const ArrayXd& psi,
                       const ParticleOptions& opts) {
  const HelmholtzKernel kernel(ens.half_length);
  const Sources src = active_sources(ens, h, psi, opts.drop_threshold);
  KernelSums f = evaluate_kernel_sums(kernel, src.points, src.weights, h);
  const ArrayXcd eQ = std::polar(1.0, ens.theta) * ((f.u + f.ux) * (f.u - f.ux).conjugate());
  return {eQ.real(), eQ.imag(), std::move(f.u), std::move(f.ux)};
}

}  // namespace

ArrayXcd ParticleEnsemble::weights() const {
  ArrayXcd out(size());
  for (Index j = 0; j < size(); ++j) out[j] = std::polar(w[j], phase0[j] + psi[j]);
  return out;
}

ParticleEnsemble init_particles(const GridFunction& m0, double theta) {
  check_theta(theta);
  if (!m0.is_finite()) throw BlownUpState("particles seeded from a non-finite state");
  const Grid& g = m0.grid();
  ParticleEnsemble e;
  e.t = 0.0;
  e.theta = theta;
  e.half_length = g.half_length();
  e.dx = g.spacing();
  e.h = g.nodes();
  e.psi = ArrayXd::Zero(g.point_count());
  e.w = m0.values().abs() * g.spacing();
  e.phase0 = m0.values().arg();
  return e;
}

ParticleRates particle_rhs(const ParticleEnsemble& ens, const ParticleOptions& opts) {
  return rates_at(ens, ens.h, ens.psi, opts);
}

KernelSums velocity_at(const ParticleEnsemble& ens, const ArrayXd& targets, const ParticleOptions& opts) {
  const HelmholtzKernel kernel(ens.half_length);
  const Sources src = active_sources(ens, ens.h, ens.psi, opts.drop_threshold);
  return evaluate_kernel_sums(kernel, src.points, src.weights, wrapped(targets, ens.half_length));
}

OrderCheck check_order(const ParticleEnsemble& ens) {
  const Index n = ens.size();
  const double P = 2.0 * ens.half_length;
  if (n < 2) return {true, n == 1 ? P / ens.dx : kInf};
  double total = 0.0, smallest = kInf;
  for (Index j = 0; j < n; ++j) {
    const double d = ens.h[(j + 1) % n] - ens.h[j];
    double g = d - P * std::floor(d / P);
    if (g >= P) g -= P;
    total += g;
    smallest = std::min(smallest, g);
  }
  // An order violation turns one gap into nearly a full period.
  return {total <= P * (1.0 + 1e-9), smallest / ens.dx};
}

ArrayXcd particle_momentum(const ParticleEnsemble& ens) {
  const Index n = ens.size();
  const double P = 2.0 * ens.half_length;
  const ArrayXcd wt = ens.weights();
  ArrayXcd m(n);
  for (Index j = 0; j < n; ++j) {
    double d = ens.h[(j + 1) % n] - ens.h[(j + n - 1) % n];
    d -= P * std::floor(d / P);
    m[j] = d > 0.0 ? 2.0 * wt[j] / d : cplx(kInf, 0.0);
  }
  return m;
}

ParticleEnsemble step_particles(const ParticleEnsemble& ens, double dt, const ParticleOptions& opts) {
  if (ens.blown_up && !opts.continue_past_blowup)
    throw BlownUpState("ensemble already flagged as blown up at t = " + std::to_string(ens.blowup_time));
  if (!(dt > 0.0)) throw InvalidParameter("time step must be positive");
  const double L = ens.half_length;

  const ParticleRates k1 = particle_rhs(ens, opts);
  const double jmax = k1.dh.size() ? k1.dh.abs().maxCoeff() : 0.0;
  const double limit = jmax > 0.0 ? opts.cfl * ens.dx / jmax : kInf;
  if (std::isfinite(jmax) && dt > limit) {
    std::ostringstream os;
    os << "particle step " << dt << " exceeds the CFL limit " << limit;
    throw CflViolation(os.str(), limit);
  }

  ParticleEnsemble out = ens;
  out.t = ens.t + dt;
  auto flag = [&](const std::string& why) {
    if (!out.blown_up) {
      out.blown_up = true;
      out.blowup_time = out.t;
      out.blowup_reason = why;
    }
  };
  auto stage = [&](const ParticleRates& k, double a, ParticleRates& next) {
    const ArrayXd hs = ens.h + a * k.dh;
    if (!hs.allFinite()) return false;
    next = rates_at(ens, wrapped(hs, L), ens.psi + a * k.dpsi, opts);
    return next.dh.allFinite() && next.dpsi.allFinite();
  };

  ParticleRates k2, k3, k4;
  if (!k1.dh.allFinite() || !k1.dpsi.allFinite() || !stage(k1, 0.5 * dt, k2) || !stage(k2, 0.5 * dt, k3) ||
      !stage(k3, dt, k4)) {
    flag("non-finite");
    return out;
  }
  out.h = wrapped(ens.h + (dt / 6.0) * (k1.dh + 2.0 * k2.dh + 2.0 * k3.dh + k4.dh), L);
  out.psi = ens.psi + (dt / 6.0) * (k1.dpsi + 2.0 * k2.dpsi + 2.0 * k3.dpsi + k4.dpsi);

  const OrderCheck oc = check_order(out);
  if (!oc.ordered) flag("order");
  else if (oc.min_spacing_ratio < opts.thresholds.spacing_ratio) flag("spacing");
  return out;
}

GridFunction reconstruct_m(const ParticleEnsemble& ens, const Grid& target, double width_cells) {
  if (!(width_cells > 0.0)) throw InvalidParameter("deposition width must be positive");
  if (target.half_length() != ens.half_length) throw InvalidParameter("target grid has a different period");
  if (!ens.h.allFinite() || !ens.psi.allFinite()) throw BlownUpState("reconstruction of a non-finite ensemble");
  const Index N = target.point_count();
  const double dx = target.spacing();
  const double L = target.half_length();
  const double sigma = width_cells * dx;
  const Index reach = std::min<Index>(static_cast<Index>(std::ceil(6.0 * sigma / dx)), N / 2 - 1);
  ArrayXcd out = ArrayXcd::Zero(N);
  ArrayXd g(2 * reach + 1);
  const ArrayXcd wt = ens.weights();
  for (Index j = 0; j < ens.size(); ++j) {
    if (ens.w[j] == 0.0) continue;
    const double s = (ens.h[j] + L) / dx;
    const Index i0 = static_cast<Index>(std::llround(s));
    const double frac = s - static_cast<double>(i0);
    for (Index r = -reach; r <= reach; ++r) {
      const double d = (static_cast<double>(r) - frac) * dx;
      g[r + reach] = std::exp(-0.5 * d * d / (sigma * sigma));
    }
    const cplx c = wt[j] / (g.sum() * dx);
    for (Index r = -reach; r <= reach; ++r) {
      Index i = (i0 + r) % N;
      if (i < 0) i += N;
      out[i] += c * g[r + reach];
    }
  }
  return GridFunction(target, std::move(out));
}

ParticleRun run_particles(const ParticleEnsemble& ens0, double dt, double t_end, int snapshot_every,
                          const ParticleOptions& opts) {
  if (!(dt > 0.0)) throw InvalidParameter("time step must be positive");
  if (!(t_end >= ens0.t)) throw InvalidParameter("t_end must not precede the initial time");
  if (snapshot_every < 1) throw InvalidParameter("snapshot_every must be at least 1");
  if (ens0.blown_up && !opts.continue_past_blowup) throw BlownUpState("initial ensemble flagged as blown up");

  ParticleRun out{ens0, {}, {}, {}};
  const double linf0 = ens0.size() ? particle_momentum(ens0).abs().maxCoeff() : 0.0;

  auto observe = [&](const ParticleEnsemble& e, bool keep) {
    DiagnosticsRecord r = record_from_particles(e);
    out.monitor.push_back({e.t, r.inf_Jx, r.linf_m});
    if (keep) {
      out.snapshots.push_back(e);
      out.diagnostics.push_back(r);
    }
    return r;
  };

  observe(ens0, true);
  const double span = t_end - ens0.t;
  const long steps = span <= 0.0 ? 0 : std::max(1L, static_cast<long>(std::ceil(span / dt - 1e-9)));
  const double eps = 1e-12 * std::max(1.0, std::abs(t_end));
  ParticleEnsemble cur = ens0;
  long n = 0;  // completed full-size steps
  while (steps > 0 && cur.t < t_end - eps) {
    const double full = std::min(dt, t_end - cur.t);
    const bool was_flagged = cur.blown_up;
    double h = full;
    ParticleEnsemble next = step_particles(cur, h, opts);
    for (int k = 0; k < opts.max_halvings && !was_flagged && next.blown_up && next.blowup_reason == "order"; ++k) {
      h *= 0.5;
      next = step_particles(cur, h, opts);
    }
    cur = std::move(next);
    const bool whole = h == full;
    if (whole) ++n;
    const bool last = t_end - cur.t <= eps;
    if (last) cur.t = t_end;
    if (cur.blown_up && !was_flagged) cur.blowup_time = cur.t;
    const bool finite = cur.h.allFinite() && cur.psi.allFinite();
    if (!finite) {
      out.snapshots.push_back(cur);
      break;
    }
    const bool keep = (whole && n % snapshot_every == 0) || last || (cur.blown_up && !was_flagged);
    const DiagnosticsRecord r = observe(cur, keep);
    if (!cur.blown_up) {
      std::string reason;
      if (r.inf_Jx < -opts.thresholds.monitor) reason = "monitor";
      else if (r.linf_m > opts.thresholds.linf_factor * linf0) reason = "linf";
      else if (r.min_spacing_ratio < opts.thresholds.spacing_ratio) reason = "spacing";
      if (!reason.empty()) {
        cur.blown_up = true;
        cur.blowup_time = cur.t;
        cur.blowup_reason = reason;
        if (keep) out.snapshots.back() = cur;
        else {
          out.snapshots.push_back(cur);
          out.diagnostics.push_back(r);
        }
      }
    }
    if (cur.blown_up && !was_flagged && keep) out.snapshots.back() = cur;
    if (cur.blown_up && !opts.continue_past_blowup) break;
  }
  out.final_state = cur;
  return out;
}

}  // namespace peakon
