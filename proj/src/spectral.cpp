#include "peakon/spectral.hpp"

#include "peakon/errors.hpp"
#include "peakon/fft.hpp"
#include "peakon/fields.hpp"

#include <cmath>
#include <sstream>
#include <tuple>

namespace peakon {

namespace {

struct RhsEval {
  ArrayXcd value;
  double max_J;
};

// Seven transforms: one forward of m, four inverses onto the 3/2 grid
// (v+, v-, m, m_x), one forward back and one final inverse.
RhsEval evaluate(const Grid& grid, const ArrayXcd& m, double theta, bool dealias) {
  const ArrayXd k = grid.derivative_wavenumbers();
  const ArrayXd kk = grid.wavenumbers();
  const ArrayXcd ik = k.cast<cplx>() * cplx(0.0, 1.0);
  const ArrayXcd mh = fft::forward(m);
  const ArrayXcd uh = mh / (1.0 + kk.square()).cast<cplx>();
  const ArrayXcd uxh = ik * uh;
  const ArrayXcd vph = uh + uxh;
  const ArrayXcd vmh = uh - uxh;
  const ArrayXcd mxh = ik * mh;
  const cplx e = std::polar(1.0, theta);

  auto combine = [&](const ArrayXcd& vp, const ArrayXcd& vm, const ArrayXcd& mm, const ArrayXcd& mx, double& max_J) {
    const ArrayXcd eQ = e * (vp * vm.conjugate());
    const ArrayXd J = eQ.real();
    const ArrayXd Jx = (e * (vp * mm.conjugate() - vm.conjugate() * mm)).real();
    max_J = J.abs().maxCoeff();
    ArrayXcd K(mm.size());
    K.real() = -Jx;
    K.imag() = eQ.imag();
    return ArrayXcd(-J.cast<cplx>() * mx + K * mm);
  };

  RhsEval out;
  if (dealias) {
    const fft::Padding pad(grid.point_count());
    const ArrayXcd prod =
        combine(pad.to_physical(vph), pad.to_physical(vmh), pad.to_physical(mh), pad.to_physical(mxh), out.max_J);
    out.value = fft::inverse(pad.to_spectrum(prod));
  } else {
    out.value = combine(fft::inverse(vph), fft::inverse(vmh), m, fft::inverse(mxh), out.max_J);
  }
  return out;
}

ArrayXcd filtered(const Grid& grid, const ArrayXcd& m, const SpectralOptions& opts) {
  const ArrayXd k = grid.wavenumbers().abs() / grid.nyquist();
  const ArrayXd sigma = (-opts.filter_strength * k.pow(opts.filter_order)).exp();
  return fft::inverse(fft::forward(m) * sigma.cast<cplx>());
}

ArrayXcd advance_values(const Grid& grid, const ArrayXcd& m, double theta, double dt, const SpectralOptions& opts,
                        double* max_J) {
  const RhsEval k1 = evaluate(grid, m, theta, opts.dealias);
  if (max_J) *max_J = k1.max_J;
  const ArrayXcd k2 = evaluate(grid, m + (0.5 * dt) * k1.value, theta, opts.dealias).value;
  const ArrayXcd k3 = evaluate(grid, m + (0.5 * dt) * k2, theta, opts.dealias).value;
  const ArrayXcd k4 = evaluate(grid, m + dt * k3, theta, opts.dealias).value;
  ArrayXcd next = m + (dt / 6.0) * (k1.value + 2.0 * k2 + 2.0 * k3 + k4);
  if (opts.filter) next = filtered(grid, next, opts);
  return next;
}

void require_classical(const MomentumState& s) {
  if (s.blown_up) throw BlownUpState("state already flagged as blown up at t = " + std::to_string(s.blowup_time));
  check_theta(s.theta);
  if (!s.m.is_finite()) throw BlownUpState("state holds non-finite samples");
}

}  // namespace

GridFunction rhs(const MomentumState& s, const SpectralOptions& opts) {
  require_classical(s);
  return s.m.with_values(evaluate(s.m.grid(), s.m.values(), s.theta, opts.dealias).value);
}

double max_stable_dt(const MomentumState& s, const SpectralOptions& opts) {
  const FieldBundle b = assemble_fields(s.m, s.theta);
  const double jmax = b.J.abs().maxCoeff();
  return jmax > 0.0 ? opts.cfl * s.m.grid().spacing() / jmax : kInf;
}

double spectral_tail_fraction(const GridFunction& f) {
  const ArrayXd power = fft::forward(f.values()).abs2();
  const double total = power.sum();
  if (!(total > 0.0)) return 0.0;
  const ArrayXd k = f.grid().wavenumbers().abs();
  const double cut = 2.0 / 3.0 * f.grid().nyquist();
  return (k > cut).select(power, 0.0).sum() / total;
}

GridFunction rk4_advance(const GridFunction& m, double theta, double dt, const SpectralOptions& opts) {
  return m.with_values(advance_values(m.grid(), m.values(), theta, dt, opts, nullptr));
}

MomentumState step(const MomentumState& s, double dt, const SpectralOptions& opts) {
  require_classical(s);
  if (!(dt > 0.0)) throw InvalidParameter("time step must be positive");
  double max_J = 0.0;
  ArrayXcd next = advance_values(s.m.grid(), s.m.values(), s.theta, dt, opts, &max_J);
  // The guard uses the stage-one speeds, which are those of the input state
  // (on the padded grid when dealiasing).
  const double limit = max_J > 0.0 ? opts.cfl * s.m.grid().spacing() / max_J : kInf;
  // Non-finite speeds mean the state has already blown up; flag it below.
  if (std::isfinite(max_J) && dt > limit) {
    std::ostringstream os;
    os << "time step " << dt << " exceeds the CFL limit " << limit;
    throw CflViolation(os.str(), limit);
  }
  MomentumState out(s.t + dt, s.m.with_values(std::move(next)), s.theta);
  if (!std::isfinite(max_J) || !out.m.is_finite()) {
    out.blown_up = true;
    out.blowup_time = out.t;
    out.blowup_reason = "non-finite";
  }
  return out;
}

SpectralRun run(const MomentumState& state0, double dt, double t_end, int snapshot_every,
                const SpectralOptions& opts) {
  require_classical(state0);
  if (!(dt > 0.0)) throw InvalidParameter("time step must be positive");
  if (!(t_end >= state0.t)) throw InvalidParameter("t_end must not precede the initial time");
  if (snapshot_every < 1) throw InvalidParameter("snapshot_every must be at least 1");

  SpectralRun out{state0, {}, {}, {}};
  const double linf0 = lp_norm(state0.m, kInf);

  auto observe = [&](const MomentumState& s, bool keep) {
    const FieldBundle b = assemble_fields(s.m, s.theta);
    const double mon = blowup_monitor(b);
    const double linf = b.m.values().abs().maxCoeff();
    out.monitor.push_back({s.t, mon, linf});
    if (keep) {
      out.snapshots.push_back(s);
      out.diagnostics.push_back(record_from_bundle(s.t, b));
    }
    const double tail = std::isfinite(opts.thresholds.spectral_tail) ? spectral_tail_fraction(s.m) : 0.0;
    return std::tuple{mon, linf, tail};
  };

  observe(state0, true);
  const double span = t_end - state0.t;
  const long steps = span <= 0.0 ? 0 : std::max(1L, static_cast<long>(std::ceil(span / dt - 1e-9)));
  MomentumState cur = state0;
  for (long n = 1; n <= steps; ++n) {
    const double h = n == steps ? t_end - cur.t : dt;
    cur = step(cur, h, opts);
    if (n == steps) cur.t = t_end;
    if (cur.blown_up) {
      out.monitor.push_back({cur.t, std::numeric_limits<double>::quiet_NaN(), kInf});
      out.snapshots.push_back(cur);
      break;
    }
    const bool keep = n % snapshot_every == 0 || n == steps;
    const auto [mon, linf, tail] = observe(cur, keep);
    std::string reason;
    if (mon < -opts.thresholds.monitor) reason = "monitor";
    else if (linf > opts.thresholds.linf_factor * linf0) reason = "linf";
    else if (tail > opts.thresholds.spectral_tail) reason = "unresolved";
    if (!reason.empty()) {
      cur.blown_up = true;
      cur.blowup_time = cur.t;
      cur.blowup_reason = reason;
      if (!keep) {
        out.snapshots.push_back(cur);
        out.diagnostics.push_back(record_from_bundle(cur.t, assemble_fields(cur.m, cur.theta)));
      } else {
        out.snapshots.back() = cur;
      }
      break;
    }
  }
  out.final_state = cur;
  return out;
}

}  // namespace peakon
