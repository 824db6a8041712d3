#include "peakon/oracle.hpp"

#include "peakon/errors.hpp"
#include "peakon/fields.hpp"

#include <algorithm>
#include <cmath>

namespace peakon {

void PeakonParams::validate() const {
  if (!(a > 0.0) || !std::isfinite(a)) throw InvalidParameter("peakon amplitude must be positive");
  check_theta(theta);
  if (!std::isfinite(phi) || !std::isfinite(x0)) throw InvalidParameter("peakon phase and centre must be finite");
}

double PeakonParams::c() const noexcept { return 2.0 / 3.0 * a * a * std::cos(theta); }

double PeakonParams::omega() const noexcept { return 2.0 / 3.0 * a * a * std::sin(theta); }

namespace {

double wrap_distance(double d, double L) {
  const double P = 2.0 * L;
  double y = d - P * std::floor((d + L) / P);
  if (y >= L) y -= P;
  return y;
}

}  // namespace

cplx exact_u(const PeakonParams& p, double x, double t, double half_length) {
  const double d = wrap_distance(x - p.x0 - p.c() * t, half_length);
  return p.a * std::exp(-std::abs(d)) * std::polar(1.0, p.phi + p.omega() * t);
}

GridFunction exact_u(const PeakonParams& p, const Grid& grid, double t) {
  p.validate();
  return GridFunction::sample(grid, [&](double x) { return exact_u(p, x, t, grid.half_length()); });
}

GridFunction mollified_peakon_momentum(const PeakonParams& p, double sigma, const Grid& grid) {
  p.validate();
  if (!(sigma > 0.0)) throw InvalidParameter("mollification width must be positive");
  const double L = grid.half_length();
  ArrayXd g(grid.point_count());
  for (Index j = 0; j < g.size(); ++j) {
    const double d = wrap_distance(grid.x(j) - p.x0, L);
    double s = 0.0;
    for (int n = -1; n <= 1; ++n) {
      const double y = d - 2.0 * L * n;
      s += std::exp(-0.5 * y * y / (sigma * sigma));
    }
    g[j] = s;
  }
  g /= (g * grid.spacing()).sum();
  return GridFunction(grid, (2.0 * p.a) * g.cast<cplx>() * std::polar(1.0, p.phi));
}

namespace {

double fitted_slope(const std::vector<double>& t, const std::vector<double>& y) {
  const double n = static_cast<double>(t.size());
  double st = 0, sy = 0;
  for (size_t i = 0; i < t.size(); ++i) st += t[i], sy += y[i];
  const double mt = st / n, my = sy / n;
  double num = 0, den = 0;
  for (size_t i = 0; i < t.size(); ++i) {
    num += (t[i] - mt) * (y[i] - my);
    den += (t[i] - mt) * (t[i] - mt);
  }
  return den > 0.0 ? num / den : 0.0;
}

double unwrap_step(double prev, double raw, double period) {
  const double d = raw - prev;
  return prev + (d - period * std::round(d / period));
}

// Relative L2 distance to the best phase-rotated profile crested at s.
double profile_distance(const GridFunction& u, double a, double s) {
  const Grid& g = u.grid();
  const double L = g.half_length();
  ArrayXd prof(g.point_count());
  for (Index j = 0; j < prof.size(); ++j) prof[j] = a * std::exp(-std::abs(wrap_distance(g.x(j) - s, L)));
  const cplx inner = (prof.cast<cplx>() * u.values()).sum();
  const cplx rot = std::abs(inner) > 0.0 ? inner / std::abs(inner) : cplx(1.0, 0.0);
  const double num = (u.values() - rot * prof.cast<cplx>()).abs2().sum();
  return std::sqrt(num / prof.square().sum());
}

double best_profile_distance(const GridFunction& u, double a, double s0) {
  const double dx = u.grid().spacing();
  double best = profile_distance(u, a, s0);
  // Golden-section refinement within one cell of the interpolated crest.
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = s0 - dx, hi = s0 + dx;
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = profile_distance(u, a, x1), f2 = profile_distance(u, a, x2);
  for (int it = 0; it < 80 && hi - lo > 1e-14 * (1.0 + std::abs(s0)); ++it) {
    if (f1 < f2) {
      hi = x2, x2 = x1, f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = profile_distance(u, a, x1);
    } else {
      lo = x1, x1 = x2, f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = profile_distance(u, a, x2);
    }
  }
  return std::min({best, f1, f2});
}

}  // namespace

TrackingResult peakon_tracking_error(const std::vector<USnapshot>& series, const PeakonParams& p) {
  p.validate();
  if (series.size() < 2) throw InvalidParameter("tracking needs at least two snapshots");
  TrackingResult r{};
  r.shape_error = 0.0;
  for (const USnapshot& snap : series) {
    const GridFunction& u = snap.u;
    if (!u.is_finite()) throw TrackingFailure("non-finite snapshot at t = " + std::to_string(snap.t));
    const Grid& g = u.grid();
    const Index N = g.point_count();
    const ArrayXd au = u.values().abs();
    Index i = 0;
    const double top = au.maxCoeff(&i);
    if (top < 0.1 * p.a) throw TrackingFailure("crest lost at t = " + std::to_string(snap.t));
    const Index il = (i + N - 1) % N, ir = (i + 1) % N;
    const double y0 = au[il], y1 = au[i], y2 = au[ir];
    const double curv = y0 - 2.0 * y1 + y2;
    const double delta = curv < 0.0 ? std::clamp(0.5 * (y0 - y2) / curv, -0.5, 0.5) : 0.0;
    const double pos = g.wrap(g.x(i) + delta * g.spacing());
    const cplx u0 = u[il], u1 = u[i], u2 = u[ir];
    const cplx uc = u1 + 0.5 * delta * (u2 - u0) + 0.5 * delta * delta * (u0 - 2.0 * u1 + u2);
    const double ph = std::arg(uc);
    if (r.times.empty()) {
      r.crest.push_back(pos);
      r.phase.push_back(ph);
    } else {
      r.crest.push_back(unwrap_step(r.crest.back(), pos, g.period()));
      r.phase.push_back(unwrap_step(r.phase.back(), ph, 2.0 * kPi));
    }
    r.times.push_back(snap.t);
    r.height.push_back(y1 - 0.25 * (y0 - y2) * delta);
    r.shape_error = std::max(r.shape_error, best_profile_distance(u, p.a, pos));
  }
  r.speed = fitted_slope(r.times, r.crest);
  r.frequency = fitted_slope(r.times, r.phase);
  const double scale = 2.0 / 3.0 * p.a * p.a;
  r.speed_error = std::abs(r.speed - p.c()) / scale;
  r.frequency_error = std::abs(r.frequency - p.omega()) / scale;
  return r;
}

}  // namespace peakon
