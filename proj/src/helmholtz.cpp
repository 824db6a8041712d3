#include "peakon/helmholtz.hpp"

#include "peakon/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace peakon {

GridFunction u_from_m(const GridFunction& m) {
  const ArrayXd k = m.grid().wavenumbers();
  return apply_multiplier(m, (1.0 / (1.0 + k.square())).cast<cplx>());
}

GridFunction ux_from_m(const GridFunction& m) {
  const Grid& g = m.grid();
  const ArrayXd k = g.derivative_wavenumbers();
  const ArrayXd kk = g.wavenumbers();
  return apply_multiplier(m, (k / (1.0 + kk.square())).cast<cplx>() * cplx(0.0, 1.0));
}

GridFunction apply_helmholtz(const GridFunction& u) {
  const ArrayXd k = u.grid().wavenumbers();
  return apply_multiplier(u, (1.0 + k.square()).cast<cplx>());
}

HelmholtzKernel::HelmholtzKernel(double half_length)
    : L_(half_length), norm_(0.5 / -std::expm1(-2.0 * half_length)) {
  if (!(half_length > 0.0) || !std::isfinite(half_length)) throw InvalidParameter("kernel half length must be positive");
}

double HelmholtzKernel::wrap(double d) const noexcept {
  const double p = 2.0 * L_;
  double y = d - p * std::floor((d + L_) / p);
  if (y >= L_) y -= p;
  return y;
}

double HelmholtzKernel::value(double d) const noexcept {
  const double a = std::abs(wrap(d));
  return (std::exp(-a) + std::exp(a - 2.0 * L_)) * norm_;
}

double HelmholtzKernel::slope(double d) const noexcept {
  const double w = wrap(d);
  if (w == 0.0) return 0.0;
  const double a = std::abs(w);
  const double s = w > 0.0 ? -1.0 : 1.0;
  return s * (std::exp(-a) - std::exp(a - 2.0 * L_)) * norm_;
}

namespace {

void check_sources(const ArrayXd& points, const ArrayXcd& weights) {
  if (points.size() != weights.size()) throw InvalidParameter("kernel sum: points and weights differ in length");
}

}  // namespace

cplx kernel_sum_u(const HelmholtzKernel& kernel, const ArrayXd& points, const ArrayXcd& weights, double x) {
  check_sources(points, weights);
  cplx s = 0.0;
  for (Index j = 0; j < points.size(); ++j) s += weights[j] * kernel.value(x - points[j]);
  return s;
}

cplx kernel_sum_ux(const HelmholtzKernel& kernel, const ArrayXd& points, const ArrayXcd& weights, double x) {
  check_sources(points, weights);
  cplx s = 0.0;
  for (Index j = 0; j < points.size(); ++j) s += weights[j] * kernel.slope(x - points[j]);
  return s;
}

KernelSums evaluate_kernel_sums(const HelmholtzKernel& kernel, const ArrayXd& points, const ArrayXcd& weights,
                                const ArrayXd& targets) {
  check_sources(points, weights);
  const double L = kernel.half_length();
  const Index ns = points.size();
  const Index nt = targets.size();
  KernelSums out{ArrayXcd::Zero(nt), ArrayXcd::Zero(nt)};
  if (ns == 0 || nt == 0) return out;

  std::vector<Index> si(static_cast<size_t>(ns)), ti(static_cast<size_t>(nt));
  std::iota(si.begin(), si.end(), Index{0});
  std::iota(ti.begin(), ti.end(), Index{0});
  std::stable_sort(si.begin(), si.end(), [&](Index a, Index b) { return points[a] < points[b]; });
  std::stable_sort(ti.begin(), ti.end(), [&](Index a, Index b) { return targets[a] < targets[b]; });
  std::vector<double> ys(static_cast<size_t>(ns));
  std::vector<cplx> cs(static_cast<size_t>(ns));
  for (Index j = 0; j < ns; ++j) {
    ys[static_cast<size_t>(j)] = points[si[static_cast<size_t>(j)]];
    cs[static_cast<size_t>(j)] = weights[si[static_cast<size_t>(j)]];
  }

  // Sources strictly behind the target: direct image plus the image one
  // period ahead, e^{-(x-y)} + e^{-(L-x)} e^{-(L+y)}.
  std::vector<cplx> b1(static_cast<size_t>(nt)), b2(static_cast<size_t>(nt));
  {
    cplx run = 0.0, far = 0.0;
    double anchor = -L;
    size_t i = 0;
    for (Index t : ti) {
      const double x = targets[t];
      while (i < ys.size() && ys[i] < x) {
        run = run * std::exp(-(ys[i] - anchor)) + cs[i];
        anchor = ys[i];
        far += cs[i] * std::exp(-(L + ys[i]));
        ++i;
      }
      b1[static_cast<size_t>(t)] = run * std::exp(-(x - anchor));
      b2[static_cast<size_t>(t)] = far * std::exp(-(L - x));
    }
  }
  // Sources strictly ahead: e^{-(y-x)} + e^{-(L+x)} e^{-(L-y)}.
  std::vector<cplx> a1(static_cast<size_t>(nt)), a2(static_cast<size_t>(nt));
  {
    cplx run = 0.0, far = 0.0;
    double anchor = L;
    size_t i = ys.size();
    for (auto it = ti.rbegin(); it != ti.rend(); ++it) {
      const Index t = *it;
      const double x = targets[t];
      while (i > 0 && ys[i - 1] > x) {
        --i;
        run = run * std::exp(-(anchor - ys[i])) + cs[i];
        anchor = ys[i];
        far += cs[i] * std::exp(-(L - ys[i]));
      }
      a1[static_cast<size_t>(t)] = run * std::exp(-(anchor - x));
      a2[static_cast<size_t>(t)] = far * std::exp(-(L + x));
    }
  }

  const double norm = 0.5 / -std::expm1(-2.0 * L);
  const double self = 1.0 + std::exp(-2.0 * L);
  for (Index t = 0; t < nt; ++t) {
    const double x = targets[t];
    auto [lo, hi] = std::equal_range(ys.begin(), ys.end(), x);
    cplx eq = 0.0;
    for (auto p = lo; p != hi; ++p) eq += cs[static_cast<size_t>(p - ys.begin())];
    const size_t s = static_cast<size_t>(t);
    out.u[t] = (b1[s] + b2[s] + a1[s] + a2[s] + eq * self) * norm;
    out.ux[t] = (-(b1[s] - b2[s]) + (a1[s] - a2[s])) * norm;
  }
  return out;
}

}  // namespace peakon
