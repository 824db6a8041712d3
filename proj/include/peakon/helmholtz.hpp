#pragma once

#include "peakon/grid.hpp"

namespace peakon {

// Spectral inverse of 1 - d^2/dx^2 and its x-derivative.
GridFunction u_from_m(const GridFunction& m);
GridFunction ux_from_m(const GridFunction& m);
// Forward operator 1 - d^2/dx^2, for round-trip checks.
GridFunction apply_helmholtz(const GridFunction& u);

/**
 * Periodic Green's function of 1 - d^2/dx^2 on [-L, L):
 *   G(d)  = cosh(L - |d|) / (2 sinh L)
 *   G'(d) = -sgn(d) sinh(L - |d|) / (2 sinh L),  G'(0) = 0.
 * Evaluated in the exponential form so large L does not overflow.
 */
class HelmholtzKernel {
 public:
  explicit HelmholtzKernel(double half_length);

  double half_length() const noexcept { return L_; }
  double wrap(double d) const noexcept;
  double value(double d) const noexcept;
  double slope(double d) const noexcept;

 private:
  double L_;
  double norm_;  // 1 / (2 (1 - e^{-2L}))
};

struct KernelSums {
  ArrayXcd u;
  ArrayXcd ux;
};

// Direct O(sources * targets) sums; the reference implementation.
cplx kernel_sum_u(const HelmholtzKernel& kernel, const ArrayXd& points, const ArrayXcd& weights, double x);
cplx kernel_sum_ux(const HelmholtzKernel& kernel, const ArrayXd& points, const ArrayXcd& weights, double x);

/**
 * u and u_x at every target from weighted sources, in O((S + T) log) time by
 * splitting the exponential kernel into left and right running sums.
 * Targets that coincide with a source get G'(0) = 0 for that source.
 * Points must lie in [-L, L).
 */
KernelSums evaluate_kernel_sums(const HelmholtzKernel& kernel, const ArrayXd& points, const ArrayXcd& weights,
                                const ArrayXd& targets);

}  // namespace peakon
