#pragma once

#include "peakon/grid.hpp"

#include <cmath>
#include <random>

namespace peakon::test {

// Smooth, well-localized complex test datum: a few Gaussians with phase ramps.
inline GridFunction gaussian_mix(const Grid& g, std::mt19937_64& rng, int bumps = 3) {
  std::normal_distribution<double> n(0.0, 1.0);
  std::uniform_real_distribution<double> w(0.5, 1.5);
  ArrayXcd v = ArrayXcd::Zero(g.point_count());
  for (int b = 0; b < bumps; ++b) {
    const cplx amp(n(rng), n(rng));
    const double c = n(rng), s = w(rng), k = n(rng);
    for (Index j = 0; j < v.size(); ++j) {
      const double x = g.x(j);
      v[j] += amp * std::exp(-(x - c) * (x - c) / (2 * s * s)) * std::polar(1.0, k * x);
    }
  }
  return GridFunction(g, v);
}

inline ArrayXcd random_samples(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> d(0.0, 1.0);
  ArrayXcd v(n);
  for (Index j = 0; j < n; ++j) v[j] = cplx(d(rng), d(rng));
  return v;
}

inline double sup(const ArrayXcd& a) { return a.abs().maxCoeff(); }

// Convolution of e^{-|x|} with a unit-mass Gaussian of width s.
inline double exp_gauss_convolution(double x, double s) {
  const double r = std::sqrt(2.0) * s;
  return 0.5 * std::exp(0.5 * s * s) *
         (std::exp(-x) * std::erfc((s * s - x) / r) + std::exp(x) * std::erfc((s * s + x) / r));
}

}  // namespace peakon::test
