#include "peakon/grid.hpp"

#include "peakon/errors.hpp"
#include "peakon/fft.hpp"

#include <cmath>
#include <string>

namespace peakon {

Grid::Grid(double half_length, Index point_count) : half_length_(half_length), point_count_(point_count) {
  if (!(half_length > 0.0) || !std::isfinite(half_length))
    throw InvalidParameter("grid half length must be positive and finite");
  if (point_count < 8 || (point_count & (point_count - 1)) != 0)
    throw InvalidParameter("grid point count must be a power of two >= 8, got " + std::to_string(point_count));
}

ArrayXd Grid::nodes() const {
  ArrayXd x(point_count_);
  for (Index j = 0; j < point_count_; ++j) x[j] = this->x(j);
  return x;
}

ArrayXd Grid::wavenumbers() const {
  ArrayXd k(point_count_);
  const double base = kPi / half_length_;
  for (Index n = 0; n < point_count_; ++n) {
    const Index s = n < point_count_ / 2 ? n : n - point_count_;
    k[n] = base * static_cast<double>(s);
  }
  return k;
}

ArrayXd Grid::derivative_wavenumbers() const {
  ArrayXd k = wavenumbers();
  k[point_count_ / 2] = 0.0;
  return k;
}

double Grid::wrap(double x) const noexcept {
  const double p = period();
  double y = x - p * std::floor((x + half_length_) / p);
  if (y >= half_length_) y -= p;  // floor rounding at the right edge
  if (y < -half_length_) y = -half_length_;
  return y;
}

GridFunction::GridFunction(Grid grid, ArrayXcd values) : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.point_count())
    throw InvalidParameter("sample count " + std::to_string(values_.size()) + " does not match grid size " +
                           std::to_string(grid_.point_count()));
}

GridFunction GridFunction::zero(const Grid& grid) { return GridFunction(grid, ArrayXcd::Zero(grid.point_count())); }

bool GridFunction::is_finite() const { return values_.allFinite(); }

GridFunction GridFunction::rotated(double alpha) const {
  return GridFunction(grid_, values_ * std::polar(1.0, alpha));
}

ComplexPair ComplexPair::split(const GridFunction& f) { return {f.values().real(), f.values().imag()}; }

ArrayXcd ComplexPair::join() const {
  if (real.size() != imag.size()) throw InvalidParameter("complex pair parts differ in length");
  ArrayXcd out(real.size());
  out.real() = real;
  out.imag() = imag;
  return out;
}

namespace {

double modulus_norm(const ArrayXd& a, double dx, double p) {
  if (std::isnan(p) || p < 1.0) throw InvalidParameter("L^p norm needs p >= 1");
  if (!a.allFinite()) throw BlownUpState("norm requested on a non-finite state");
  if (a.size() == 0) return 0.0;
  if (std::isinf(p)) return a.maxCoeff();
  if (p == 1.0) return (a * dx).sum();  // same rounding as particle weight sums
  if (p == 2.0) return std::sqrt(a.square().sum() * dx);
  // Scale by the max so large p does not overflow.
  const double top = a.maxCoeff();
  if (top == 0.0) return 0.0;
  return top * std::pow((a / top).pow(p).sum() * dx, 1.0 / p);
}

}  // namespace

double lp_norm(const ArrayXcd& values, double dx, double p) { return modulus_norm(values.abs(), dx, p); }

double lp_norm(const ArrayXd& values, double dx, double p) { return modulus_norm(values.abs(), dx, p); }

double lp_norm(const GridFunction& f, double p) { return lp_norm(f.values(), f.grid().spacing(), p); }

GridFunction apply_multiplier(const GridFunction& f, const ArrayXcd& multiplier) {
  if (!f.is_finite()) throw BlownUpState("spectral operation on a non-finite state");
  if (multiplier.size() != f.size()) throw InvalidParameter("multiplier length mismatch");
  return f.with_values(fft::inverse(fft::forward(f.values()) * multiplier));
}

GridFunction spectral_derivative(const GridFunction& f) {
  const ArrayXd k = f.grid().derivative_wavenumbers();
  return apply_multiplier(f, k.cast<cplx>() * cplx(0.0, 1.0));
}

NormSandwich complex_pair_norm_sandwich(const ArrayXd& f1, const ArrayXd& f2, double dx, double p) {
  if (f1.size() != f2.size()) throw InvalidParameter("complex pair parts differ in length");
  const double a = lp_norm(f1, dx, p);
  const double b = lp_norm(f2, dx, p);
  ArrayXcd f(f1.size());
  f.real() = f1;
  f.imag() = f2;
  NormSandwich s{0.5 * (a + b), lp_norm(f, dx, p), a + b};
  // Small relative slack: the three values come from separate roundings.
  const double slack = 1e-13 * s.upper;
  if (s.lower > s.mid + slack || s.mid > s.upper + slack)
    throw std::logic_error("norm sandwich violated");
  return s;
}

double spectral_energy(const GridFunction& f) {
  const ArrayXcd hat = fft::forward(f.values());
  // Parseval for the unscaled DFT: sum |f_j|^2 = (1/N) sum |hat_n|^2.
  return hat.abs2().sum() * f.grid().spacing() / static_cast<double>(f.size());
}

}  // namespace peakon
