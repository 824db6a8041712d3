#pragma once

#include <Eigen/Core>

#include <complex>
#include <cstddef>
#include <limits>

namespace peakon {

using cplx = std::complex<double>;
using Eigen::ArrayXcd;
using Eigen::ArrayXd;
using Eigen::Index;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

/**
 * Uniform periodic grid on [-L, L) with N = 2^k samples, N >= 8.
 *
 * Sample j sits at x_j = -L + j*dx. Spectra use the unscaled forward DFT
 * in FFT order: bin n carries wavenumber k_n = pi*n'/L with n' = n for
 * n < N/2 and n' = n - N otherwise, so the Nyquist bin holds k = -pi/dx.
 * Odd-order derivative multipliers zero the Nyquist bin.
 */
class Grid {
 public:
  Grid(double half_length, Index point_count);

  double half_length() const noexcept { return half_length_; }
  Index point_count() const noexcept { return point_count_; }
  double spacing() const noexcept { return 2.0 * half_length_ / static_cast<double>(point_count_); }
  double period() const noexcept { return 2.0 * half_length_; }

  double x(Index j) const noexcept { return -half_length_ + static_cast<double>(j) * spacing(); }
  ArrayXd nodes() const;

  // k_n in FFT order, Nyquist included as -pi/dx.
  ArrayXd wavenumbers() const;
  // Same as wavenumbers() with the Nyquist bin set to zero.
  ArrayXd derivative_wavenumbers() const;
  double nyquist() const noexcept { return kPi / spacing(); }

  // Maps any real x into [-L, L).
  double wrap(double x) const noexcept;

  bool operator==(const Grid& other) const noexcept {
    return half_length_ == other.half_length_ && point_count_ == other.point_count_;
  }

 private:
  double half_length_;
  Index point_count_;
};

/// Complex samples on a Grid. Immutable after construction.
class GridFunction {
 public:
  GridFunction(Grid grid, ArrayXcd values);

  static GridFunction zero(const Grid& grid);

  template <typename F>
  static GridFunction sample(const Grid& grid, F&& f) {
    ArrayXcd v(grid.point_count());
    for (Index j = 0; j < grid.point_count(); ++j) v[j] = cplx(f(grid.x(j)));
    return GridFunction(grid, std::move(v));
  }

  const Grid& grid() const noexcept { return grid_; }
  const ArrayXcd& values() const noexcept { return values_; }
  Index size() const noexcept { return values_.size(); }
  cplx operator[](Index j) const { return values_[j]; }

  bool is_finite() const;

  GridFunction rotated(double alpha) const;  // e^{i alpha} f
  GridFunction with_values(ArrayXcd values) const { return GridFunction(grid_, std::move(values)); }

 private:
  Grid grid_;
  ArrayXcd values_;
};

/// f = f1 + i f2 split into real samples.
struct ComplexPair {
  ArrayXd real;
  ArrayXd imag;

  static ComplexPair split(const GridFunction& f);
  ArrayXcd join() const;
};

struct NormSandwich {
  double lower;  // (|f1|_p + |f2|_p) / 2
  double mid;    // |f1 + i f2|_p
  double upper;  // |f1|_p + |f2|_p
};

// Riemann-sum L^p norm of the complex modulus; p = kInf gives the max.
// Throws InvalidParameter for p < 1 and BlownUpState on non-finite samples.
double lp_norm(const GridFunction& f, double p);
double lp_norm(const ArrayXcd& values, double dx, double p);
double lp_norm(const ArrayXd& values, double dx, double p);

GridFunction spectral_derivative(const GridFunction& f);

// Applies a Fourier multiplier given in FFT order.
GridFunction apply_multiplier(const GridFunction& f, const ArrayXcd& multiplier);

NormSandwich complex_pair_norm_sandwich(const ArrayXd& f1, const ArrayXd& f2, double dx, double p);

// Sum over the spectrum of |f_hat|^2 scaled so that it equals lp_norm(f, 2)^2.
double spectral_energy(const GridFunction& f);

}  // namespace peakon
