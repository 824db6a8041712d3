#pragma once

#include "peakon/grid.hpp"

#include <vector>

namespace peakon {

/// u = a e^{i phi} e^{i omega t - |x - x0 - c t|} with c = (2/3) a^2 cos(theta)
/// and omega = (2/3) a^2 sin(theta).
struct PeakonParams {
  double a = 1.0;
  double phi = 0.0;
  double theta = 0.0;
  double x0 = 0.0;

  // Throws InvalidParameter on a <= 0 or theta outside [0, pi).
  void validate() const;
  double c() const noexcept;
  double omega() const noexcept;
};

// Distance to the crest is wrapped into [-L, L).
cplx exact_u(const PeakonParams& p, double x, double t, double half_length);
GridFunction exact_u(const PeakonParams& p, const Grid& grid, double t);

// 2a e^{i phi} times a periodic Gaussian of width sigma centred at x0,
// normalized to unit mass under the grid quadrature.
GridFunction mollified_peakon_momentum(const PeakonParams& p, double sigma, const Grid& grid);

struct USnapshot {
  double t;
  GridFunction u;
};

struct TrackingResult {
  double speed;
  double frequency;
  // |fitted - exact| relative to (2/3) a^2, which is never zero.
  double speed_error;
  double frequency_error;
  // Largest over snapshots of min over shift s and phase beta of
  // ||u - e^{i beta} a e^{-|x - s|}||_2 / ||a e^{-|x - s|}||_2.
  double shape_error;
  std::vector<double> times;
  std::vector<double> crest;   // unwrapped in time
  std::vector<double> phase;   // unwrapped in time
  std::vector<double> height;
};

/**
 * Crest by quadratic interpolation of the |u| maximum, speed and frequency
 * by least squares on the unwrapped crest position and crest phase.
 * Throws TrackingFailure when the maximum drops below 0.1 a and
 * InvalidParameter with fewer than two snapshots.
 */
TrackingResult peakon_tracking_error(const std::vector<USnapshot>& series, const PeakonParams& p);

}  // namespace peakon
