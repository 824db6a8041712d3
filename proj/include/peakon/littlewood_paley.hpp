#pragma once

#include "peakon/grid.hpp"

#include <vector>

namespace peakon {

/**
 * Smooth dyadic partition of frequency space.
 *
 * chi(xi) = 1 for |xi| <= 3/4, 0 for |xi| >= 4/3, and in between
 *   chi = s((4/3 - |xi|) / (4/3 - 3/4)),  s(t) = f(t) / (f(t) + f(1 - t)),
 *   f(t) = exp(-1/t) for t > 0 and 0 otherwise.
 * phi(xi) = chi(xi/2) - chi(xi), supported in 3/4 <= |xi| <= 8/3, so that
 * chi + sum_{q >= 0} phi(2^-q xi) telescopes to 1.
 * Blocks run over q = -1 .. q_max with q_max = ceil(log2(4/3 k_nyquist));
 * every higher block vanishes on the grid.
 */
class DyadicPartition {
 public:
  explicit DyadicPartition(const Grid& grid);

  static double chi(double xi);
  static double phi(double xi);

  int q_max() const noexcept { return q_max_; }
  const Grid& grid() const noexcept { return grid_; }

  // Multiplier of block q in FFT order (q = -1 is the low-frequency ball).
  ArrayXd block_multiplier(int q) const;
  // chi(2^-q xi), the multiplier of S_q.
  ArrayXd cutoff_multiplier(int q) const;

 private:
  Grid grid_;
  int q_max_;
};

struct BesovParams {
  double s = 0.0;
  double p = 2.0;  // kInf allowed
  double r = 2.0;  // kInf allowed

  void validate() const;
};

GridFunction dyadic_block(const GridFunction& f, int q);
GridFunction low_freq_cutoff(const GridFunction& f, int q);
double besov_norm(const GridFunction& f, const BesovParams& params);

struct BlockSummary {
  int q;
  double l2_energy;  // ||Delta_q f||_2^2
  double lp_norm;    // ||Delta_q f||_p
};

std::vector<BlockSummary> block_energies(const GridFunction& f, double p);

}  // namespace peakon
