#include "peakon/littlewood_paley.hpp"

#include "peakon/errors.hpp"
#include "peakon/fft.hpp"

#include <algorithm>
#include <cmath>

namespace peakon {

namespace {

double bump(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = bump(t), b = bump(1.0 - t);
  return a / (a + b);
}

ArrayXd scaled(const ArrayXd& k, int q) { return k * std::ldexp(1.0, -q); }

}  // namespace

DyadicPartition::DyadicPartition(const Grid& grid) : grid_(grid) {
  q_max_ = static_cast<int>(std::ceil(std::log2(4.0 / 3.0 * grid.nyquist())));
  if (q_max_ < 0) q_max_ = 0;
}

double DyadicPartition::chi(double xi) {
  const double a = std::abs(xi);
  if (a <= 0.75) return 1.0;
  if (a >= 4.0 / 3.0) return 0.0;
  return smooth_step((4.0 / 3.0 - a) / (4.0 / 3.0 - 0.75));
}

double DyadicPartition::phi(double xi) { return chi(0.5 * xi) - chi(xi); }

ArrayXd DyadicPartition::block_multiplier(int q) const {
  if (q < -1) throw InvalidParameter("dyadic block index must be >= -1");
  const ArrayXd k = grid_.wavenumbers();
  if (q == -1) return k.unaryExpr([](double x) { return chi(x); });
  if (q > q_max_) return ArrayXd::Zero(k.size());
  return scaled(k, q).unaryExpr([](double x) { return phi(x); });
}

ArrayXd DyadicPartition::cutoff_multiplier(int q) const {
  if (q < 0) throw InvalidParameter("low-frequency cutoff index must be >= 0");
  return scaled(grid_.wavenumbers(), q).unaryExpr([](double x) { return chi(x); });
}

void BesovParams::validate() const {
  if (!std::isfinite(s)) throw InvalidParameter("Besov regularity must be finite");
  if (std::isnan(p) || p < 1.0) throw InvalidParameter("Besov integrability p must be >= 1");
  if (std::isnan(r) || r < 1.0) throw InvalidParameter("Besov summability r must be >= 1");
}

GridFunction dyadic_block(const GridFunction& f, int q) {
  const DyadicPartition part(f.grid());
  return apply_multiplier(f, part.block_multiplier(q).cast<cplx>());
}

GridFunction low_freq_cutoff(const GridFunction& f, int q) {
  const DyadicPartition part(f.grid());
  return apply_multiplier(f, part.cutoff_multiplier(q).cast<cplx>());
}

std::vector<BlockSummary> block_energies(const GridFunction& f, double p) {
  if (!f.is_finite()) throw BlownUpState("block energies of a non-finite state");
  const DyadicPartition part(f.grid());
  const ArrayXcd hat = fft::forward(f.values());
  std::vector<BlockSummary> out;
  for (int q = -1; q <= part.q_max(); ++q) {
    const GridFunction b = f.with_values(fft::inverse(hat * part.block_multiplier(q).cast<cplx>()));
    out.push_back({q, std::pow(lp_norm(b, 2.0), 2), lp_norm(b, p)});
  }
  return out;
}

double besov_norm(const GridFunction& f, const BesovParams& params) {
  params.validate();
  double acc = 0.0;
  for (const BlockSummary& b : block_energies(f, params.p)) {
    const double v = std::pow(2.0, b.q * params.s) * b.lp_norm;
    if (std::isinf(params.r)) acc = std::max(acc, v);
    else acc += std::pow(v, params.r);
  }
  return std::isinf(params.r) ? acc : std::pow(acc, 1.0 / params.r);
}

}  // namespace peakon
