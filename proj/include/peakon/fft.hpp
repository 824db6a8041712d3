#pragma once

#include <Eigen/Core>

namespace peakon::fft {

// Unscaled forward DFT; inverse carries the 1/N.
// Plans are cached per thread.
Eigen::ArrayXcd forward(const Eigen::ArrayXcd& x);
Eigen::ArrayXcd inverse(const Eigen::ArrayXcd& x);

/**
 * 3/2-rule zero padding between an N-mode spectrum and a physical grid of
 * M = 3N/2 points. The Nyquist bin is dropped on the way up and left empty
 * on the way down.
 */
class Padding {
 public:
  explicit Padding(Eigen::Index n);

  Eigen::Index modes() const noexcept { return n_; }
  Eigen::Index padded_points() const noexcept { return m_; }

  // N-mode spectrum -> samples on the padded grid.
  Eigen::ArrayXcd to_physical(const Eigen::ArrayXcd& spectrum) const;
  // Samples on the padded grid -> truncated N-mode spectrum.
  Eigen::ArrayXcd to_spectrum(const Eigen::ArrayXcd& padded) const;

 private:
  Eigen::Index n_;
  Eigen::Index m_;
};

}  // namespace peakon::fft
