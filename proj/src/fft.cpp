#include "peakon/fft.hpp"

#ifdef PEAKON_USE_FFTW
#define EIGEN_FFTW_DEFAULT
#include <fftw3.h>
#endif
#include <unsupported/Eigen/FFT>

#include <stdexcept>

namespace peakon::fft {

namespace {

Eigen::FFT<double>& engine() {
#ifdef PEAKON_USE_FFTW
  // Each thread owns its plans, but FFTW's planner itself is shared.
  static const bool safe = [] {
    fftw_make_planner_thread_safe();
    return true;
  }();
  (void)safe;
#endif
  thread_local Eigen::FFT<double> f;
  return f;
}

}  // namespace

Eigen::ArrayXcd forward(const Eigen::ArrayXcd& x) {
  Eigen::VectorXcd out(x.size());
  engine().fwd(out.data(), x.data(), x.size());
  return out.array();
}

Eigen::ArrayXcd inverse(const Eigen::ArrayXcd& x) {
  Eigen::VectorXcd out(x.size());
  engine().inv(out.data(), x.data(), x.size());
  return out.array();
}

Padding::Padding(Eigen::Index n) : n_(n), m_(3 * n / 2) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("padding needs an even mode count");
}

Eigen::ArrayXcd Padding::to_physical(const Eigen::ArrayXcd& spectrum) const {
  const Eigen::Index h = n_ / 2;
  Eigen::ArrayXcd big = Eigen::ArrayXcd::Zero(m_);
  big.head(h) = spectrum.head(h);
  big.tail(h - 1) = spectrum.tail(h - 1);
  big *= static_cast<double>(m_) / static_cast<double>(n_);
  return inverse(big);
}

Eigen::ArrayXcd Padding::to_spectrum(const Eigen::ArrayXcd& padded) const {
  const Eigen::Index h = n_ / 2;
  Eigen::ArrayXcd big = forward(padded);
  Eigen::ArrayXcd out = Eigen::ArrayXcd::Zero(n_);
  out.head(h) = big.head(h);
  out.tail(h - 1) = big.tail(h - 1);
  out *= static_cast<double>(n_) / static_cast<double>(m_);
  return out;
}

}  // namespace peakon::fft
