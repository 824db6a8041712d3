#include "peakon/errors.hpp"
#include "peakon/fft.hpp"
#include "peakon/littlewood_paley.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace peakon;

namespace {

// Random trigonometric polynomial with modes |n| <= nmax.
GridFunction band_limited(const Grid& g, int nmax, std::mt19937_64& rng) {
  std::normal_distribution<double> d(0.0, 1.0);
  ArrayXcd hat = ArrayXcd::Zero(g.point_count());
  for (int n = -nmax; n <= nmax; ++n) hat[(n + g.point_count()) % g.point_count()] = cplx(d(rng), d(rng)) / (1.0 + std::abs(n));
  return GridFunction(g, fft::inverse(hat));
}

double sobolev_norm(const GridFunction& f, double s) {
  const ArrayXcd hat = fft::forward(f.values());
  const ArrayXd k = f.grid().wavenumbers();
  const double N = static_cast<double>(f.size());
  // Parseval: sum |f_j|^2 dx = (dx / N) sum |hat_k|^2.
  return std::sqrt(((1.0 + k.square()).pow(s) * hat.abs2()).sum() * f.grid().spacing() / N);
}

}  // namespace

TEST_CASE("partition functions") {
  CHECK(DyadicPartition::chi(0.0) == 1.0);
  CHECK(DyadicPartition::chi(0.75) == 1.0);
  CHECK(DyadicPartition::chi(4.0 / 3.0) == 0.0);
  CHECK(DyadicPartition::chi(-1.0) == DyadicPartition::chi(1.0));
  CHECK(DyadicPartition::phi(0.7) == 0.0);
  CHECK(DyadicPartition::phi(2.7) == 0.0);
  CHECK(DyadicPartition::phi(1.4) == 1.0);
  for (double x = 0.0; x < 3.0; x += 0.01) {
    CHECK(DyadicPartition::chi(x) >= 0.0);
    CHECK(DyadicPartition::chi(x) <= 1.0);
    CHECK(DyadicPartition::phi(x) >= 0.0);
    CHECK(DyadicPartition::chi(x + 0.01) <= DyadicPartition::chi(x));
  }
}

TEST_CASE("partition of unity and quasi-orthogonality on grid frequencies") {
  const Grid g(20.0, 2048);
  const DyadicPartition part(g);
  ArrayXd sum = ArrayXd::Zero(g.point_count());
  for (int q = -1; q <= part.q_max(); ++q) sum += part.block_multiplier(q);
  CHECK((sum - 1.0).abs().maxCoeff() <= 1e-12);
  CHECK(part.block_multiplier(part.q_max() + 1).abs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(part.block_multiplier(-2), InvalidParameter);

  for (int p = -1; p <= part.q_max(); ++p)
    for (int q = p + 2; q <= part.q_max(); ++q)
      CHECK((part.block_multiplier(p) * part.block_multiplier(q)).abs().maxCoeff() == 0.0);
}

TEST_CASE("block identities on random data") {
  std::mt19937_64 rng(41);
  const Grid g(20.0, 1024);
  for (int trial = 0; trial < 10; ++trial) {
    const GridFunction f = test::gaussian_mix(g, rng);
    const double scale = test::sup(f.values());
    const DyadicPartition part(g);
    ArrayXcd total = ArrayXcd::Zero(g.point_count());
    ArrayXcd running = ArrayXcd::Zero(g.point_count());
    for (int q = -1; q <= part.q_max(); ++q) {
      const GridFunction b = dyadic_block(f, q);
      total += b.values();
      if (q >= 0) CHECK(test::sup(low_freq_cutoff(f, q).values() - running) <= 1e-12 * scale);
      running += b.values();
      for (int p = q + 2; p <= part.q_max(); ++p) CHECK(test::sup(dyadic_block(b, p).values()) <= 1e-12 * scale);
    }
    CHECK(test::sup(total - f.values()) <= 1e-12 * scale);
    CHECK(test::sup(low_freq_cutoff(f, part.q_max() + 2).values() - f.values()) <= 1e-12 * scale);
  }
}

TEST_CASE("single frequency lands in at most three blocks") {
  const Grid g(20.0, 1024);
  const DyadicPartition part(g);
  for (int n : {3, 9, 40, 100, 300}) {
    const double xi = n * kPi / 20.0;
    const int q0 = static_cast<int>(std::floor(std::log2(xi / 0.75)));
    if (!(std::ldexp(0.75, q0) < xi && xi < std::ldexp(4.0 / 3.0, q0))) continue;
    const GridFunction e = GridFunction::sample(g, [&](double x) { return std::polar(1.0, xi * x); });
    for (int q = -1; q <= part.q_max(); ++q) {
      if (std::abs(q - q0) <= 1) continue;
      CHECK(test::sup(dyadic_block(e, q).values()) <= 1e-13);
    }
  }
}

TEST_CASE("Besov norms") {
  const Grid g(20.0, 1024);
  CHECK(besov_norm(GridFunction::zero(g), {1.0, 2.0, 2.0}) == 0.0);
  CHECK_THROWS_AS(besov_norm(GridFunction::zero(g), {1.0, 0.5, 2.0}), InvalidParameter);
  CHECK_THROWS_AS(besov_norm(GridFunction::zero(g), {1.0, 2.0, 0.0}), InvalidParameter);

  // Modes with 4/3 <= 2^-3 |xi| <= 3/2 see phi = 1 and nothing else.
  std::mt19937_64 rng(43);
  std::normal_distribution<double> d(0.0, 1.0);
  ArrayXcd hat = ArrayXcd::Zero(1024);
  for (int n = 68; n <= 76; ++n) hat[n] = cplx(d(rng), d(rng));
  const GridFunction f(g, fft::inverse(hat));
  for (double s : {-1.0, 0.5, 2.0})
    for (double p : {1.0, 2.0, kInf})
      for (double r : {1.0, 2.0, kInf})
        CHECK(besov_norm(f, {s, p, r}) == doctest::Approx(std::pow(8.0, s) * lp_norm(f, p)).epsilon(1e-12));

  // Monotone in s once the low block is absent.
  const double lo = besov_norm(f, {0.5, 2.0, 2.0}), hi = besov_norm(f, {1.5, 2.0, 2.0});
  CHECK(lo <= hi);
}

TEST_CASE("B^s_{2,2} is comparable to H^s") {
  std::mt19937_64 rng(47);
  std::uniform_int_distribution<int> band(4, 400);
  const Grid g(20.0, 1024);
  double lo = kInf, hi = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const GridFunction f = band_limited(g, band(rng), rng);
    for (double s : {-1.0, 0.0, 0.5, 1.0, 2.0}) {
      const double ratio = besov_norm(f, {s, 2.0, 2.0}) / sobolev_norm(f, s);
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
  }
  CHECK(lo >= 1.0 / 8.0);
  CHECK(hi <= 8.0);
}

TEST_CASE("low-frequency cutoffs") {
  std::mt19937_64 rng(53);
  const Grid g(20.0, 1024);
  const DyadicPartition part(g);
  double worst = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const GridFunction f = trial % 2 ? test::gaussian_mix(g, rng) : band_limited(g, 200, rng);
    double prev = kInf;
    for (int q = 0; q <= part.q_max() + 1; ++q) {
      const GridFunction s = low_freq_cutoff(f, q);
      for (double p : {1.0, 2.0, kInf}) worst = std::max(worst, lp_norm(s, p) / lp_norm(f, p));
      const double gap = lp_norm(f.with_values(f.values() - s.values()), 2.0);
      CHECK(gap <= prev * (1 + 1e-12) + 1e-13);
      prev = gap;
    }
  }
  CHECK(worst <= 3.0);
  CHECK_THROWS_AS(low_freq_cutoff(GridFunction::zero(g), -1), InvalidParameter);
}

TEST_CASE("sandwich on block components") {
  std::mt19937_64 rng(59);
  const Grid g(20.0, 512);
  const GridFunction f = test::gaussian_mix(g, rng);
  for (int q = -1; q <= DyadicPartition(g).q_max(); ++q) {
    const ComplexPair pr = ComplexPair::split(dyadic_block(f, q));
    for (double p : {1.0, 2.0, kInf}) CHECK_NOTHROW(complex_pair_norm_sandwich(pr.real, pr.imag, g.spacing(), p));
  }
}

TEST_CASE("block energies add up") {
  std::mt19937_64 rng(61);
  const Grid g(20.0, 1024);
  const GridFunction f = band_limited(g, 300, rng);
  const std::vector<BlockSummary> blocks = block_energies(f, 2.0);
  CHECK(blocks.front().q == -1);
  CHECK(blocks.back().q == DyadicPartition(g).q_max());
  for (const BlockSummary& b : blocks) CHECK(b.l2_energy == doctest::Approx(b.lp_norm * b.lp_norm).epsilon(1e-12));
}
