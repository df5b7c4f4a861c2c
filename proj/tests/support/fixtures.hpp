// Shared fixture builders and independent numeric oracles for the test suites.
// Oracles here are deliberately naive re-implementations (O(N^2) transforms,
// dense matrix assembly) so library results are checked against a second route.
#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "qdl/metrics.hpp"
#include "qdl/types.hpp"

namespace fix {

using qdl::Complex;
using qdl::CVector;
using qdl::RVector;
using qdl::TargetVector;

inline TargetVector make_state(CVector amps, int n) {
  TargetVector v;
  v.n_qubits = n;
  v.task = qdl::Task::StatePrep;
  v.amplitudes = std::move(amps);
  return qdl::validate_target(v);
}

inline TargetVector make_diagonal(CVector entries, int n) {
  TargetVector v;
  v.n_qubits = n;
  v.task = qdl::Task::DiagonalEncode;
  v.amplitudes = std::move(entries);
  return qdl::validate_target(v);
}

// Budget with an exact (eps_p, eps_a) split.
inline qdl::ErrorBudget budget_pa(double eps_p, double eps_a) {
  qdl::ErrorBudget b = qdl::make_budget(eps_p + eps_a, eps_p / (eps_p + eps_a));
  b.eps_p = eps_p;
  b.eps_a = eps_a;
  return b;
}

// ---------------------------------------------------------------------------
// Deterministic random targets.
// ---------------------------------------------------------------------------

inline TargetVector random_state(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  CVector amps(std::size_t{1} << n);
  for (Complex& a : amps) a = Complex(gauss(rng), gauss(rng));
  return make_state(std::move(amps), n);
}

inline TargetVector random_real_state(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  CVector amps(std::size_t{1} << n);
  for (Complex& a : amps) a = Complex(gauss(rng), 0.0);
  return make_state(std::move(amps), n);
}

inline TargetVector random_nonneg_state(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.05, 1.0);
  CVector amps(std::size_t{1} << n);
  for (Complex& a : amps) a = Complex(uni(rng), 0.0);
  return make_state(std::move(amps), n);
}

inline TargetVector random_sparse_state(int n, int nonzeros, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const std::size_t dim = std::size_t{1} << n;
  CVector amps(dim, Complex(0.0, 0.0));
  int placed = 0;
  while (placed < nonzeros) {
    const std::size_t idx = rng() % dim;
    if (amps[idx] != Complex(0.0, 0.0)) continue;
    amps[idx] = Complex(gauss(rng), gauss(rng));
    ++placed;
  }
  return make_state(std::move(amps), n);
}

// Diagonal with entries uniform in [-1, 1].
inline TargetVector random_diagonal(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  CVector d(std::size_t{1} << n);
  for (Complex& a : d) a = Complex(uni(rng), 0.0);
  return make_diagonal(std::move(d), n);
}

// ---------------------------------------------------------------------------
// Named study profiles (mirrors of the CLI's built-in bench profiles; kept as
// independent copies so a regression in the CLI builders is visible).
// ---------------------------------------------------------------------------

inline TargetVector gaussian_state(int n, double sigma) {
  const std::size_t dim = std::size_t{1} << n;
  CVector amps(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(dim);
    amps[i] = std::exp(-(x - 0.5) * (x - 0.5) / (2.0 * sigma * sigma));
  }
  return make_state(std::move(amps), n);
}

// Linear ramp with a 1% sinusoidal modulation; smooth and strictly positive.
inline TargetVector shear_state(int n) {
  const std::size_t dim = std::size_t{1} << n;
  CVector amps(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(dim);
    amps[i] = (0.15 + 0.8 * x) * (1.0 + 0.01 * std::sin(2.0 * std::numbers::pi * x));
  }
  return make_state(std::move(amps), n);
}

inline double parity_sign(long long mask, long long x) {
  return (std::popcount(static_cast<unsigned long long>(mask & x)) & 1) ? -1.0 : 1.0;
}

inline const std::vector<long long>& band_masks() {
  static const std::vector<long long> masks = {
      1552, 224,  384,  546,  1184, 32,   1092, 96,   1048, 134,  532,  137,  48,
      577,  133,  1538, 324,  448,  50,   37,   1090, 644,  800,  545,  1032, 72,
      524,  1058, 392,  28,   144,  517,  66,   276,  266,  592,  1600, 1344, 521,
      1042, 196,  160,  516,  40,   41,   112,  576,  512,  49,   580,  161,  14,
      1160, 1027, 80,   1168, 19,   416,  288,  70,   280,  82,   1120, 9};
  return masks;
}

inline double band_coefficient(int j) { return std::max(0.35 * std::pow(0.937, j), 0.016); }

inline double band_sign(int j) { return (j % 3 == 0) ? 1.0 : -1.0; }

// Diagonal whose phase profile is exactly 64 Walsh terms over a pi/2 offset.
inline TargetVector walsh_band_diagonal(int n) {
  const std::size_t dim = std::size_t{1} << n;
  const double root = std::sqrt(static_cast<double>(dim));
  const auto& masks = band_masks();
  CVector d(dim);
  for (std::size_t x = 0; x < dim; ++x) {
    double g = std::numbers::pi / 2.0;
    for (int j = 0; j < 64; ++j)
      g += band_sign(j) * band_coefficient(j) * parity_sign(masks[j], static_cast<long long>(x)) / root;
    d[x] = std::cos(g / 2.0);
  }
  return make_diagonal(std::move(d), n);
}

// Smooth ramp plus dyadic-coherent (Walsh-sparse, Fourier-spread) fluctuations.
inline TargetVector kl_study_state(int n) {
  static const std::vector<long long> masks = {
      0b11110000000, 0b00011110000, 0b00000011110, 0b10010010010, 0b01001001001, 0b11000110001,
      0b00110001100, 0b10101010000, 0b00001010101, 0b11001100110, 0b10011001100, 0b01100110011,
      0b11100011100, 0b00111000111, 0b10101101000, 0b01010010110};
  const std::size_t dim = std::size_t{1} << n;
  const double root = std::sqrt(static_cast<double>(dim));
  RVector f(dim);
  double norm = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(dim);
    f[i] = 0.30 + 0.65 * x;
    norm += f[i] * f[i];
  }
  norm = std::sqrt(norm);
  for (double& a : f) a /= norm;
  for (int m = 0; m < 16; ++m) {
    const double amp = 0.42 * std::pow(0.85, m);
    for (std::size_t i = 0; i < dim; ++i)
      f[i] += amp * parity_sign(masks[m], static_cast<long long>(i)) / root;
  }
  CVector amps(f.begin(), f.end());
  return make_state(std::move(amps), n);
}

// ---------------------------------------------------------------------------
// Independent numeric oracles.
// ---------------------------------------------------------------------------

// Orthonormal Walsh-Hadamard transform by direct O(N^2) summation.
inline RVector naive_walsh(const RVector& samples) {
  const std::size_t dim = samples.size();
  const double root = std::sqrt(static_cast<double>(dim));
  RVector out(dim, 0.0);
  for (std::size_t k = 0; k < dim; ++k) {
    double acc = 0.0;
    for (std::size_t x = 0; x < dim; ++x)
      acc += parity_sign(static_cast<long long>(k), static_cast<long long>(x)) * samples[x];
    out[k] = acc / root;
  }
  return out;
}

// Inverse discrete Fourier transform with the +i kernel, O(N^2).
inline CVector naive_inverse_dft(const CVector& in) {
  const std::size_t dim = in.size();
  CVector out(dim, Complex(0.0, 0.0));
  for (std::size_t j = 0; j < dim; ++j) {
    Complex acc(0.0, 0.0);
    for (std::size_t k = 0; k < dim; ++k) {
      const double phase = 2.0 * std::numbers::pi * static_cast<double>(j) *
                           static_cast<double>(k) / static_cast<double>(dim);
      acc += in[k] * Complex(std::cos(phase), std::sin(phase));
    }
    out[j] = acc / std::sqrt(static_cast<double>(dim));
  }
  return out;
}

}  // namespace fix
