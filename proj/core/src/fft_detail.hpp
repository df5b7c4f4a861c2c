// Internal radix-2 orthonormal DFT helpers (not installed).
#pragma once

#include <cmath>
#include <numbers>
#include <utility>

#include "qdl/types.hpp"

namespace qdl::detail {

// In-place orthonormal DFT. sign = -1: X_k = n^(-1/2) sum_j x_j e^(-2pi i jk/n)
// (the analysis direction); sign = +1: the inverse.
inline void dft_ortho(CVector& x, int sign) {
  const std::size_t n = x.size();
  if (n == 0 || (n & (n - 1)) != 0) throw DimensionError("DFT length must be a power of two");
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
    const Complex wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      Complex w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const Complex u = x[i + k];
        const Complex v = x[i + k + len / 2] * w;
        x[i + k] = u + v;
        x[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  for (Complex& c : x) c *= norm;
}

}  // namespace qdl::detail
