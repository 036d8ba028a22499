#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "dualshear/fft.hpp"

namespace dsh {

/// Periodized N x N frequency lattice over the unit torus [0,1)^2.
/// Spectra are stored in raw FFT layout: index r in [0, n) stands for the
/// centered integer frequency nu = r < n/2 ? r : r - n. Square and a power
/// of two (exact quarter-turn rotations need both).
struct FourierGrid {
  int n = 0;
  int L = 0;

  explicit FourierGrid(int n_) : n(n_) {
    if (n < 4 || !is_pow2(static_cast<std::size_t>(n)))
      throw std::invalid_argument("FourierGrid: side must be a power of two >= 4");
    L = ilog2(static_cast<std::size_t>(n));
  }

  std::int64_t freq(int r) const { return r < n / 2 ? r : r - n; }
  int raw(std::int64_t nu) const { return static_cast<int>(nu >= 0 ? nu : nu + n); }
  double cell_area() const { return 1.0 / (static_cast<double>(n) * n); }
};

/// X(R nu) with R the quarter-turn (nu1, nu2) -> (-nu2, nu1), indices mod n.
template <typename T>
std::vector<T> rot90(const std::vector<T>& x, int n) {
  std::vector<T> y(x.size());
  for (int r1 = 0; r1 < n; ++r1)
    for (int r2 = 0; r2 < n; ++r2)
      y[static_cast<std::size_t>(r1) * n + r2] =
          x[static_cast<std::size_t>((n - r2) % n) * n + r1];
  return y;
}

/// X(R^{-1} nu), the inverse permutation of rot90.
template <typename T>
std::vector<T> rot90_inv(const std::vector<T>& x, int n) {
  std::vector<T> y(x.size());
  for (int r1 = 0; r1 < n; ++r1)
    for (int r2 = 0; r2 < n; ++r2)
      y[static_cast<std::size_t>(r1) * n + r2] =
          x[static_cast<std::size_t>(r2) * n + (n - r1) % n];
  return y;
}

/// Spatial quarter-turn of a pixel field: (f o R^{-1})[n1][n2] = f[n2][(N-n1)%N].
template <typename T>
std::vector<T> rot90_spatial_inv(const std::vector<T>& f, int n) {
  std::vector<T> y(f.size());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      y[static_cast<std::size_t>(a) * n + b] =
          f[static_cast<std::size_t>(b) * n + (n - a) % n];
  return y;
}

}  // namespace dsh
