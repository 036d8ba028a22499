#pragma once

#include <functional>
#include <vector>

#include "dualshear/fft.hpp"

namespace dsh {

/// Uniform real 1-D samples with linear interpolation, zero outside.
struct Samp1D {
  double x0 = 0, dx = 1;
  std::vector<double> v;
  double at(double x) const {
    const double u = (x - x0) / dx;
    if (u < 0 || u >= static_cast<double>(v.size() - 1)) return 0.0;
    const std::size_t i = static_cast<std::size_t>(u);
    const double f = u - static_cast<double>(i);
    return v[i] * (1.0 - f) + v[i + 1] * f;
  }
};

/// Spatial samples of a real function from its Fourier transform:
/// f(x) = int fhat(xi) e^{2 pi i xi x} dxi, sampled over [-halfwidth,
/// halfwidth) with bandwidth coverage |xi| <= bandwidth (trapezoid-free
/// plain Riemann spectral sum; fhat must be Hermitian).
Samp1D ifft_profile(const std::function<cplx(double)>& fhat, double halfwidth,
                    double bandwidth);

/// F(x, y) = sum_i u[i](x) v[i](y): integral of |F| and a thresholded
/// bounding scan over an adaptive dyadic product mesh.
struct SepSum {
  std::vector<Samp1D> u, v;

  struct ScanResult {
    double l1 = 0;         // integral of |F|
    double peak = 0;       // max |F| over the mesh
    double box_x = 0, box_y = 0;  // |x|,|y| extents of {|F| >= thr * peak}
    // max of |map(x, y)|_inf over the thresholded set (map given as 2x2)
    double mapped_linf = 0;
  };
  /// thr <= 0 skips the threshold scan. map = row-major 2x2 or nullptr.
  ScanResult scan(double thr, const double* map, double cells_per_octave = 64) const;
};

}  // namespace dsh
