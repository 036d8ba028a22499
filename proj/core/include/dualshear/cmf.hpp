#pragma once

#include <vector>

#include "dualshear/fft.hpp"

namespace dsh {

/// Orthonormal conjugate-mirror filter pair (Daubechies family), indexed by
/// the number of vanishing moments K. Supplies the refinement symbols
///   m0(eta) = 2^{-1/2} sum_n h_n e^{-2 pi i n eta}
///   m1(eta) = e^{-2 pi i eta} conj(m0(eta + 1/2))
/// satisfying |m0|^2 + |m0(.+1/2)|^2 = 1 (the unitarity of every cascade
/// level rests on this identity).
class ConjugateMirrorFilter {
 public:
  explicit ConjugateMirrorFilter(int K);

  int order() const { return k_; }
  const std::vector<double>& taps() const { return h_; }

  /// Filter centroid sum(n h_n)/sqrt(2); the phase-centering constant.
  double centroid() const { return centroid_; }

  cplx m0(double eta) const;
  cplx m1(double eta) const;
  /// Horner evaluation given z = e^{-2 pi i eta} (hot paths supply z from
  /// a root table).
  cplx m0_z(cplx z) const;
  cplx m1_z(cplx z) const { return z * std::conj(m0_z(-z)); }

  static int max_order();

 private:
  int k_;
  std::vector<double> h_;
  double centroid_;
};

}  // namespace dsh
