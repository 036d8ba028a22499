#pragma once

#include <cstdint>
#include <vector>

#include "dualshear/fft.hpp"

namespace dsh {

/// One slice of the sheared subband tree: the horizontal scaling block
/// (phi_type, the coarse j = -1 family of the index set) or a horizontal
/// wavelet scale j, with vertical level p (p = 0 vertical scaling, p >= 1
/// vertical wavelet at depth L - floor(j/2) - d_p).
struct SliceKey {
  bool phi_type = false;
  int j = 0;
  int p = 0;
};

/// The grid-complete tree for one shear: every slice of Lambda_s the grid
/// can hold. Horizontal scales run j0..L-1, vertical levels 0..L-floor(j/2);
/// the resulting family has exactly n^2 members per shear and cone.
std::vector<SliceKey> slice_tree(int L, int j0);

/// Coefficient array dims of a slice: n1 = 2^j translations along x1,
/// n2 = 2^{floor(j/2) + d_p} along x2.
void slice_dims(const SliceKey& k, int* n1, int* n2);

/// Transfer data of one slice. The element family in frequency is
///   e(nu) = norm * h[r1] * v[a] * exp(-2 pi i (m1 nu1 / n1 + m2 u / n2)),
/// u = nu2 - s nu1 evaluated at signed nu1 (offset forced to 0 at the
/// self-conjugate column nu1 = -n/2, which keeps every element real),
/// a = 2^t u the refined integer index.
struct SliceSpec {
  int n = 0;
  int t = 0;
  std::int64_t q = 0;
  int n1 = 1, n2 = 1;
  const cplx* h = nullptr;   // [r1], raw column index
  const cplx* v = nullptr;   // [a - v_lo]
  std::int64_t v_lo = 0;
  double norm = 1.0;
  // The discrete system forces offset 0 at nu1 = -n/2 (keeps elements
  // real); the verbatim continuum sampling does not.
  bool nyquist_override = true;
};

/// coeff[m1 * n2 + m2] = sum_nu ch(nu) * conj(e_{m1,m2}(nu)).
void slice_analyze(const SliceSpec& sp, const cplx* ch, cplx* coeff);

/// acc(nu) += sum_m coeff[m] * e_m(nu); the exact adjoint of slice_analyze.
void slice_adjoint(const SliceSpec& sp, const cplx* coeff, cplx* acc);

/// Materialize one element's spectrum (raw layout, length n^2).
void slice_element(const SliceSpec& sp, std::int64_t m1, std::int64_t m2, cplx* out);

/// Signed-range lookup table wrapping a periodic refined circle.
struct VTable {
  std::int64_t lo = 0;
  std::vector<cplx> v;
};
VTable wrap_periodic(const std::vector<cplx>& circle, int n, int t);

}  // namespace dsh
