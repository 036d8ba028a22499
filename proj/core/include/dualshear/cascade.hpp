#pragma once

#include <vector>

#include "dualshear/cmf.hpp"

namespace dsh {

/// Transfer functions of the depth-d orthogonal filter-bank cascade, sampled
/// on a refined frequency circle of D = n * 2^t points (the refinement makes
/// every sheared argument u = nu2 - s nu1 an exact table index):
///   phi_d(k) = prod_{r=0}^{d-1} m0(2^r k / D)
///   wav_d(k) = m1(2^{d-1} k / D) * phi_{d-1}(k)
/// Every level inherits |m0|^2 + |m0(.+1/2)|^2 = 1 pointwise, so the induced
/// subband transforms are exactly unitary at any real frequency offset.
class CascadeTables {
 public:
  CascadeTables(const ConjugateMirrorFilter& f, int n, int t, int max_depth);

  int n() const { return n_; }
  int t() const { return t_; }
  int circle() const { return d_; }
  int max_depth() const { return static_cast<int>(wav_.size()) - 1; }

  const std::vector<cplx>& phi(int depth) const { return phi_.at(depth); }
  const std::vector<cplx>& wav(int depth) const { return wav_.at(depth); }

 private:
  int n_, t_, d_;
  std::vector<std::vector<cplx>> phi_, wav_;  // [depth][k], depth 0 unused for wav_
};

}  // namespace dsh
