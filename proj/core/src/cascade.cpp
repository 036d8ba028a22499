#include "dualshear/cascade.hpp"

#include <stdexcept>

#include "dualshear/fft.hpp"

namespace dsh {

CascadeTables::CascadeTables(const ConjugateMirrorFilter& f, int n, int t, int max_depth)
    : n_(n), t_(t), d_(n << t) {
  if (t < 0 || max_depth < 1) throw std::invalid_argument("CascadeTables: bad parameters");
  const auto& roots = unit_roots(static_cast<std::size_t>(d_));  // e^{+2 pi i k / D}
  phi_.resize(max_depth + 1);
  wav_.resize(max_depth + 1);
  phi_[0].assign(d_, cplx{1.0, 0.0});
  for (int d = 1; d <= max_depth; ++d) {
    phi_[d].resize(d_);
    wav_[d].resize(d_);
    const std::int64_t stride = std::int64_t{1} << (d - 1);
    for (std::int64_t k = 0; k < d_; ++k) {
      const cplx z = std::conj(roots[static_cast<std::size_t>((k * stride) % d_)]);
      phi_[d][k] = phi_[d - 1][k] * f.m0_z(z);
      wav_[d][k] = phi_[d - 1][k] * f.m1_z(z);
    }
  }
}

}  // namespace dsh
