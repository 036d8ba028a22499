#pragma once

#include <vector>

#include "dualshear/dyadic.hpp"
#include "dualshear/grid.hpp"
#include "dualshear/profile.hpp"
#include "dualshear/subband.hpp"

namespace dsh {

struct TensorAtomSpec {
  bool scaling = false;  // phi^p when true, psi^p otherwise
  int p = 0;
};

struct OnbElementSpec {
  bool phi_type = false;  // phi-type elements exist only at j = j0(s)
  int j = 0;
  ShearParam s;
  int p = 0;
  std::int64_t m1 = 0, m2 = 0;
};

/// Pointwise continuum tensor atom: psi^p_hat(xi) = psi1_hat(xi1) *
/// 2^{-(p-1)/2} psi1_hat(2^{-(p-1)} xi2) for p > 0, and the p = 0 / phi
/// analogues.
cplx atom_fourier_at(const TensorAtomSpec& a, const Generator1D& gen, double xi1, double xi2);

/// Atom sampled on the grid (raw layout).
std::vector<cplx> atom_fourier(const TensorAtomSpec& a, const Generator1D& gen,
                               const FourierGrid& grid);

/// Continuum shearlet-type wavelet element, Fourier form on the grid:
/// |det A_j|^{-1/2} atomhat(A_j^{-1} S_s^{-T} nu) e^{-2 pi i <m, D_p A_j^{-1} S_s^{-T} nu>}.
std::vector<cplx> element_fourier(const OnbElementSpec& e, const Generator1D& gen,
                                  const FourierGrid& grid);

/// Continuum transfer tables for one slice (Def. 2.2 sampled verbatim; no
/// Nyquist offset override).
SliceSpec continuum_slice_spec(const ShearParam& s, const SliceKey& k, const Generator1D& gen,
                               const FourierGrid& grid, std::vector<cplx>* h_store,
                               std::vector<cplx>* v_store);

struct GramReport {
  double max_offdiag = 0;
  double max_diag_dev = 0;
  std::size_t count = 0;
};

/// Worst-case Gram deviations of the truncated continuum system Psi_s over
/// slices with j <= j_hi, p <= p_hi (all translations, via per-pair
/// correlation transforms).
GramReport gram_check(const ShearParam& s, int j_hi, int p_hi, const Generator1D& gen,
                      const FourierGrid& grid, unsigned threads = 0);

/// sum_{lambda in truncated Psi_s} |<f, e_lambda>|^2 / ||f||^2 for a
/// spectrum fc (raw layout).
double parseval_completeness(const ShearParam& s, int j_hi, int p_hi, const Generator1D& gen,
                             const FourierGrid& grid, const std::vector<cplx>& fc);

}  // namespace dsh
