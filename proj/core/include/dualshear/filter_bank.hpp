#pragma once

#include <vector>

#include "dualshear/dyadic.hpp"
#include "dualshear/grid.hpp"
#include "dualshear/profile.hpp"
#include "dualshear/window.hpp"

namespace dsh {

/// Symmetric |f|^2 samples on a dyadic grid: v[|i|] for xi = i * 2^{-pt}.
/// Evenness is exact by construction (built for i >= 0, mirrored on read).
struct Abs2Table {
  int pt = 0;
  std::vector<double> v;
  double at(std::int64_t i) const {
    const std::uint64_t a = static_cast<std::uint64_t>(i < 0 ? -i : i);
    return a < v.size() ? v[a] : 0.0;
  }
};
Abs2Table sample_abs2_psi(const Generator1D& g, int pt, double range);
/// Average a sampled multiplier with its grid mirror; a no-op away from the
/// Nyquist row/column, where the grid holds only one of the +-n/2 pair.
void symmetrize_even(std::vector<double>& g, int n);
Abs2Table sample_abs2_phi(const Generator1D& g, int pt, double range);
Abs2Table sample_abs2_theta(const DirectionalWindow& w, int pt, double range);

/// Per-shear Fourier multipliers G_s on the grid plus the dual denominator
/// W = sum_s G_s^2 + (G_s o R)^2 and the measured frame-function bounds.
struct FilterBank {
  int n = 0, L = 0, jmax = 0;
  std::vector<ShearParam> shears;          // ascending by value
  std::vector<std::vector<double>> g_hat;  // [shear][r1 * n + r2], raw layout
  std::vector<double> w_hat;               // raw layout
  std::vector<double> tail_sup;            // sup of the j = jmax term, per shear
  double a_hat = 0, b_hat = 0;
  double delta_phi = 0, delta_g = 0;
  double lower_bound_cert = 0;  // (min{delta_phi^2, delta_g})^2

  int shear_index(const ShearParam& s) const;
};

/// Builds every G_s carrying subband trees (shear_set(min(jmax, L-1))),
/// truncating the defining sums at j = jmax, then W and the bounds. Throws
/// std::runtime_error (invalid system) if min W <= 0 unless
/// require_positive is cleared (degenerate truncations used by identity
/// tests).
FilterBank build_filter_bank(int n, int jmax, const DirectionalWindow& win,
                             const Generator1D& gen, unsigned threads = 0,
                             bool require_positive = true);

/// sup_xi | sum_s G_s(xi) - (|phi0_hat|^2 + sum_{j<=jmax} sum_{|k|<=2^ceil(j/2)}
/// |g_hat(S_k^{-T} A_j^{-1} xi)|^2) | with both sides at matched truncation.
/// The (j,k) <-> (j0,s) reindexing is an algebraic bijection, so anything
/// above float noise is an indexing bug; > 1e-9 throws.
double partition_identity_residual(const FilterBank& bank, const DirectionalWindow& win,
                                   const Generator1D& gen);

/// Literal Theta profiles sampled on the grid. ell < 0: the full Theta
/// (|phi0_hat|^2 + sum_{j>=0}); ell >= 0: Theta_ell = sum_{j>=-ell}. Sums
/// truncate at j = jmax.
std::vector<double> theta_profile(int ell, int n, int jmax, const DirectionalWindow& win,
                                  const Generator1D& gen);

/// ||Theta_ell * psi^p||_1 evaluated from the separable term expansion on an
/// adaptive dyadic mesh (the Lemma-5.2-style uniform-boundedness diagnostic).
double theta_psi_l1(const DirectionalWindow& win, const Generator1D& gen, int ell, int p,
                    int i_top = 8);

}  // namespace dsh
