#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "dualshear/cmf.hpp"

namespace dsh {

/// Decay hypothesis parameters: rho in (0, 2/13), alpha >= 6/rho + 1,
/// beta > alpha + 1. Validated at construction.
struct DecayParams {
  double rho, alpha, beta;
  DecayParams(double rho_, double alpha_, double beta_);
};

/// The compactly supported scaling/wavelet pair (phi1, psi1) realized in the
/// Fourier domain: phi1_hat(xi) = prod_{r=1..T} m0(xi/2^r), psi1_hat(xi) =
/// m1(xi/2) phi1_hat(xi/2). Factors are phase-centered at the filter
/// centroid internally so the truncated product converges quadratically;
/// values are re-phased to the classic causal normalization
/// (supp phi1 = [0, 2K-1]).
class Generator1D {
 public:
  /// T = 0 selects the depth automatically: the smallest depth whose
  /// successive-depth sup-difference over |xi| <= max_abs_xi is below 1e-10
  /// (capped at 48). A user-forced T that fails the 1e-8 convergence bound
  /// throws std::runtime_error.
  explicit Generator1D(int K, int T = 0, double max_abs_xi = 1024.0);

  cplx phi_hat(double xi) const;
  cplx psi_hat(double xi) const { return cmf_.m1(xi / 2) * phi_hat(xi / 2); }

  int order() const { return cmf_.order(); }
  int depth() const { return T_; }
  double support_radius() const { return 2.0 * cmf_.order() - 1.0; }
  const ConjugateMirrorFilter& cmf() const { return cmf_; }

 private:
  ConjugateMirrorFilter cmf_;
  int T_;
};

/// Uniformly sampled Fourier profile on a dyadic grid: xi = i * 2^{-g},
/// i in [i_min, i_min + count). Lookups at dyadic arguments are exact
/// sample reads (no interpolation anywhere in the pipeline).
struct FourierProfile1D {
  int K = 0, T = 0;
  int log2_pitch = 0;
  std::int64_t i_min = 0;
  std::vector<cplx> v;
  double support_radius = 0;
  double delta = std::numeric_limits<double>::quiet_NaN();
  double alpha_hat = std::numeric_limits<double>::quiet_NaN();
  double beta_hat = std::numeric_limits<double>::quiet_NaN();

  double pitch() const { return std::exp2(-log2_pitch); }
  std::int64_t i_max() const { return i_min + static_cast<std::int64_t>(v.size()) - 1; }
  bool contains(std::int64_t i) const { return i >= i_min && i <= i_max(); }
  /// Value at xi = i * 2^{-g}; zero outside the sampled range.
  cplx at(std::int64_t i) const { return contains(i) ? v[static_cast<std::size_t>(i - i_min)] : cplx{0, 0}; }
  cplx value(double xi) const;  // nearest exact dyadic sample; throws off-grid
};

FourierProfile1D sample_phi(const Generator1D& g, int log2_pitch, double range);
FourierProfile1D sample_psi(const Generator1D& g, int log2_pitch, double range);

/// build_generators: profile pair on a common grid, with the support floor
/// validated on the scaling profile.
std::pair<FourierProfile1D, FourierProfile1D> build_generators(int K, int T, int log2_pitch,
                                                               double range);

/// min |profile| over the sampled points of [-1/2, 1/2]. Throws
/// std::runtime_error (generator rejected) when the floor is <= 1e-8.
double support_floor(const FourierProfile1D& phi);
/// Dense-scan variant on the continuum evaluation.
double support_floor(const Generator1D& g, int scan_points = 1 << 14);

struct DecayFit {
  double alpha_hat = 0, beta_hat = 0;      // l = 0 fits
  double alpha_hat_d1 = 0, beta_hat_d1 = 0;  // l = 1 (centered differences)
  double c_near = 0, c_tail = 0;           // fitted constants, l = 0
  bool degenerate = false;
  bool pass_alpha = false, pass_beta = false;
};

/// Log-log envelope fits of |f| near 0 (reports alpha_hat) and in the tail
/// (reports beta_hat), plus the same for the first derivative.
DecayFit decay_fit(const std::function<cplx(double)>& f, const DecayParams* params = nullptr);
DecayFit decay_fit(const Generator1D& g, const DecayParams* params = nullptr);

void save_profile(const FourierProfile1D& p, const std::string& path_base);
FourierProfile1D load_profile(const std::string& path_base);

}  // namespace dsh
