#pragma once

#include "dualshear/profile.hpp"

namespace dsh {

struct WindowConfig {
  int order = 4;            // K_g, vanishing moments of the xi1 factor
  int depth = 0;            // 1-D product depth, 0 = auto
  double max_abs_xi = 2048; // evaluation extent the window must cover
};

/// Separable directional window g(x) = eta(x1) theta(x2) with
/// g_hat(xi) = psi1_hat^{(Kg)}(xi1) * phi1_hat^{(Kg)}(xi2 / 2): the first
/// factor vanishes to order Kg at xi1 = 0 and peaks on 1/2 < |xi1| < 1, the
/// second is a lowpass floor wide enough that |g_hat| is bounded below on
/// the cone Omega_g = {|xi2/xi1| < 1, 1/2 < |xi1| < 1}.
class DirectionalWindow {
 public:
  explicit DirectionalWindow(WindowConfig cfg);

  cplx eta_hat(double xi1) const { return gen_.psi_hat(xi1); }
  cplx theta_hat(double xi2) const { return gen_.phi_hat(xi2 / 2.0); }
  cplx g_hat(double xi1, double xi2) const { return eta_hat(xi1) * theta_hat(xi2); }

  double delta_g() const { return delta_; }
  int order() const { return cfg_.order; }
  const Generator1D& generator() const { return gen_; }

  /// Spatial support box: [1-Kg, Kg] x [0, (2Kg-1)/2].
  double support_x1_lo() const { return 1.0 - cfg_.order; }
  double support_x1_hi() const { return cfg_.order; }
  double support_x2_lo() const { return 0.0; }
  double support_x2_hi() const { return (2.0 * cfg_.order - 1.0) / 2.0; }

 private:
  WindowConfig cfg_;
  Generator1D gen_;
  double delta_;
};

/// Validates the conic floor; throws std::runtime_error (window rejected)
/// when delta_g <= 1e-8.
DirectionalWindow build_window(WindowConfig cfg = {});

}  // namespace dsh
