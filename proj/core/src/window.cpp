#include "dualshear/window.hpp"

#include <cmath>
#include <stdexcept>

namespace dsh {

namespace {

double cone_floor(const DirectionalWindow& w) {
  // Interior scan of Omega_g; the separable factors are scanned on a dense
  // product grid (the minimum of a product of 1-D moduli factorizes).
  double eta_lo = std::abs(w.eta_hat(0.5));
  for (int i = 0; i <= 512; ++i) {
    const double x = 0.5 + 0.5 * i / 512.0;
    eta_lo = std::min(eta_lo, std::abs(w.eta_hat(x)));
  }
  double th_lo = std::abs(w.theta_hat(0.0));
  for (int i = -512; i <= 512; ++i) {
    const double x = i / 512.0;  // |xi2| < |xi1| < 1
    th_lo = std::min(th_lo, std::abs(w.theta_hat(x)));
  }
  return eta_lo * th_lo;
}

}  // namespace

DirectionalWindow::DirectionalWindow(WindowConfig cfg)
    : cfg_(cfg), gen_(cfg.order, cfg.depth, cfg.max_abs_xi), delta_(0) {
  delta_ = cone_floor(*this);
}

DirectionalWindow build_window(WindowConfig cfg) {
  DirectionalWindow w(cfg);
  if (w.delta_g() <= 1e-8)
    throw std::runtime_error("build_window: conic support floor violated (delta_g <= 1e-8)");
  return w;
}

}  // namespace dsh
