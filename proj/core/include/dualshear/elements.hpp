#pragma once

#include "dualshear/system.hpp"

namespace dsh {

enum class ElementKind { primal, dual };

/// Discrete system element materialized on the grid via the filter route:
/// psi^0 = IFFT[G_s * e_hat] (dual: G_s^2 e_hat / W); cone 1 is the spatial
/// quarter-turn of the cone-0 element.
std::vector<double> element_spatial(const DualizableSystem& sys, const LambdaIndex& lam,
                                    ElementKind kind = ElementKind::primal);

/// The same primal element through the reindexed route: scale-relative
/// Theta multiplier via integer k-shear arithmetic and direct phase
/// evaluation (no subband transforms). Must agree with element_spatial to
/// float accuracy.
std::vector<double> element_spatial_theta(const DualizableSystem& sys, const LambdaIndex& lam);

struct SupportReport {
  double c = 0;            // fitted constant of S_s^{-1} A_{j0}^{-1} [-c, c]^2
  bool wrapped = false;    // support comparable to the torus; no cap check
  double peak = 0;
  double extent_x1 = 0, extent_x2 = 0;  // circular extents in torus units
};

/// Grid-side support measurement of the primal element (threshold relative
/// to the peak).
SupportReport support_extent(const DualizableSystem& sys, const LambdaIndex& lam,
                             double threshold);

/// R^2-side support constant from the separable continuum expansion of
/// Theta_{j-j0} * psi^p in sheared coordinates; free of torus wraparound.
double support_extent_continuum(const DirectionalWindow& win, const Generator1D& gen,
                                const ShearParam& s, int j, int p, double threshold,
                                int i_top = 8);

}  // namespace dsh
