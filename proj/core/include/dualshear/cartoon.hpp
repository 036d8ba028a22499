#pragma once

#include <string>
#include <vector>

namespace dsh {

/// C^2 bump amp * (1 - |x-c|^2/h^2)^3 supported on the disk of radius h.
struct Bump {
  double cx = 0.5, cy = 0.5, h = 0.25, amp = 1.0;
};

/// Cartoon-like phantom f0 + f1 * chi_B: B is star-shaped about (cx, cy)
/// with C^2 radius r(theta) = a0 + sum_k (a_k cos k theta + b_k sin k theta),
/// f0/f1 finite sums of C^2 bumps. Everything supported in [0,1]^2 and the
/// piece norms certified <= 1.
struct CartoonSpec {
  double cx = 0.5, cy = 0.5;
  std::vector<double> radius_cos;  // a0, a1, ...
  std::vector<double> radius_sin;  // b1, ... (offset by one)
  double f0_const = 0, f1_const = 0;
  std::vector<Bump> f0, f1;
};

double radius_at(const CartoonSpec& spec, double theta);
bool inside_region(const CartoonSpec& spec, double x, double y);
double bump_field(const std::vector<Bump>& bumps, double x, double y);

/// Samples f0 + f1 chi_B at pixel centers ((i+1/2)/n, (j+1/2)/n); exact
/// point-in-region test, no antialiasing. Throws std::invalid_argument when
/// the spec leaks outside [0,1]^2 or violates the class invariants.
std::vector<double> generate(const CartoonSpec& spec, int n);

struct CurvatureReport {
  double max_abs_kappa = 0;
  double min_radius = 0;
  double c2_f0 = 0, c2_f1 = 0;  // grid-estimated C^2 norms (2x safety)
};
CurvatureReport curvature_report(const CartoonSpec& spec);

/// Human-editable key-value spec files.
CartoonSpec parse_cartoon_spec(const std::string& path);
void write_cartoon_spec(const CartoonSpec& spec, const std::string& path);

/// The default benchmark phantom: smooth background plus a bumped interior
/// over a wavy C^2 region boundary.
CartoonSpec default_phantom();

}  // namespace dsh
