#pragma once

#include <string>
#include <vector>

#include "dualshear/system.hpp"

namespace dsh {

struct RatePoint {
  std::size_t n_terms = 0;
  double err = 0;
};

struct RateCurve {
  std::vector<RatePoint> pts;
  std::string phantom_id, config_digest;
  int tiebreak_version = 1;
};

struct NTermResult {
  std::vector<double> f_n;
  double err = 0;          // relative grid L2 error
  std::size_t kept = 0;
};

/// Keep the n_terms largest coefficients (magnitude descending, ties broken
/// lexicographically by (cone, shear, j, p, m)), zero the rest, reconstruct
/// through the dual. Honors the system's j_cap/p_cap candidate pool.
NTermResult nterm_approx(const DualizableSystem& sys, const std::vector<double>& f,
                         const CoefficientTable& table, std::size_t n_terms);
NTermResult nterm_approx(const DualizableSystem& sys, const std::vector<double>& f,
                         std::size_t n_terms);

/// Tensor-wavelet ONB reference: the s = 0 subband tree alone, thresholded
/// in its own coefficients, inverted exactly.
std::vector<CoeffSlice> baseline_analyze(const DualizableSystem& sys,
                                         const std::vector<double>& f);
NTermResult baseline_nterm(const DualizableSystem& sys, const std::vector<double>& f,
                           const std::vector<CoeffSlice>& coeffs, std::size_t n_terms);

struct RateFit {
  double slope = 0;
  double log_corrected_slope = 0;
  double gap_to_optimal = 0;   // slope - (-1)
  double gap_to_wavelet = 0;   // slope - (-1/2)
  bool degenerate = false;
};
/// Least-squares slope of log err vs log N (>= 5 points over >= 1.5 decades
/// required), plus the fit with the log N factor divided out.
RateFit rate_fit(const RateCurve& curve);

struct DecayProbe {
  std::vector<double> max_by_j;  // index 0 = coarse (j = -1), then j = 0..
  std::vector<double> max_by_p;
  double j_slope = 0;  // log2 max vs j (psi scales only)
  double p_slope = 0;  // log2 max vs p
  bool j_degenerate = false, p_degenerate = false;
};
DecayProbe decay_probe(const DualizableSystem& sys, const CoefficientTable& table);

void write_rate_curve_csv(const RateCurve& curve, const RateFit& fit, const RateFit& baseline_fit,
                          const RateCurve& baseline, const std::string& path);

}  // namespace dsh
