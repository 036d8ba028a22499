#include "dualshear/elements.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dualshear/sepsum.hpp"

namespace dsh {

namespace {

SliceKey key_of(const DualizableSystem& sys, const LambdaIndex& lam) {
  const int j0 = lam.s.j0();
  const int L = sys.levels();
  SliceKey k;
  if (lam.j < 0) {
    k = SliceKey{true, j0, lam.p};
  } else {
    if (lam.j < j0) throw std::domain_error("element: scale below j0(s)");
    k = SliceKey{false, lam.j, lam.p};
  }
  if (k.j > L - 1 || lam.p < 0 || lam.p > L - k.j / 2)
    throw std::domain_error("element: index outside the grid truncation");
  int n1 = 0, n2 = 0;
  slice_dims(k, &n1, &n2);
  if (lam.m1 < 0 || lam.m1 >= n1 || lam.m2 < 0 || lam.m2 >= n2)
    throw std::domain_error("element: translation outside the periodized range");
  if (lam.cone != 0 && lam.cone != 1) throw std::domain_error("element: cone must be 0 or 1");
  return k;
}

}  // namespace

std::vector<double> element_spatial(const DualizableSystem& sys, const LambdaIndex& lam,
                                    ElementKind kind) {
  const int n = sys.grid().n;
  const std::size_t nn = static_cast<std::size_t>(n) * n;
  const SliceKey key = key_of(sys, lam);
  const SliceSpec sp = sys.slice_spec(lam.s, key);
  std::vector<cplx> ehat(nn);
  slice_element(sp, lam.m1, lam.m2, ehat.data());
  const int si = sys.bank().shear_index(lam.s);
  const auto& g = sys.bank().g_hat[si];
  if (kind == ElementKind::primal) {
    for (std::size_t i = 0; i < nn; ++i) ehat[i] *= g[i];
  } else {
    // dual = G_s * (unfiltered basis element) / W: one filter factor. The
    // closed-form statement pairs G_s with the orthonormal element, which
    // is what makes sum_s G_s^2 / W telescope to 1.
    const auto& w = sys.bank().w_hat;
    for (std::size_t i = 0; i < nn; ++i) ehat[i] *= g[i] / w[i];
  }
  std::vector<double> f = sys.field(ehat);
  if (lam.cone == 1) f = rot90_spatial_inv(f, n);
  return f;
}

std::vector<double> element_spatial_theta(const DualizableSystem& sys, const LambdaIndex& lam) {
  const int n = sys.grid().n;
  const FourierGrid& grid = sys.grid();
  const SliceKey key = key_of(sys, lam);
  const SliceSpec sp = sys.slice_spec(lam.s, key);
  const int j = key.j;  // horizontal scale of the element
  const int j0 = lam.s.j0();
  const int jmax = sys.config().effective_jmax();
  const std::int64_t k_int = lam.s.is_zero() ? 0 : k_for(lam.s, j);
  const int ch = ceil_half(j);

  // Independent filter tables (the same dyadic sampling the bank uses; the
  // equivalence being tested is the (j,k) index algebra, not the profiles).
  const Abs2Table eta2 = sample_abs2_psi(sys.window().generator(), jmax, n / 2.0);
  const Abs2Table theta2 = sample_abs2_theta(sys.window(), jmax, static_cast<double>(n));
  const Abs2Table phi2 = sample_abs2_phi(sys.generator(), 0, n / 2.0);

  const auto& r1roots = unit_roots(static_cast<std::size_t>(sp.n1));
  const std::size_t den2 = static_cast<std::size_t>(sp.n2) << sp.t;  // phases m2 a / (n2 2^t)
  const auto& r2roots = unit_roots(den2);
  const cplx* vp = sp.v - sp.v_lo;

  // pass 1: the scale-relative Theta multiplier (equals G_s through the
  // (j,k) reindexing), with the bank's Nyquist symmetrization
  std::vector<double> theta_rel(static_cast<std::size_t>(n) * n, 0.0);
  for (int r1 = 0; r1 < n; ++r1) {
    const std::int64_t nu1 = grid.freq(r1);
    double* row = theta_rel.data() + static_cast<std::size_t>(r1) * n;
    if (lam.s.is_zero()) {
      const double a = phi2.at(nu1);
      for (int r2 = 0; r2 < n; ++r2) row[r2] = a * phi2.at(grid.freq(r2));
    }
    for (int jp = j0; jp <= jmax; ++jp) {
      const double e = eta2.at(nu1 << (jmax - jp));
      if (e < 1e-300) continue;
      // term at absolute scale j' indexes the theta table at
      // zeta2num * 2^{jmax - floor(j'/2) - ceil(j/2)}, zeta2num = nu2 2^{ceil(j/2)} - k nu1
      const int sh = jmax - floor_half(jp) - ch;
      for (int r2 = 0; r2 < n; ++r2) {
        const std::int64_t z_filter = (grid.freq(r2) << ch) - k_int * nu1;
        row[r2] += e * theta2.at(z_filter << sh);
      }
    }
  }
  symmetrize_even(theta_rel, n);

  // pass 2: multiply by the atom transfer and the directly evaluated phases
  std::vector<cplx> ehat(static_cast<std::size_t>(n) * n);
  for (int r1 = 0; r1 < n; ++r1) {
    const std::int64_t nu1_atom = (r1 == n / 2) ? 0 : grid.freq(r1);  // element convention
    const cplx h = sp.h[r1];
    const cplx ph1 = std::conj(r1roots[static_cast<std::size_t>(
        (static_cast<std::uint64_t>(lam.m1) * (static_cast<std::uint64_t>(r1) & (sp.n1 - 1))) %
        sp.n1)]);
    for (int r2 = 0; r2 < n; ++r2) {
      const std::int64_t z_atom = (grid.freq(r2) << ch) - k_int * nu1_atom;
      const std::int64_t a = z_atom >> (ch - sp.t);  // exact: 2^{ch-t} | z_atom
      const std::int64_t pidx =
          ((static_cast<std::int64_t>(lam.m2) * a) % static_cast<std::int64_t>(den2) +
           static_cast<std::int64_t>(den2)) %
          static_cast<std::int64_t>(den2);
      const cplx ph2 = std::conj(r2roots[static_cast<std::size_t>(pidx)]);
      const std::size_t i = static_cast<std::size_t>(r1) * n + r2;
      ehat[i] = theta_rel[i] * sp.norm * h * vp[a] * ph1 * ph2;
    }
  }
  std::vector<double> f = sys.field(ehat);
  if (lam.cone == 1) f = rot90_spatial_inv(f, n);
  return f;
}

SupportReport support_extent(const DualizableSystem& sys, const LambdaIndex& lam,
                             double threshold) {
  if (!(threshold > 0 && threshold < 1))
    throw std::invalid_argument("support_extent: threshold outside (0,1)");
  const int n = sys.grid().n;
  const std::vector<double> f = element_spatial(sys, lam, ElementKind::primal);
  SupportReport rep;
  for (double x : f) rep.peak = std::max(rep.peak, std::abs(x));
  if (rep.peak == 0) return rep;
  const double cut = threshold * rep.peak;
  std::vector<char> rowhit(n, 0), colhit(n, 0);
  std::vector<std::pair<int, int>> pts;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (std::abs(f[static_cast<std::size_t>(a) * n + b]) >= cut) {
        rowhit[a] = colhit[b] = 1;
        pts.emplace_back(a, b);
      }
  // circular extent per axis: n minus the largest empty gap
  auto extent = [n](const std::vector<char>& hit) {
    int best_gap = 0, cur = 0, lead = 0;
    bool open = true;
    for (int i = 0; i < n; ++i) {
      if (!hit[i]) {
        ++cur;
      } else {
        if (open) lead = cur;
        open = false;
        best_gap = std::max(best_gap, cur);
        cur = 0;
      }
    }
    best_gap = std::max(best_gap, cur + lead);  // wrap the trailing gap
    return n - best_gap;
  };
  const int e1 = extent(rowhit), e2 = extent(colhit);
  rep.extent_x1 = static_cast<double>(e1) / n;
  rep.extent_x2 = static_cast<double>(e2) / n;
  if (e1 >= n * 9 / 20 || e2 >= n * 9 / 20) {
    rep.wrapped = true;
    return rep;
  }
  // unwrap around the peak and fit the sheared box
  int pa = 0, pb = 0;
  double best = -1;
  for (auto [a, b] : pts) {
    const double v = std::abs(f[static_cast<std::size_t>(a) * n + b]);
    if (v > best) {
      best = v;
      pa = a;
      pb = b;
    }
  }
  const int j0 = lam.s.j0();
  const double a00 = std::exp2(j0), a01 = std::exp2(j0) * lam.s.value();
  const double a11 = std::exp2(floor_half(j0));
  for (auto [a, b] : pts) {
    int da = a - pa, db = b - pb;
    if (da > n / 2) da -= n;
    if (da < -n / 2) da += n;
    if (db > n / 2) db -= n;
    if (db < -n / 2) db += n;
    const double x1 = static_cast<double>(da) / n, x2 = static_cast<double>(db) / n;
    const double y1 = a00 * x1 + a01 * x2;
    const double y2 = a11 * x2;
    rep.c = std::max(rep.c, std::max(std::abs(y1), std::abs(y2)));
  }
  return rep;
}

double support_extent_continuum(const DirectionalWindow& win, const Generator1D& gen,
                                const ShearParam& s, int j, int p, double threshold,
                                int i_top) {
  const int j0 = s.j0();
  if (j < j0) throw std::domain_error("support_extent_continuum: scale below j0(s)");
  const int ell = j - j0;
  const double kg = 2.0 * win.order() - 1.0;
  const double k = 2.0 * gen.order() - 1.0;
  SepSum ss;
  for (int i = -ell; i <= i_top; ++i) {
    const int ei = floor_half(i + j) - floor_half(j);  // scale-relative vertical exponent
    const double sx = std::exp2(-i), sy = std::exp2(-ei);
    auto uhat = [&win, &gen, sx](double xi) {
      return std::norm(win.eta_hat(sx * xi)) * gen.psi_hat(xi);
    };
    auto vhat = [&win, &gen, sy, p](double xi) {
      const cplx vert = p == 0 ? gen.phi_hat(xi)
                               : std::exp2(-0.5 * (p - 1)) * gen.psi_hat(xi * std::exp2(-(p - 1)));
      return std::norm(win.theta_hat(sy * xi)) * vert;
    };
    const double xw = std::exp2(std::ceil(std::log2(2 * kg * std::max(1.0, sx) + k + 2)));
    const double xb = std::max(std::exp2(i + 2), 32.0);
    const double yw = std::exp2(std::ceil(std::log2(2 * kg * std::max(1.0, sy) + k + 2)));
    const double yb = std::max(std::exp2(ei + 2), std::max(std::exp2(p + 4), 32.0));
    ss.u.push_back(ifft_profile(uhat, xw, xb));
    ss.v.push_back(ifft_profile(vhat, yw, yb));
  }
  // c = max |A_{j0} S_s A_j^{-1} S_k^{-1} y|_inf over the thresholded set
  const double kj = static_cast<double>(k_for(s, j));
  const double b00 = std::exp2(-j), b01 = -kj * std::exp2(-j);
  const double b11 = std::exp2(-floor_half(j));
  const double a00 = std::exp2(j0), a01 = std::exp2(j0) * s.value();
  const double a11 = std::exp2(floor_half(j0));
  const double map[4] = {a00 * b00, a00 * b01 + a01 * b11, 0.0, a11 * b11};
  return ss.scan(threshold, map).mapped_linf;
}

}  // namespace dsh
