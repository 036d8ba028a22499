#include "dualshear/onb.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dualshear/parallel.hpp"

namespace dsh {

cplx atom_fourier_at(const TensorAtomSpec& a, const Generator1D& gen, double xi1, double xi2) {
  if (a.p < 0) throw std::invalid_argument("atom_fourier_at: p < 0");
  const cplx hor = a.scaling ? gen.phi_hat(xi1) : gen.psi_hat(xi1);
  if (a.p == 0) return hor * gen.phi_hat(xi2);
  const double sc = std::exp2(-(a.p - 1));
  return hor * (std::sqrt(sc) * gen.psi_hat(sc * xi2));
}

std::vector<cplx> atom_fourier(const TensorAtomSpec& a, const Generator1D& gen,
                               const FourierGrid& grid) {
  const int n = grid.n;
  std::vector<cplx> hor(n), ver(n);
  for (int r = 0; r < n; ++r) {
    const double nu = static_cast<double>(grid.freq(r));
    hor[r] = a.scaling ? gen.phi_hat(nu) : gen.psi_hat(nu);
    if (a.p == 0) {
      ver[r] = gen.phi_hat(nu);
    } else {
      const double sc = std::exp2(-(a.p - 1));
      ver[r] = std::sqrt(sc) * gen.psi_hat(sc * nu);
    }
  }
  std::vector<cplx> out(static_cast<std::size_t>(n) * n);
  for (int r1 = 0; r1 < n; ++r1)
    for (int r2 = 0; r2 < n; ++r2) out[static_cast<std::size_t>(r1) * n + r2] = hor[r1] * ver[r2];
  return out;
}

SliceSpec continuum_slice_spec(const ShearParam& s, const SliceKey& k, const Generator1D& gen,
                               const FourierGrid& grid, std::vector<cplx>* h_store,
                               std::vector<cplx>* v_store) {
  const int n = grid.n;
  SliceSpec sp;
  sp.n = n;
  sp.t = s.t;
  sp.q = s.q;
  sp.nyquist_override = false;
  slice_dims(k, &sp.n1, &sp.n2);
  const int j = k.j;
  h_store->resize(n);
  for (int r = 0; r < n; ++r) {
    const double x = static_cast<double>(grid.freq(r)) * std::exp2(-j);
    (*h_store)[r] = k.phi_type ? gen.phi_hat(x) : gen.psi_hat(x);
  }
  const std::int64_t period = static_cast<std::int64_t>(n) << s.t;
  v_store->resize(static_cast<std::size_t>(2 * period + 1));
  const int vexp = s.t + j / 2 + d_p(k.p);   // u_refined / 2^vexp = atom argument
  const double vsc = std::exp2(-vexp);
  const double amp = k.p == 0 ? 1.0 : std::exp2(-0.5 * (k.p - 1));
  for (std::int64_t a = -period; a <= period; ++a) {
    const double x = static_cast<double>(a) * vsc;
    (*v_store)[static_cast<std::size_t>(a + period)] =
        amp * (k.p == 0 ? gen.phi_hat(x) : gen.psi_hat(x));
  }
  sp.h = h_store->data();
  sp.v = v_store->data();
  sp.v_lo = -period;
  sp.norm = std::exp2(-0.5 * (j + j / 2));  // |det A_j|^{-1/2}
  return sp;
}

std::vector<cplx> element_fourier(const OnbElementSpec& e, const Generator1D& gen,
                                  const FourierGrid& grid) {
  if (!e.phi_type && e.j < e.s.j0())
    throw std::domain_error("element_fourier: scale below j0(s)");
  SliceKey key{e.phi_type, e.phi_type ? e.s.j0() : e.j, e.p};
  std::vector<cplx> h, v;
  SliceSpec sp = continuum_slice_spec(e.s, key, gen, grid, &h, &v);
  if (e.m1 < 0 || e.m1 >= sp.n1 || e.m2 < 0 || e.m2 >= sp.n2)
    throw std::domain_error("element_fourier: translation outside the periodized range");
  std::vector<cplx> out(static_cast<std::size_t>(grid.n) * grid.n);
  slice_element(sp, e.m1, e.m2, out.data());
  return out;
}

namespace {

struct ContinuumSlice {
  SliceKey key;
  SliceSpec sp;
  std::vector<cplx> h, v;
};

std::vector<ContinuumSlice> truncated_system(const ShearParam& s, int j_hi, int p_hi,
                                             const Generator1D& gen, const FourierGrid& grid) {
  std::vector<ContinuumSlice> out;
  for (const SliceKey& k : slice_tree(grid.L, s.j0())) {
    if (k.j > j_hi || k.p > p_hi) continue;
    auto& cs = out.emplace_back();
    cs.key = k;
    cs.sp = continuum_slice_spec(s, k, gen, grid, &cs.h, &cs.v);
  }
  return out;
}

}  // namespace

GramReport gram_check(const ShearParam& s, int j_hi, int p_hi, const Generator1D& gen,
                      const FourierGrid& grid, unsigned threads) {
  const int n = grid.n;
  const std::size_t nn = static_cast<std::size_t>(n) * n;
  const auto sys = truncated_system(s, j_hi, p_hi, gen, grid);
  GramReport rep;
  for (const auto& cs : sys) rep.count += static_cast<std::size_t>(cs.sp.n1) * cs.sp.n2;
  if (rep.count > 100000)
    throw std::invalid_argument("gram_check: subsystem too large");

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < sys.size(); ++a)
    for (std::size_t b = a; b < sys.size(); ++b) pairs.emplace_back(a, b);

  std::vector<double> off(pairs.size(), 0.0), dia(pairs.size(), 0.0);
  parallel_for(pairs.size(), [&](std::size_t pi) {
    const auto& A = sys[pairs[pi].first];
    const auto& B = sys[pairs[pi].second];
    // <e^A_m, e^B_m'> = normA normB sum_nu (H_A V_A)(nu) conj(H_B V_B)(nu)
    //                   e^{+2 pi i (tau1 nu1 / n1 + tau2 u / n2)}
    // over the joint translation lattice; one correlation transform per pair.
    SliceSpec sp;
    sp.n = n;
    sp.t = s.t;
    sp.q = s.q;
    sp.nyquist_override = false;
    sp.n1 = std::max(A.sp.n1, B.sp.n1);
    sp.n2 = std::max(A.sp.n2, B.sp.n2);
    sp.h = B.sp.h;
    sp.v = B.sp.v;
    sp.v_lo = B.sp.v_lo;
    sp.norm = A.sp.norm * B.sp.norm;
    std::vector<cplx> ch(nn);
    const std::int64_t period = static_cast<std::int64_t>(n) << s.t;
    for (int r1 = 0; r1 < n; ++r1) {
      const std::int64_t nu1 = grid.freq(r1);
      const cplx ha = A.h[r1];
      for (int r2 = 0; r2 < n; ++r2) {
        const std::int64_t nu2 = grid.freq(r2);
        const std::int64_t a = (nu2 << s.t) - s.q * nu1;
        ch[static_cast<std::size_t>(r1) * n + r2] =
            ha * A.v[static_cast<std::size_t>(a + period)];
      }
    }
    std::vector<cplx> corr(static_cast<std::size_t>(sp.n1) * sp.n2);
    slice_analyze(sp, ch.data(), corr.data());
    const bool same = pairs[pi].first == pairs[pi].second;
    double o = 0, d = 0;
    for (std::size_t i = 0; i < corr.size(); ++i) {
      const double mag = std::abs(corr[i]);
      if (same && i == 0)
        d = std::abs(corr[0].real() - 1.0) + std::abs(corr[0].imag());
      else
        o = std::max(o, mag);
    }
    off[pi] = o;
    dia[pi] = d;
  }, threads);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    rep.max_offdiag = std::max(rep.max_offdiag, off[i]);
    rep.max_diag_dev = std::max(rep.max_diag_dev, dia[i]);
  }
  return rep;
}

double parseval_completeness(const ShearParam& s, int j_hi, int p_hi, const Generator1D& gen,
                             const FourierGrid& grid, const std::vector<cplx>& fc) {
  const auto sys = truncated_system(s, j_hi, p_hi, gen, grid);
  double captured = 0;
  for (const auto& cs : sys) {
    std::vector<cplx> coeff(static_cast<std::size_t>(cs.sp.n1) * cs.sp.n2);
    slice_analyze(cs.sp, fc.data(), coeff.data());
    for (const cplx& z : coeff) captured += std::norm(z);
  }
  double total = 0;
  for (const cplx& z : fc) total += std::norm(z);
  if (total == 0) return 0;
  return captured / total;
}

}  // namespace dsh
