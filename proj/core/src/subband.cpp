#include "dualshear/subband.hpp"

#include <algorithm>
#include <stdexcept>

#include "dualshear/dyadic.hpp"

namespace dsh {

std::vector<SliceKey> slice_tree(int L, int j0) {
  if (j0 < 0 || j0 > L - 1) throw std::invalid_argument("slice_tree: j0 outside 0..L-1");
  std::vector<SliceKey> out;
  for (int p = 0; p <= L - j0 / 2; ++p) out.push_back({true, j0, p});
  for (int j = j0; j <= L - 1; ++j)
    for (int p = 0; p <= L - j / 2; ++p) out.push_back({false, j, p});
  return out;
}

void slice_dims(const SliceKey& k, int* n1, int* n2) {
  *n1 = 1 << k.j;
  *n2 = 1 << (k.j / 2 + d_p(k.p));
}

namespace {

struct ColumnGeom {
  std::int64_t qn = 0;  // q * nu1 (signed, Nyquist override)
  std::int64_t w = 0;   // floor(qn / 2^t)
  int rho = 0;          // qn - w 2^t in [0, 2^t)
};

inline ColumnGeom column_geom(const SliceSpec& sp, int r1) {
  ColumnGeom g;
  if (r1 != sp.n / 2 || !sp.nyquist_override) {
    const std::int64_t nu1 = r1 < sp.n / 2 ? r1 : r1 - sp.n;
    g.qn = sp.q * nu1;
  }
  g.w = g.qn >> sp.t;
  g.rho = static_cast<int>(g.qn - (g.w << sp.t));
  return g;
}

// demod[rho][m2] = e^{-2 pi i m2 rho / (n2 2^t)}
std::vector<std::vector<cplx>> demod_rows(const SliceSpec& sp) {
  const std::size_t dn = static_cast<std::size_t>(sp.n2) << sp.t;
  const auto& roots = unit_roots(dn);
  std::vector<std::vector<cplx>> demod(std::size_t{1} << sp.t);
  for (std::size_t rho = 0; rho < demod.size(); ++rho) {
    demod[rho].resize(sp.n2);
    for (int m2 = 0; m2 < sp.n2; ++m2)
      demod[rho][m2] = std::conj(roots[(static_cast<std::size_t>(m2) * rho) % dn]);
  }
  return demod;
}

}  // namespace

void slice_analyze(const SliceSpec& sp, const cplx* ch, cplx* coeff) {
  const int n = sp.n, n1 = sp.n1, n2 = sp.n2;
  const int mask2 = n2 - 1;
  const cplx* vp = sp.v - sp.v_lo;
  std::fill(coeff, coeff + static_cast<std::size_t>(n1) * n2, cplx{});
  const auto demod = demod_rows(sp);
  std::vector<cplx> colbuf(n2);

  for (int r1 = 0; r1 < n; ++r1) {
    const ColumnGeom g = column_geom(sp, r1);
    std::fill(colbuf.begin(), colbuf.end(), cplx{});
    const cplx* row = ch + static_cast<std::size_t>(r1) * n;
    int b = static_cast<int>(((-g.w) % n2 + n2) % n2);
    // run over nu2 = 0..n/2-1 then -n/2..-1 (raw order)
    std::int64_t a = -g.qn;
    const std::int64_t step = std::int64_t{1} << sp.t;
    for (int r2 = 0; r2 < n / 2; ++r2) {
      colbuf[b] += row[r2] * std::conj(vp[a]);
      a += step;
      b = (b + 1) & mask2;
    }
    a = (std::int64_t{-n / 2} << sp.t) - g.qn;
    for (int r2 = n / 2; r2 < n; ++r2) {
      colbuf[b] += row[r2] * std::conj(vp[a]);
      a += step;
      b = (b + 1) & mask2;
    }
    fft(colbuf.data(), static_cast<std::size_t>(n2), +1);
    const cplx hc = std::conj(sp.h[r1]);
    const auto& dem = demod[static_cast<std::size_t>(g.rho)];
    cplx* dst = coeff + static_cast<std::size_t>(r1 & (n1 - 1)) * n2;
    for (int m2 = 0; m2 < n2; ++m2) dst[m2] += colbuf[m2] * hc * dem[m2];
  }

  for (int m2 = 0; m2 < n2; ++m2)
    fft_strided(coeff + m2, static_cast<std::size_t>(n1), static_cast<std::size_t>(n2), +1);
  const std::size_t total = static_cast<std::size_t>(n1) * n2;
  for (std::size_t i = 0; i < total; ++i) coeff[i] *= sp.norm;
}

void slice_adjoint(const SliceSpec& sp, const cplx* coeff, cplx* acc) {
  const int n = sp.n, n1 = sp.n1, n2 = sp.n2;
  const int mask2 = n2 - 1;
  const cplx* vp = sp.v - sp.v_lo;
  const auto demod = demod_rows(sp);

  std::vector<cplx> b(coeff, coeff + static_cast<std::size_t>(n1) * n2);
  for (cplx& z : b) z *= sp.norm;
  for (int m2 = 0; m2 < n2; ++m2)
    fft_strided(b.data() + m2, static_cast<std::size_t>(n1), static_cast<std::size_t>(n2), -1);

  std::vector<cplx> colbuf(n2);
  for (int r1 = 0; r1 < n; ++r1) {
    const ColumnGeom g = column_geom(sp, r1);
    const cplx* src = b.data() + static_cast<std::size_t>(r1 & (n1 - 1)) * n2;
    const auto& dem = demod[static_cast<std::size_t>(g.rho)];
    const cplx h = sp.h[r1];
    for (int m2 = 0; m2 < n2; ++m2) colbuf[m2] = src[m2] * h * std::conj(dem[m2]);
    fft(colbuf.data(), static_cast<std::size_t>(n2), -1);
    cplx* row = acc + static_cast<std::size_t>(r1) * n;
    int bcls = static_cast<int>(((-g.w) % n2 + n2) % n2);
    std::int64_t a = -g.qn;
    const std::int64_t step = std::int64_t{1} << sp.t;
    for (int r2 = 0; r2 < n / 2; ++r2) {
      row[r2] += colbuf[bcls] * vp[a];
      a += step;
      bcls = (bcls + 1) & mask2;
    }
    a = (std::int64_t{-n / 2} << sp.t) - g.qn;
    for (int r2 = n / 2; r2 < n; ++r2) {
      row[r2] += colbuf[bcls] * vp[a];
      a += step;
      bcls = (bcls + 1) & mask2;
    }
  }
}

void slice_element(const SliceSpec& sp, std::int64_t m1, std::int64_t m2, cplx* out) {
  const std::size_t total = static_cast<std::size_t>(sp.n1) * sp.n2;
  std::vector<cplx> coeff(total, cplx{});
  coeff[static_cast<std::size_t>(m1) * sp.n2 + static_cast<std::size_t>(m2)] = 1.0;
  std::fill(out, out + static_cast<std::size_t>(sp.n) * sp.n, cplx{});
  slice_adjoint(sp, coeff.data(), out);
}

VTable wrap_periodic(const std::vector<cplx>& circle, int n, int t) {
  const std::int64_t d = std::int64_t{1} << t;
  const std::int64_t period = static_cast<std::int64_t>(n) * d;
  if (static_cast<std::int64_t>(circle.size()) != period)
    throw std::invalid_argument("wrap_periodic: circle size mismatch");
  VTable v;
  v.lo = -period;
  v.v.resize(static_cast<std::size_t>(2 * period + 1));
  for (std::int64_t a = -period; a <= period; ++a)
    v.v[static_cast<std::size_t>(a - v.lo)] = circle[static_cast<std::size_t>(((a % period) + period) % period)];
  return v;
}

}  // namespace dsh
