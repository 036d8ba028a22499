#include "dualshear/sepsum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dsh {

Samp1D ifft_profile(const std::function<cplx(double)>& fhat, double halfwidth,
                    double bandwidth) {
  const double dxi = 1.0 / (2.0 * halfwidth);
  std::size_t n = 8;
  while (static_cast<double>(n) * dxi < 2.0 * bandwidth && n < (1u << 21)) n <<= 1;
  std::vector<cplx> buf(n);
  // frequency k*dxi at raw index k (wrapped), spatial m*dx at raw m (wrapped)
  for (std::size_t r = 0; r < n; ++r) {
    const double k = r < n / 2 ? static_cast<double>(r) : static_cast<double>(r) - static_cast<double>(n);
    buf[r] = fhat(k * dxi);
  }
  fft(buf.data(), n, +1);
  Samp1D s;
  s.dx = 2.0 * halfwidth / static_cast<double>(n);
  s.x0 = -halfwidth;
  s.v.resize(n);
  for (std::size_t m = 0; m < n; ++m) {
    const std::size_t r = (m + n / 2) % n;  // shift so index 0 is x = -halfwidth
    s.v[m] = buf[r].real() * dxi;
  }
  return s;
}

namespace {

// Symmetric adaptive axis: spacing dmin on |x| < 1, doubling per octave,
// capped at dmax. Returns cell midpoints and widths.
void mesh_axis(double xmax, double dmin, double dmax, std::vector<double>* mid,
               std::vector<double>* width) {
  mid->clear();
  width->clear();
  double x = 0;
  while (x < xmax) {
    const double mag = std::max(1.0, x);
    const double step = std::min(dmax, dmin * std::exp2(std::floor(std::log2(mag))));
    mid->push_back(x + step / 2);
    width->push_back(step);
    x += step;
  }
  const std::size_t half = mid->size();
  for (std::size_t i = 0; i < half; ++i) {
    mid->push_back(-(*mid)[i]);
    width->push_back((*width)[i]);
  }
}

}  // namespace

SepSum::ScanResult SepSum::scan(double thr, const double* map, double cells_per_octave) const {
  if (u.size() != v.size() || u.empty()) throw std::invalid_argument("SepSum: bad term lists");
  double xmax = 0, ymax = 0, dminx = 1e30, dminy = 1e30;
  for (const auto& s : u) {
    xmax = std::max(xmax, std::abs(s.x0));
    dminx = std::min(dminx, s.dx);
  }
  for (const auto& s : v) {
    ymax = std::max(ymax, std::abs(s.x0));
    dminy = std::min(dminy, s.dx);
  }
  const double dx0 = std::max(2.0 * dminx, 2.0 / cells_per_octave);
  const double dy0 = std::max(2.0 * dminy, 2.0 / cells_per_octave);
  std::vector<double> xm, xw, ym, yw;
  mesh_axis(xmax, dx0, xmax / 8, &xm, &xw);
  mesh_axis(ymax, dy0, ymax / 8, &ym, &yw);

  const std::size_t nt = u.size();
  std::vector<double> uval(nt * xm.size()), vval(nt * ym.size());
  for (std::size_t i = 0; i < nt; ++i) {
    for (std::size_t a = 0; a < xm.size(); ++a) uval[i * xm.size() + a] = u[i].at(xm[a]);
    for (std::size_t b = 0; b < ym.size(); ++b) vval[i * ym.size() + b] = v[i].at(ym[b]);
  }

  ScanResult res;
  std::vector<double> fv(xm.size() * ym.size());
  for (std::size_t a = 0; a < xm.size(); ++a) {
    for (std::size_t b = 0; b < ym.size(); ++b) {
      double f = 0;
      for (std::size_t i = 0; i < nt; ++i) f += uval[i * xm.size() + a] * vval[i * ym.size() + b];
      const double af = std::abs(f);
      fv[a * ym.size() + b] = af;
      res.l1 += af * xw[a] * yw[b];
      res.peak = std::max(res.peak, af);
    }
  }
  if (thr > 0 && res.peak > 0) {
    const double cut = thr * res.peak;
    for (std::size_t a = 0; a < xm.size(); ++a)
      for (std::size_t b = 0; b < ym.size(); ++b)
        if (fv[a * ym.size() + b] >= cut) {
          res.box_x = std::max(res.box_x, std::abs(xm[a]));
          res.box_y = std::max(res.box_y, std::abs(ym[b]));
          if (map) {
            const double y1 = map[0] * xm[a] + map[1] * ym[b];
            const double y2 = map[2] * xm[a] + map[3] * ym[b];
            res.mapped_linf = std::max(res.mapped_linf, std::max(std::abs(y1), std::abs(y2)));
          }
        }
  }
  return res;
}

}  // namespace dsh
