#include "dualshear/filter_bank.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dualshear/parallel.hpp"
#include "dualshear/sepsum.hpp"

namespace dsh {

void symmetrize_even(std::vector<double>& g, int n) {
  for (int r1 = 0; r1 < n; ++r1) {
    const int m1 = (n - r1) % n;
    for (int r2 = 0; r2 < n; ++r2) {
      const int m2 = (n - r2) % n;
      const std::size_t i = static_cast<std::size_t>(r1) * n + r2;
      const std::size_t m = static_cast<std::size_t>(m1) * n + m2;
      if (m < i) continue;
      const double avg = 0.5 * (g[i] + g[m]);
      g[i] = avg;
      g[m] = avg;
    }
  }
}

namespace {

Abs2Table half_abs2(const FourierProfile1D& p) {
  Abs2Table t;
  t.pt = p.log2_pitch;
  const std::int64_t half = p.i_max();
  t.v.resize(static_cast<std::size_t>(half + 1));
  for (std::int64_t i = 0; i <= half; ++i) t.v[static_cast<std::size_t>(i)] = std::norm(p.at(i));
  return t;
}

}  // namespace

Abs2Table sample_abs2_psi(const Generator1D& g, int pt, double range) {
  return half_abs2(sample_psi(g, pt, range));
}

Abs2Table sample_abs2_phi(const Generator1D& g, int pt, double range) {
  return half_abs2(sample_phi(g, pt, range));
}

Abs2Table sample_abs2_theta(const DirectionalWindow& w, int pt, double range) {
  // theta_hat(xi) = phi_hat(xi/2): the half-argument phi table at pitch
  // pt+1 is exactly the theta table at pitch pt.
  Abs2Table t = half_abs2(sample_phi(w.generator(), pt + 1, range / 2.0));
  t.pt = pt;
  return t;
}

int FilterBank::shear_index(const ShearParam& s) const {
  for (std::size_t i = 0; i < shears.size(); ++i)
    if (shears[i] == s) return static_cast<int>(i);
  throw std::invalid_argument("FilterBank: shear not in the bank");
}

FilterBank build_filter_bank(int n, int jmax, const DirectionalWindow& win,
                             const Generator1D& gen, unsigned threads, bool require_positive) {
  FourierGrid grid(n);
  if (jmax < 0 || jmax > grid.L) throw std::invalid_argument("build_filter_bank: bad jmax");
  FilterBank bank;
  bank.n = n;
  bank.L = grid.L;
  bank.jmax = jmax;
  // Only shears whose minimal scale fits the grid carry subband trees; each
  // filter sum still runs to jmax (the j = jmax = L dilates are what keep W
  // bounded below across the Nyquist cross).
  bank.shears = shear_set(std::min(jmax, grid.L - 1));
  bank.g_hat.resize(bank.shears.size());
  bank.tail_sup.assign(bank.shears.size(), 0.0);

  const Abs2Table eta2 = sample_abs2_psi(win.generator(), jmax, n / 2.0);
  const Abs2Table theta2 = sample_abs2_theta(win, jmax, static_cast<double>(n));
  const Abs2Table phi2 = sample_abs2_phi(gen, 0, n / 2.0);

  parallel_for(bank.shears.size(), [&](std::size_t si) {
    const ShearParam s = bank.shears[si];
    auto& g = bank.g_hat[si];
    g.assign(static_cast<std::size_t>(n) * n, 0.0);
    double tail = 0;
    for (int j = s.j0(); j <= jmax; ++j) {
      const int esh = jmax - j;
      const int fl = floor_half(j);
      const std::int64_t tstep = std::int64_t{1} << (jmax - fl);
      const std::int64_t mul = std::int64_t{1} << (jmax - s.t - fl);
      for (int r1 = 0; r1 < n; ++r1) {
        const std::int64_t nu1 = grid.freq(r1);
        const double e = eta2.at(nu1 << esh);
        if (e < 1e-300) continue;
        double* row = g.data() + static_cast<std::size_t>(r1) * n;
        const std::int64_t base = -s.q * nu1 * mul;
        std::int64_t idx = base;
        for (int r2 = 0; r2 < n / 2; ++r2) {
          const double val = e * theta2.at(idx);
          row[r2] += val;
          if (j == jmax) tail = std::max(tail, val);
          idx += tstep;
        }
        idx = base - (std::int64_t{n / 2} * tstep);
        for (int r2 = n / 2; r2 < n; ++r2) {
          const double val = e * theta2.at(idx);
          row[r2] += val;
          if (j == jmax) tail = std::max(tail, val);
          idx += tstep;
        }
      }
    }
    if (s.is_zero()) {
      for (int r1 = 0; r1 < n; ++r1) {
        const double a = phi2.at(grid.freq(r1));
        double* row = g.data() + static_cast<std::size_t>(r1) * n;
        for (int r2 = 0; r2 < n; ++r2) row[r2] += a * phi2.at(grid.freq(r2));
      }
    }
    // Nyquist symmetrization: the grid holds only the -n/2 representative of
    // the +-n/2 pair, so the sampled multiplier is averaged with its mirror
    // to stay even (interior points are already exactly even). Keeps
    // G_s * f_hat Hermitian, hence the frame coefficients real.
    symmetrize_even(g, n);
    bank.tail_sup[si] = tail;
  }, threads);

  bank.w_hat.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (const auto& g : bank.g_hat) {
    for (int r1 = 0; r1 < n; ++r1)
      for (int r2 = 0; r2 < n; ++r2) {
        const std::size_t i = static_cast<std::size_t>(r1) * n + r2;
        const std::size_t ri = static_cast<std::size_t>((n - r2) % n) * n + r1;  // R nu
        bank.w_hat[i] += g[i] * g[i] + g[ri] * g[ri];
      }
  }
  bank.a_hat = *std::min_element(bank.w_hat.begin(), bank.w_hat.end());
  bank.b_hat = *std::max_element(bank.w_hat.begin(), bank.w_hat.end());
  bank.delta_phi = support_floor(gen);
  bank.delta_g = win.delta_g();
  const double m = std::min(bank.delta_phi * bank.delta_phi, bank.delta_g);
  bank.lower_bound_cert = m * m;
  if (require_positive && !(bank.a_hat > 0))
    throw std::runtime_error("build_filter_bank: dual denominator has a zero (invalid system)");
  return bank;
}

double partition_identity_residual(const FilterBank& bank, const DirectionalWindow& win,
                                   const Generator1D& gen) {
  const int n = bank.n, jmax = bank.jmax;
  FourierGrid grid(n);
  const Abs2Table eta2 = sample_abs2_psi(win.generator(), jmax, n / 2.0);
  const Abs2Table theta2 = sample_abs2_theta(win, jmax, static_cast<double>(n));
  const Abs2Table phi2 = sample_abs2_phi(gen, 0, n / 2.0);

  // RHS via the (j, k) parameterization (independent of the bank's (j0, s)
  // loops), then the same Nyquist symmetrization the bank applies.
  std::vector<double> rhs(static_cast<std::size_t>(n) * n, 0.0);
  for (int r1 = 0; r1 < n; ++r1) {
    const std::int64_t nu1 = grid.freq(r1);
    double* row = rhs.data() + static_cast<std::size_t>(r1) * n;
    for (int r2 = 0; r2 < n; ++r2) row[r2] = phi2.at(nu1) * phi2.at(grid.freq(r2));
    for (int j = 0; j <= jmax; ++j) {
      const int esh = jmax - j;
      const double e = eta2.at(nu1 << esh);
      if (e < 1e-300) continue;
      const std::int64_t ch = std::int64_t{1} << ceil_half(j);
      for (std::int64_t k = -ch; k <= ch; ++k) {
        for (int r2 = 0; r2 < n; ++r2) {
          const std::int64_t nu2 = grid.freq(r2);
          const std::int64_t idx = ((nu2 << ceil_half(j)) - k * nu1) << esh;
          row[r2] += e * theta2.at(idx);
        }
      }
    }
  }
  symmetrize_even(rhs, n);
  double residual = 0;
  for (std::size_t i = 0; i < rhs.size(); ++i) {
    double lhs = 0;
    for (const auto& g : bank.g_hat) lhs += g[i];
    residual = std::max(residual, std::abs(lhs - rhs[i]));
  }
  if (residual > 1e-9)
    throw std::runtime_error("partition_identity_residual: identity violated (indexing bug)");
  return residual;
}

std::vector<double> theta_profile(int ell, int n, int jmax, const DirectionalWindow& win,
                                  const Generator1D& gen) {
  FourierGrid grid(n);
  std::vector<double> out(static_cast<std::size_t>(n) * n, 0.0);
  const int jlo = ell < 0 ? 0 : -ell;
  std::vector<double> uj(static_cast<std::size_t>(n)), vj(static_cast<std::size_t>(n));
  for (int j = jlo; j <= jmax; ++j) {
    for (int r = 0; r < n; ++r) {
      const double nu = static_cast<double>(grid.freq(r));
      uj[r] = std::norm(win.eta_hat(nu * std::exp2(-j)));
      vj[r] = std::norm(win.theta_hat(nu * std::exp2(-floor_half(j))));
    }
    for (int r1 = 0; r1 < n; ++r1)
      for (int r2 = 0; r2 < n; ++r2) out[static_cast<std::size_t>(r1) * n + r2] += uj[r1] * vj[r2];
  }
  if (ell < 0) {
    for (int r1 = 0; r1 < n; ++r1) {
      const double a = std::norm(gen.phi_hat(static_cast<double>(grid.freq(r1))));
      for (int r2 = 0; r2 < n; ++r2)
        out[static_cast<std::size_t>(r1) * n + r2] +=
            a * std::norm(gen.phi_hat(static_cast<double>(grid.freq(r2))));
    }
  }
  return out;
}

double theta_psi_l1(const DirectionalWindow& win, const Generator1D& gen, int ell, int p,
                    int i_top) {
  if (ell < 0 || p < 0) throw std::invalid_argument("theta_psi_l1: bad parameters");
  const double kg = 2.0 * win.order() - 1.0;
  const double k = 2.0 * gen.order() - 1.0;
  SepSum ss;
  for (int i = -ell; i <= i_top; ++i) {
    const double sx = std::exp2(-i);            // eta dilate in xi1
    const double sy = std::exp2(-floor_half(i));  // theta dilate in xi2
    auto uhat = [&, sx](double xi) { return std::norm(win.eta_hat(sx * xi)) * gen.psi_hat(xi); };
    auto vhat = [&, sy, p](double xi) {
      const cplx vert = p == 0 ? gen.phi_hat(xi)
                               : std::exp2(-0.5 * (p - 1)) * gen.psi_hat(xi * std::exp2(-(p - 1)));
      return std::norm(win.theta_hat(sy * xi)) * vert;
    };
    const double xw = std::exp2(std::ceil(std::log2(2 * kg * std::max(1.0, sx) + k + 2)));
    const double xb = std::max(std::exp2(i + 2), 32.0);
    const double yw = std::exp2(std::ceil(std::log2(2 * kg * std::max(1.0, sy) + k + 2)));
    const double yb = std::max({std::exp2(floor_half(i) + 2), std::exp2(p + 4), 32.0});
    ss.u.push_back(ifft_profile(uhat, xw, xb));
    ss.v.push_back(ifft_profile(vhat, yw, yb));
  }
  return ss.scan(0.0, nullptr).l1;
}

}  // namespace dsh
