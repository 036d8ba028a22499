#include "dualshear/profile.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "dualshear/util.hpp"

namespace dsh {

namespace {

// e^{2 pi i turns} with exact-in-double argument reduction.
cplx phase_turns(double turns) {
  return std::polar(1.0, 2.0 * M_PI * (turns - std::round(turns)));
}

double conv_estimate(const ConjugateMirrorFilter& f, int T, double max_abs_xi) {
  // Successive-depth sup-difference of the centered product equals
  // sup_{|eta| <= max_abs_xi / 2^{T+1}} |m0c(eta) - 1|; probed directly on
  // off-lattice points (m0c is 1 at integers, so lattice probes lie).
  const double etamax = max_abs_xi / std::exp2(T + 1);
  if (etamax > 1.0 / 16.0) return 2.0;
  double worst = 0;
  for (int i = 1; i <= 64; ++i) {
    const double eta = etamax * (static_cast<double>(i) - 0.381966) / 64.0;
    const cplx m0c = phase_turns(f.centroid() * eta) * f.m0(eta);
    worst = std::max(worst, std::abs(m0c - 1.0));
  }
  return worst;
}

}  // namespace

DecayParams::DecayParams(double rho_, double alpha_, double beta_)
    : rho(rho_), alpha(alpha_), beta(beta_) {
  if (!(rho > 0.0 && rho < 2.0 / 13.0)) throw std::invalid_argument("DecayParams: rho outside (0, 2/13)");
  if (!(alpha >= 6.0 / rho + 1.0)) throw std::invalid_argument("DecayParams: alpha < 6/rho + 1");
  if (!(beta > alpha + 1.0)) throw std::invalid_argument("DecayParams: beta <= alpha + 1");
}

Generator1D::Generator1D(int K, int T, double max_abs_xi) : cmf_(K), T_(T) {
  if (max_abs_xi <= 0) throw std::invalid_argument("Generator1D: empty range");
  if (T_ == 0) {
    T_ = 8;
    while (T_ < 48 && conv_estimate(cmf_, T_, max_abs_xi) > 0.5e-10) ++T_;
  } else if (conv_estimate(cmf_, T_, max_abs_xi) > 1e-8) {
    throw std::runtime_error("Generator1D: truncation depth too small for requested extent");
  }
}

cplx Generator1D::phi_hat(double xi) const {
  cplx acc{1.0, 0.0};
  const double cbar = cmf_.centroid();
  for (int r = 1; r <= T_; ++r) {
    const double eta = xi / std::exp2(r);
    acc *= phase_turns(cbar * eta) * cmf_.m0(eta);
  }
  return phase_turns(-cbar * xi) * acc;
}

namespace {

// One cascade level applied across a uniform table: acc[i] *= m0c(x_i / 2^r)
// with x_i = (i_min + i) 2^{-g}. Incremental phasors, re-anchored every block.
void level_pass(std::vector<cplx>& acc, std::int64_t i_min, int g, int r,
                const ConjugateMirrorFilter& f) {
  const double step = std::exp2(-(g + r));  // turns per index
  const double cbar = f.centroid();
  const cplx zstep = phase_turns(-step);
  const cplx kstep = phase_turns(cbar * step);
  constexpr std::size_t kBlock = 256;
  for (std::size_t b = 0; b < acc.size(); b += kBlock) {
    const std::int64_t i0 = i_min + static_cast<std::int64_t>(b);
    cplx z = phase_turns(-static_cast<double>(i0) * step);
    cplx kappa = phase_turns(cbar * static_cast<double>(i0) * step);
    const std::size_t e = std::min(acc.size(), b + kBlock);
    for (std::size_t i = b; i < e; ++i) {
      acc[i] *= kappa * f.m0_z(z);
      z *= zstep;
      kappa *= kstep;
    }
  }
}

void final_phase(std::vector<cplx>& acc, std::int64_t i_min, int g, double cbar) {
  const double step = std::exp2(-g);
  const cplx pstep = phase_turns(-cbar * step);
  constexpr std::size_t kBlock = 256;
  for (std::size_t b = 0; b < acc.size(); b += kBlock) {
    const std::int64_t i0 = i_min + static_cast<std::int64_t>(b);
    cplx ph = phase_turns(-cbar * static_cast<double>(i0) * step);
    const std::size_t e = std::min(acc.size(), b + kBlock);
    for (std::size_t i = b; i < e; ++i) {
      acc[i] *= ph;
      ph *= pstep;
    }
  }
}

}  // namespace

cplx FourierProfile1D::value(double xi) const {
  const double fi = xi * std::exp2(log2_pitch);
  const double ri = std::round(fi);
  if (fi != ri) throw std::invalid_argument("FourierProfile1D: off-grid argument");
  return at(static_cast<std::int64_t>(ri));
}

FourierProfile1D sample_phi(const Generator1D& g, int log2_pitch, double range) {
  FourierProfile1D p;
  p.K = g.order();
  p.T = g.depth();
  p.log2_pitch = log2_pitch;
  p.support_radius = g.support_radius();
  const std::int64_t half = static_cast<std::int64_t>(std::ceil(range * std::exp2(log2_pitch)));
  p.i_min = -half;
  p.v.assign(static_cast<std::size_t>(2 * half + 1), cplx{1.0, 0.0});
  for (int r = 1; r <= g.depth(); ++r) level_pass(p.v, p.i_min, log2_pitch, r, g.cmf());
  final_phase(p.v, p.i_min, log2_pitch, g.cmf().centroid());
  return p;
}

FourierProfile1D sample_psi(const Generator1D& g, int log2_pitch, double range) {
  FourierProfile1D half_phi = sample_phi(g, log2_pitch + 1, range / 2.0);
  FourierProfile1D p;
  p.K = g.order();
  p.T = g.depth();
  p.log2_pitch = log2_pitch;
  p.support_radius = g.support_radius();
  p.i_min = half_phi.i_min;
  p.v.assign(half_phi.v.size(), cplx{});
  const double step = std::exp2(-(log2_pitch + 1));  // turns per index for z(xi/2)
  const cplx zstep = phase_turns(-step);
  constexpr std::size_t kBlock = 256;
  for (std::size_t b = 0; b < p.v.size(); b += kBlock) {
    const std::int64_t i0 = p.i_min + static_cast<std::int64_t>(b);
    cplx z = phase_turns(-static_cast<double>(i0) * step);
    const std::size_t e = std::min(p.v.size(), b + kBlock);
    for (std::size_t i = b; i < e; ++i) {
      p.v[i] = g.cmf().m1_z(z) * half_phi.v[i];
      z *= zstep;
    }
  }
  return p;
}

std::pair<FourierProfile1D, FourierProfile1D> build_generators(int K, int T, int log2_pitch,
                                                               double range) {
  Generator1D g(K, T, std::max(range, 2.0));
  FourierProfile1D phi = sample_phi(g, log2_pitch, range);
  FourierProfile1D psi = sample_psi(g, log2_pitch, range);
  phi.delta = support_floor(phi);
  return {std::move(phi), std::move(psi)};
}

double support_floor(const FourierProfile1D& phi) {
  const std::int64_t half = std::int64_t{1} << (phi.log2_pitch - 1);
  if (phi.log2_pitch < 1 || -half < phi.i_min || half > phi.i_max())
    throw std::invalid_argument("support_floor: profile does not cover [-1/2, 1/2]");
  double lo = std::abs(phi.at(-half));
  for (std::int64_t i = -half; i <= half; ++i) lo = std::min(lo, std::abs(phi.at(i)));
  if (lo <= 1e-8) throw std::runtime_error("support_floor: support condition violated (delta <= 1e-8)");
  return lo;
}

double support_floor(const Generator1D& g, int scan_points) {
  double lo = std::abs(g.phi_hat(-0.5));
  for (int i = 0; i <= scan_points; ++i) {
    const double xi = -0.5 + static_cast<double>(i) / scan_points;
    lo = std::min(lo, std::abs(g.phi_hat(xi)));
  }
  if (lo <= 1e-8) throw std::runtime_error("support_floor: support condition violated (delta <= 1e-8)");
  return lo;
}

namespace {

// Per-octave envelope maxima of |f| over [2^e0, 2^{e1+1}); returns the
// log-log fit. Sets *degenerate when the envelope falls below 1e-14.
// Sampling is dense enough to resolve the unit-period oscillation of the
// tail (psi_hat vanishes at even integers) and offset off the zero lattice.
LinFit envelope_fit(const std::function<cplx(double)>& f, int e0, int e1, bool* degenerate) {
  std::vector<double> lx, ly;
  for (int e = e0; e <= e1; ++e) {
    const int dense = e < 4 ? 64 : std::min(4096, 1 << (e + 2));
    double env = 0;
    for (int i = 0; i < dense; ++i) {
      const double xi = std::exp2(e) * (1.0 + (static_cast<double>(i) + 0.381966) / dense);
      env = std::max(env, std::abs(f(xi)));
    }
    if (env < 1e-14) {
      *degenerate = true;
      continue;
    }
    lx.push_back(M_LN2 * (e + 0.5));
    ly.push_back(std::log(env));
  }
  if (lx.size() < 2) {
    *degenerate = true;
    return {};
  }
  return linfit(lx, ly);
}

}  // namespace

DecayFit decay_fit(const std::function<cplx(double)>& f, const DecayParams* params) {
  DecayFit out;
  auto deriv = [&f](double xi) {
    const double h = std::exp2(std::round(std::log2(xi)) - 20.0);
    return (f(xi + h) - f(xi - h)) / (2.0 * h);
  };
  LinFit near0 = envelope_fit(f, -10, -7, &out.degenerate);
  LinFit tail = envelope_fit(f, 3, 8, &out.degenerate);
  LinFit near0d = envelope_fit(deriv, -10, -7, &out.degenerate);
  LinFit taild = envelope_fit(deriv, 3, 8, &out.degenerate);
  if (out.degenerate) return out;
  out.alpha_hat = near0.slope;
  out.beta_hat = -tail.slope;
  out.alpha_hat_d1 = near0d.slope;
  out.beta_hat_d1 = -taild.slope;
  out.c_near = std::exp(near0.intercept);
  out.c_tail = std::exp(tail.intercept);
  if (params) {
    out.pass_alpha = std::min(out.alpha_hat, out.alpha_hat_d1) + 1e-6 >= params->alpha;
    out.pass_beta = std::min(out.beta_hat, out.beta_hat_d1) + 1e-6 >= params->beta;
  }
  return out;
}

DecayFit decay_fit(const Generator1D& g, const DecayParams* params) {
  return decay_fit([&g](double xi) { return g.psi_hat(xi); }, params);
}

void save_profile(const FourierProfile1D& p, const std::string& path_base) {
  {
    std::ofstream bin(path_base + ".bin", std::ios::binary);
    if (!bin) throw std::runtime_error("save_profile: cannot open " + path_base + ".bin");
    for (const cplx& z : p.v) {
      const double re = z.real(), im = z.imag();
      bin.write(reinterpret_cast<const char*>(&re), sizeof re);
      bin.write(reinterpret_cast<const char*>(&im), sizeof im);
    }
  }
  nlohmann::json j;
  j["k"] = p.K;
  j["t"] = p.T;
  j["log2_pitch"] = p.log2_pitch;
  j["i_min"] = p.i_min;
  j["count"] = p.v.size();
  j["support_radius"] = p.support_radius;
  j["delta"] = p.delta;
  j["alpha_hat"] = p.alpha_hat;
  j["beta_hat"] = p.beta_hat;
  std::ofstream side(path_base + ".json");
  side << j.dump(2) << "\n";
}

FourierProfile1D load_profile(const std::string& path_base) {
  std::ifstream side(path_base + ".json");
  if (!side) throw std::runtime_error("load_profile: missing sidecar " + path_base + ".json");
  nlohmann::json j;
  side >> j;
  FourierProfile1D p;
  p.K = j.at("k").get<int>();
  p.T = j.at("t").get<int>();
  p.log2_pitch = j.at("log2_pitch").get<int>();
  p.i_min = j.at("i_min").get<std::int64_t>();
  const auto count = j.at("count").get<std::size_t>();
  p.support_radius = j.at("support_radius").get<double>();
  auto opt = [&j](const char* key) {
    return j.at(key).is_null() ? std::numeric_limits<double>::quiet_NaN() : j.at(key).get<double>();
  };
  p.delta = opt("delta");
  p.alpha_hat = opt("alpha_hat");
  p.beta_hat = opt("beta_hat");
  std::ifstream bin(path_base + ".bin", std::ios::binary);
  if (!bin) throw std::runtime_error("load_profile: missing data " + path_base + ".bin");
  p.v.resize(count);
  for (cplx& z : p.v) {
    double re = 0, im = 0;
    bin.read(reinterpret_cast<char*>(&re), sizeof re);
    bin.read(reinterpret_cast<char*>(&im), sizeof im);
    z = {re, im};
  }
  if (!bin) throw std::runtime_error("load_profile: truncated data file");
  return p;
}

}  // namespace dsh
