#include "dualshear/cartoon.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dsh {

double radius_at(const CartoonSpec& spec, double theta) {
  double r = spec.radius_cos.empty() ? 0.0 : spec.radius_cos[0];
  for (std::size_t k = 1; k < spec.radius_cos.size(); ++k)
    r += spec.radius_cos[k] * std::cos(static_cast<double>(k) * theta);
  for (std::size_t k = 0; k < spec.radius_sin.size(); ++k)
    r += spec.radius_sin[k] * std::sin(static_cast<double>(k + 1) * theta);
  return r;
}

namespace {

void radius_derivs(const CartoonSpec& spec, double theta, double* r, double* dr, double* ddr) {
  *r = spec.radius_cos.empty() ? 0.0 : spec.radius_cos[0];
  *dr = 0;
  *ddr = 0;
  for (std::size_t k = 1; k < spec.radius_cos.size(); ++k) {
    const double kk = static_cast<double>(k);
    *r += spec.radius_cos[k] * std::cos(kk * theta);
    *dr -= spec.radius_cos[k] * kk * std::sin(kk * theta);
    *ddr -= spec.radius_cos[k] * kk * kk * std::cos(kk * theta);
  }
  for (std::size_t k = 0; k < spec.radius_sin.size(); ++k) {
    const double kk = static_cast<double>(k + 1);
    *r += spec.radius_sin[k] * std::sin(kk * theta);
    *dr += spec.radius_sin[k] * kk * std::cos(kk * theta);
    *ddr -= spec.radius_sin[k] * kk * kk * std::sin(kk * theta);
  }
}

double bump_value(const Bump& b, double x, double y) {
  const double dx = x - b.cx, dy = y - b.cy;
  const double u = (dx * dx + dy * dy) / (b.h * b.h);
  if (u >= 1.0) return 0.0;
  const double w = 1.0 - u;
  return b.amp * w * w * w;
}

void validate(const CartoonSpec& spec) {
  double rmin = 1e30, rmax = 0;
  for (int i = 0; i < 4096; ++i) {
    const double r = radius_at(spec, 2.0 * M_PI * i / 4096.0);
    rmin = std::min(rmin, r);
    rmax = std::max(rmax, r);
  }
  if (rmin <= 0) throw std::invalid_argument("cartoon spec: radius must stay positive");
  if (spec.cx - rmax < 0 || spec.cx + rmax > 1 || spec.cy - rmax < 0 || spec.cy + rmax > 1)
    throw std::invalid_argument("cartoon spec: region leaks outside [0,1]^2");
  for (const auto* part : {&spec.f0, &spec.f1})
    for (const Bump& b : *part) {
      if (b.h <= 0) throw std::invalid_argument("cartoon spec: bump radius must be positive");
      if (b.cx - b.h < 0 || b.cx + b.h > 1 || b.cy - b.h < 0 || b.cy + b.h > 1)
        throw std::invalid_argument("cartoon spec: bump leaks outside [0,1]^2");
    }
}

// Grid maximization of |f|, |grad f|, |D^2 f| (central differences); the
// derivative estimates carry a 2x safety factor, the value term is exact at
// its maximum for constants (f1 == 1 must certify at norm exactly 1).
double c2_norm_estimate(const std::vector<Bump>& bumps, double constant) {
  const int n = 512;
  const double h = 1.0 / 2048.0;
  double mv = std::abs(constant), md = 0;
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      const double x = static_cast<double>(i) / n, y = static_cast<double>(j) / n;
      const double f = bump_field(bumps, x, y);
      const double fx = (bump_field(bumps, x + h, y) - bump_field(bumps, x - h, y)) / (2 * h);
      const double fy = (bump_field(bumps, x, y + h) - bump_field(bumps, x, y - h)) / (2 * h);
      const double fxx =
          (bump_field(bumps, x + h, y) - 2 * f + bump_field(bumps, x - h, y)) / (h * h);
      const double fyy =
          (bump_field(bumps, x, y + h) - 2 * f + bump_field(bumps, x, y - h)) / (h * h);
      const double fxy = (bump_field(bumps, x + h, y + h) - bump_field(bumps, x + h, y - h) -
                          bump_field(bumps, x - h, y + h) + bump_field(bumps, x - h, y - h)) /
                         (4 * h * h);
      mv = std::max(mv, std::abs(constant + f));
      md = std::max({md, std::abs(fx), std::abs(fy), std::abs(fxx), std::abs(fyy), std::abs(fxy)});
    }
  }
  return std::max(mv, 2.0 * md);
}

}  // namespace

bool inside_region(const CartoonSpec& spec, double x, double y) {
  const double dx = x - spec.cx, dy = y - spec.cy;
  const double r = std::sqrt(dx * dx + dy * dy);
  if (r == 0) return true;
  return r < radius_at(spec, std::atan2(dy, dx));
}

double bump_field(const std::vector<Bump>& bumps, double x, double y) {
  double v = 0;
  for (const Bump& b : bumps) v += bump_value(b, x, y);
  return v;
}

std::vector<double> generate(const CartoonSpec& spec, int n) {
  validate(spec);
  if (c2_norm_estimate(spec.f0, spec.f0_const) > 1.0 ||
      c2_norm_estimate(spec.f1, spec.f1_const) > 1.0)
    throw std::invalid_argument("cartoon spec: piece C2 norm exceeds 1");
  std::vector<double> f(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    const double x = (i + 0.5) / n;
    for (int j = 0; j < n; ++j) {
      const double y = (j + 0.5) / n;
      double v = spec.f0_const + bump_field(spec.f0, x, y);
      if (inside_region(spec, x, y)) v += spec.f1_const + bump_field(spec.f1, x, y);
      f[static_cast<std::size_t>(i) * n + j] = v;
    }
  }
  return f;
}

CurvatureReport curvature_report(const CartoonSpec& spec) {
  CurvatureReport rep;
  rep.min_radius = 1e30;
  for (int i = 0; i < (1 << 16); ++i) {
    const double theta = 2.0 * M_PI * i / (1 << 16);
    double r, dr, ddr;
    radius_derivs(spec, theta, &r, &dr, &ddr);
    rep.min_radius = std::min(rep.min_radius, r);
    const double denom = std::pow(r * r + dr * dr, 1.5);
    if (denom > 0)
      rep.max_abs_kappa = std::max(rep.max_abs_kappa,
                                   std::abs((r * r + 2 * dr * dr - r * ddr) / denom));
  }
  rep.c2_f0 = c2_norm_estimate(spec.f0, spec.f0_const);
  rep.c2_f1 = c2_norm_estimate(spec.f1, spec.f1_const);
  return rep;
}

CartoonSpec parse_cartoon_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cartoon spec: cannot open " + path);
  CartoonSpec spec;
  spec.radius_cos.clear();
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "center") {
      ls >> spec.cx >> spec.cy;
    } else if (key == "radius_cos") {
      double v;
      while (ls >> v) spec.radius_cos.push_back(v);
    } else if (key == "radius_sin") {
      double v;
      while (ls >> v) spec.radius_sin.push_back(v);
    } else if (key == "f0_const") {
      ls >> spec.f0_const;
    } else if (key == "f1_const") {
      ls >> spec.f1_const;
    } else if (key == "bump0" || key == "bump1") {
      Bump b;
      ls >> b.cx >> b.cy >> b.h >> b.amp;
      (key == "bump0" ? spec.f0 : spec.f1).push_back(b);
    } else {
      throw std::runtime_error("cartoon spec: unknown key '" + key + "'");
    }
  }
  return spec;
}

void write_cartoon_spec(const CartoonSpec& spec, const std::string& path) {
  std::ofstream out(path);
  out << "center " << spec.cx << " " << spec.cy << "\n";
  if (spec.f0_const != 0) out << "f0_const " << spec.f0_const << "\n";
  if (spec.f1_const != 0) out << "f1_const " << spec.f1_const << "\n";
  out << "radius_cos";
  for (double v : spec.radius_cos) out << " " << v;
  out << "\nradius_sin";
  for (double v : spec.radius_sin) out << " " << v;
  out << "\n";
  for (const Bump& b : spec.f0)
    out << "bump0 " << b.cx << " " << b.cy << " " << b.h << " " << b.amp << "\n";
  for (const Bump& b : spec.f1)
    out << "bump1 " << b.cx << " " << b.cy << " " << b.h << " " << b.amp << "\n";
}

CartoonSpec default_phantom() {
  CartoonSpec spec;
  spec.cx = 0.5;
  spec.cy = 0.5;
  spec.radius_cos = {0.27, 0.0, 0.035, 0.0, 0.012};
  spec.radius_sin = {0.0, 0.025, 0.018};
  spec.f0 = {{0.5, 0.5, 0.48, 0.018}};
  spec.f1_const = 0.45;
  spec.f1 = {{0.47, 0.53, 0.46, 0.012}};
  return spec;
}

}  // namespace dsh
