#include "dualshear/approx.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "dualshear/util.hpp"

namespace dsh {

namespace {

double rel_l2(const std::vector<double>& f, const std::vector<double>& g) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double d = f[i] - g[i];
    num += d * d;
    den += f[i] * f[i];
  }
  return den > 0 ? std::sqrt(num / den) : std::sqrt(num);
}

bool in_pool(const SystemConfig& cfg, const SliceKey& k, bool phi_as_coarse) {
  if (cfg.p_cap >= 0 && k.p > cfg.p_cap) return false;
  if (cfg.j_cap >= 0 && !(phi_as_coarse && k.phi_type) && !k.phi_type && k.j > cfg.j_cap)
    return false;
  return true;
}

// Selection shared by the frame table and the baseline slice list. The
// candidate identifier (block, slice, flat index) is ordered exactly like
// the spec's (cone, s, j, p, m) enumeration. Out-of-pool slices carry a
// null data pointer.
struct Selection {
  std::vector<std::vector<std::vector<char>>> keep;  // [block][slice][flat]
  std::size_t kept = 0;
};

using SliceView = std::vector<std::vector<const std::vector<double>*>>;

Selection select_top(const SliceView& blocks, std::size_t n_terms, std::size_t total_pool) {
  if (n_terms == 0 || n_terms > total_pool)
    throw std::domain_error("nterm: budget outside 1..total candidate count");
  std::vector<double> mags;
  mags.reserve(total_pool);
  for (const auto& blk : blocks)
    for (const auto* s : blk)
      if (s)
        for (double x : *s) mags.push_back(std::abs(x));
  std::nth_element(mags.begin(), mags.begin() + static_cast<std::ptrdiff_t>(n_terms - 1),
                   mags.end(), std::greater<double>());
  const double thr = mags[n_terms - 1];
  mags.clear();
  mags.shrink_to_fit();

  Selection sel;
  sel.keep.resize(blocks.size());
  std::size_t strictly = 0;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    sel.keep[b].resize(blocks[b].size());
    for (std::size_t si = 0; si < blocks[b].size(); ++si) {
      const auto* v = blocks[b][si];
      if (!v) continue;
      sel.keep[b][si].assign(v->size(), 0);
      for (std::size_t i = 0; i < v->size(); ++i)
        if (std::abs((*v)[i]) > thr) {
          sel.keep[b][si][i] = 1;
          ++strictly;
        }
    }
  }
  // ties at the threshold, admitted in canonical order
  std::size_t want = n_terms - strictly;
  for (std::size_t b = 0; b < blocks.size() && want; ++b)
    for (std::size_t si = 0; si < blocks[b].size() && want; ++si) {
      const auto* v = blocks[b][si];
      if (!v) continue;
      for (std::size_t i = 0; i < v->size() && want; ++i)
        if (!sel.keep[b][si][i] && std::abs((*v)[i]) == thr) {
          sel.keep[b][si][i] = 1;
          --want;
        }
    }
  sel.kept = n_terms - want;
  return sel;
}

}  // namespace

NTermResult nterm_approx(const DualizableSystem& sys, const std::vector<double>& f,
                         const CoefficientTable& table, std::size_t n_terms) {
  const SystemConfig& cfg = sys.config();
  SliceView view(table.blocks.size());
  std::size_t pool = 0;
  for (std::size_t b = 0; b < table.blocks.size(); ++b) {
    for (const auto& s : table.blocks[b].slices) {
      const bool ok = in_pool(cfg, s.key, true);
      view[b].push_back(ok ? &s.v : nullptr);
      if (ok) pool += s.v.size();
    }
  }
  Selection sel = select_top(view, n_terms, pool);

  CoefficientTable masked = table;
  for (std::size_t b = 0; b < masked.blocks.size(); ++b)
    for (std::size_t si = 0; si < masked.blocks[b].slices.size(); ++si) {
      auto& v = masked.blocks[b].slices[si].v;
      if (!view[b][si]) {
        std::fill(v.begin(), v.end(), 0.0);
        continue;
      }
      const auto& keep = sel.keep[b][si];
      for (std::size_t i = 0; i < v.size(); ++i)
        if (!keep[i]) v[i] = 0.0;
    }
  NTermResult res;
  res.f_n = sys.synthesize_dual(masked);
  res.err = rel_l2(f, res.f_n);
  res.kept = sel.kept;
  return res;
}

NTermResult nterm_approx(const DualizableSystem& sys, const std::vector<double>& f,
                         std::size_t n_terms) {
  return nterm_approx(sys, f, sys.analyze(f), n_terms);
}

std::vector<CoeffSlice> baseline_analyze(const DualizableSystem& sys,
                                         const std::vector<double>& f) {
  const std::vector<cplx> fc = sys.spectrum(f);
  return sys.onb_analyze(ShearParam(0, 0), fc.data());
}

NTermResult baseline_nterm(const DualizableSystem& sys, const std::vector<double>& f,
                           const std::vector<CoeffSlice>& coeffs, std::size_t n_terms) {
  SliceView view(1);
  std::size_t pool = 0;
  for (const auto& s : coeffs) {
    view[0].push_back(&s.v);
    pool += s.v.size();
  }
  Selection sel = select_top(view, n_terms, pool);
  std::vector<CoeffSlice> masked = coeffs;
  for (std::size_t si = 0; si < masked.size(); ++si)
    for (std::size_t i = 0; i < masked[si].v.size(); ++i)
      if (!sel.keep[0][si][i]) masked[si].v[i] = 0.0;
  const int n = sys.grid().n;
  std::vector<cplx> acc(static_cast<std::size_t>(n) * n, cplx{});
  sys.onb_adjoint(ShearParam(0, 0), masked, acc.data());
  NTermResult res;
  res.f_n = sys.field(acc);
  res.err = rel_l2(f, res.f_n);
  res.kept = sel.kept;
  return res;
}

RateFit rate_fit(const RateCurve& curve) {
  if (curve.pts.size() < 5) throw std::invalid_argument("rate_fit: need at least 5 points");
  const double span = std::log10(static_cast<double>(curve.pts.back().n_terms)) -
                      std::log10(static_cast<double>(curve.pts.front().n_terms));
  if (span < 1.5) throw std::invalid_argument("rate_fit: need >= 1.5 decades of N");
  RateFit fit;
  std::vector<double> lx, ly, lyc;
  double emax = 0, emin = 1e300;
  for (const auto& p : curve.pts) {
    if (p.err <= 1e-15) continue;
    lx.push_back(std::log(static_cast<double>(p.n_terms)));
    ly.push_back(std::log(p.err));
    lyc.push_back(std::log(p.err) - std::log(std::log(static_cast<double>(p.n_terms))));
    emax = std::max(emax, p.err);
    emin = std::min(emin, p.err);
  }
  if (lx.size() < 3 || emax / emin < 1.05) {
    fit.degenerate = true;
    if (lx.size() >= 2) fit.slope = linfit(lx, ly).slope;
    return fit;
  }
  fit.slope = linfit(lx, ly).slope;
  fit.log_corrected_slope = linfit(lx, lyc).slope;
  fit.gap_to_optimal = fit.slope - (-1.0);
  fit.gap_to_wavelet = fit.slope - (-0.5);
  return fit;
}

DecayProbe decay_probe(const DualizableSystem& sys, const CoefficientTable& table) {
  DecayProbe probe;
  const int L = sys.levels();
  probe.max_by_j.assign(static_cast<std::size_t>(L) + 1, 0.0);  // [0] = coarse
  std::size_t pmaxn = 0;
  for (const auto& blk : table.blocks)
    for (const auto& s : blk.slices) pmaxn = std::max(pmaxn, static_cast<std::size_t>(s.key.p));
  probe.max_by_p.assign(pmaxn + 1, 0.0);
  for (const auto& blk : table.blocks)
    for (const auto& s : blk.slices) {
      double m = 0;
      for (double x : s.v) m = std::max(m, std::abs(x));
      const std::size_t jb = s.key.phi_type ? 0 : static_cast<std::size_t>(s.key.j) + 1;
      probe.max_by_j[jb] = std::max(probe.max_by_j[jb], m);
      probe.max_by_p[static_cast<std::size_t>(s.key.p)] = std::max(
          probe.max_by_p[static_cast<std::size_t>(s.key.p)], m);
    }
  std::vector<double> x, y;
  for (std::size_t j = 1; j < probe.max_by_j.size(); ++j)
    if (probe.max_by_j[j] > 1e-13) {
      x.push_back(static_cast<double>(j - 1));
      y.push_back(std::log2(probe.max_by_j[j]));
    }
  if (x.size() < 3)
    probe.j_degenerate = true;
  else
    probe.j_slope = linfit(x, y).slope;
  x.clear();
  y.clear();
  for (std::size_t p = 0; p < probe.max_by_p.size(); ++p)
    if (probe.max_by_p[p] > 1e-13) {
      x.push_back(static_cast<double>(p));
      y.push_back(std::log2(probe.max_by_p[p]));
    }
  if (x.size() < 3)
    probe.p_degenerate = true;
  else
    probe.p_slope = linfit(x, y).slope;
  return probe;
}

void write_rate_curve_csv(const RateCurve& curve, const RateFit& fit, const RateFit& baseline_fit,
                          const RateCurve& baseline, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_rate_curve_csv: cannot open " + path);
  char buf[160];
  out << "# config=" << curve.config_digest << " phantom=" << curve.phantom_id
      << " tiebreak_version=" << curve.tiebreak_version << "\n";
  std::snprintf(buf, sizeof buf, "# slope=%.6f log_corrected_slope=%.6f", fit.slope,
                fit.log_corrected_slope);
  out << buf << "\n";
  std::snprintf(buf, sizeof buf, "# baseline_slope=%.6f baseline_log_corrected_slope=%.6f",
                baseline_fit.slope, baseline_fit.log_corrected_slope);
  out << buf << "\n";
  out << "n_terms,err,baseline_err\n";
  for (std::size_t i = 0; i < curve.pts.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g", curve.pts[i].n_terms, curve.pts[i].err,
                  i < baseline.pts.size() ? baseline.pts[i].err : 0.0);
    out << buf << "\n";
  }
}

}  // namespace dsh
