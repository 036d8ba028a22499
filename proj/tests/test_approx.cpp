#include <doctest.h>
#include <filesystem>
#include <fstream>

#include <random>

#include "dualshear/approx.hpp"
#include "dualshear/cartoon.hpp"
#include "dualshear/elements.hpp"

using namespace dsh;

namespace {

const DualizableSystem& sys64() {
  static DualizableSystem sys([] {
    SystemConfig cfg;
    cfg.n = 64;
    cfg.threads = 2;
    return cfg;
  }());
  return sys;
}

}  // namespace

TEST_SUITE("approx") {

TEST_CASE("rate_fit on synthetic power laws") {
  RateCurve c1;
  for (std::size_t n : {64u, 128u, 256u, 512u, 1024u, 2048u, 4096u})
    c1.pts.push_back({n, 1.0 / static_cast<double>(n)});
  const RateFit f1 = rate_fit(c1);
  CHECK(!f1.degenerate);
  CHECK(f1.slope == doctest::Approx(-1.0).epsilon(0.01));
  CHECK(f1.gap_to_optimal == doctest::Approx(0.0).epsilon(0.02));

  RateCurve c2;
  for (std::size_t n : {64u, 128u, 256u, 512u, 1024u, 2048u, 4096u})
    c2.pts.push_back({n, std::log(static_cast<double>(n)) / static_cast<double>(n)});
  const RateFit f2 = rate_fit(c2);
  CHECK(f2.log_corrected_slope == doctest::Approx(-1.0).epsilon(0.02));

  RateCurve flat;
  for (std::size_t n : {64u, 128u, 256u, 512u, 1024u, 2048u}) flat.pts.push_back({n, 0.125});
  const RateFit f3 = rate_fit(flat);
  CHECK(f3.degenerate);
  CHECK(std::abs(f3.slope) < 0.01);

  RateCurve tiny;
  tiny.pts = {{64, 0.5}, {128, 0.25}, {4096, 0.01}};
  CHECK_THROWS_AS(rate_fit(tiny), std::invalid_argument);  // < 5 points
}

TEST_CASE("full-budget reconstruction and monotone errors") {
  const auto& sys = sys64();
  const auto f = generate(default_phantom(), 64);
  const CoefficientTable table = sys.analyze(f);
  const std::size_t total = table.total_count();
  const NTermResult full = nterm_approx(sys, f, table, total);
  CHECK(full.err <= 1e-10);
  double prev = 1e30;
  for (std::size_t n : {32u, 128u, 512u, 2048u}) {
    const NTermResult r = nterm_approx(sys, f, table, n);
    CHECK(r.kept == n);
    CHECK(r.err <= prev + 1e-12);
    prev = r.err;
  }
  CHECK_THROWS_AS(nterm_approx(sys, f, table, total + 1), std::domain_error);
  CHECK_THROWS_AS(nterm_approx(sys, f, table, 0), std::domain_error);
}

TEST_CASE("n = 1 on a scaled dual element recovers it (spatial oracle)") {
  const auto& sys = sys64();
  const LambdaIndex lam{0, 4, ShearParam(1, 1), 0, 2, 3};
  std::vector<double> f = element_spatial(sys, lam, ElementKind::dual);
  for (auto& x : f) x *= 3.5;
  const CoefficientTable table = sys.analyze(f);
  const NTermResult r = nterm_approx(sys, f, table, 1);
  // the selected coefficient against the spatial brute-force inner product
  double best = 0;
  for (const auto& blk : table.blocks)
    for (const auto& s : blk.slices)
      for (double v : s.v) best = std::max(best, std::abs(v));
  std::vector<cplx> ehat(static_cast<std::size_t>(64) * 64);
  SliceSpec sp = sys.slice_spec(lam.s, SliceKey{false, lam.j, lam.p});
  slice_element(sp, lam.m1, lam.m2, ehat.data());
  const int si = sys.bank().shear_index(lam.s);
  for (std::size_t i = 0; i < ehat.size(); ++i) ehat[i] *= sys.bank().g_hat[si][i];
  const auto elem = sys.field(ehat);
  double ip = 0;
  for (std::size_t i = 0; i < f.size(); ++i) ip += f[i] * elem[i];
  ip /= 64.0 * 64.0;
  CHECK(std::abs(best - std::abs(ip)) < 1e-10);
  // one-term error consistent with removing that coefficient's dual piece
  std::vector<double> resid(f);
  for (std::size_t i = 0; i < f.size(); ++i) resid[i] -= ip * element_spatial(sys, lam, ElementKind::dual)[i];
  double num = 0, den = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    num += resid[i] * resid[i];
    den += f[i] * f[i];
  }
  CHECK(r.err == doctest::Approx(std::sqrt(num / den)).epsilon(1e-6));
}

TEST_CASE("baseline: exact inversion at full budget, worse at small budgets") {
  const auto& sys = sys64();
  const auto f = generate(default_phantom(), 64);
  const auto coeffs = baseline_analyze(sys, f);
  std::size_t total = 0;
  for (const auto& s : coeffs) total += s.v.size();
  CHECK(total == 64 * 64);
  const NTermResult full = baseline_nterm(sys, f, coeffs, total);
  CHECK(full.err <= 1e-10);
  const CoefficientTable table = sys.analyze(f);
  const NTermResult frameN = nterm_approx(sys, f, table, 256);
  const NTermResult baseN = baseline_nterm(sys, f, coeffs, 256);
  CHECK(frameN.err < baseN.err);  // directional beats separable on a cartoon
}

TEST_CASE("decay probe: degenerate inputs flagged") {
  const auto& sys = sys64();
  // f == 0: everything vanishes
  const CoefficientTable tz = sys.analyze(std::vector<double>(64 * 64, 0.0));
  const DecayProbe pz = decay_probe(sys, tz);
  CHECK(pz.j_degenerate);
  CHECK(pz.p_degenerate);
  // f == 1 on the torus: every psi-type coefficient is exactly zero
  // (vanishing moments), so the j-fit is degenerate by construction
  const CoefficientTable t1 = sys.analyze(std::vector<double>(64 * 64, 1.0));
  const DecayProbe p1 = decay_probe(sys, t1);
  CHECK(p1.j_degenerate);
  for (std::size_t j = 1; j < p1.max_by_j.size(); ++j) CHECK(p1.max_by_j[j] < 1e-12);
}

TEST_CASE("decay probe: slopes on a cartoon phantom") {
  const auto& sys = sys64();
  const auto f = generate(default_phantom(), 64);
  const DecayProbe p = decay_probe(sys, sys.analyze(f));
  CHECK(!p.j_degenerate);
  CHECK(!p.p_degenerate);
  CHECK(p.j_slope < -0.5);  // edge-dominated maxima fall with scale
  CHECK(p.p_slope < -1.0);  // acceptance pins this at K = 4
}

TEST_CASE("p-slope steepens with the generator order") {
  const auto f = generate(default_phantom(), 64);
  double prev = 0;
  for (int k : {1, 2, 4}) {
    SystemConfig cfg;
    cfg.n = 64;
    cfg.gen_order = k;
    cfg.threads = 2;
    DualizableSystem sys(cfg);
    const DecayProbe p = decay_probe(sys, sys.analyze(f));
    CHECK(p.p_slope < prev);
    prev = p.p_slope;
  }
}

TEST_CASE("selection pool honors the p cap") {
  SystemConfig cfg;
  cfg.n = 64;
  cfg.p_cap = 1;
  cfg.threads = 2;
  DualizableSystem sys(cfg);
  const auto f = generate(default_phantom(), 64);
  const CoefficientTable table = sys.analyze(f);
  CHECK(table.total_count() == 2 * sys.shears().size() * 64 * 64);  // table stays complete
  std::size_t pool = 0;
  for (const auto& blk : table.blocks)
    for (const auto& s : blk.slices)
      if (s.key.p <= 1) pool += s.v.size();
  const NTermResult full = nterm_approx(sys, f, table, pool);
  CHECK(full.kept == pool);
  CHECK_THROWS_AS(nterm_approx(sys, f, table, pool + 1), std::domain_error);
}

TEST_CASE("rate curve CSV is byte-deterministic") {
  const auto& sys = sys64();
  const auto f = generate(default_phantom(), 64);
  auto run = [&] {
    const CoefficientTable table = sys.analyze(f);
    RateCurve curve, base;
    curve.config_digest = sys.config().digest();
    base.config_digest = curve.config_digest;
    const auto bl = baseline_analyze(sys, f);
    for (std::size_t n : {32u, 128u, 512u, 2048u, 4096u}) {
      curve.pts.push_back({n, nterm_approx(sys, f, table, n).err});
      base.pts.push_back({n, baseline_nterm(sys, f, bl, n).err});
    }
    const RateFit fit = rate_fit(curve), bfit = rate_fit(base);
    const std::string path =
        (std::filesystem::temp_directory_path() / "dsh_curve_test.csv").string();
    write_rate_curve_csv(curve, fit, bfit, base, path);
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  const std::string a = run(), b = run();
  CHECK(a == b);
  CHECK(!a.empty());
}

}  // TEST_SUITE
