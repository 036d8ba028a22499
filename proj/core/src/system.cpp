#include "dualshear/system.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "dualshear/parallel.hpp"
#include "dualshear/util.hpp"

namespace dsh {

int SystemConfig::levels() const { return ilog2(static_cast<std::size_t>(n)); }

std::string SystemConfig::digest() const {
  std::ostringstream os;
  os << "n=" << n << ";k=" << gen_order << ";kg=" << win_order << ";jmax=" << effective_jmax()
     << ";jcap=" << j_cap << ";pcap=" << p_cap << ";depth=" << depth
     << ";thr=" << support_threshold << ";gramtol=" << gram_tol;
  return hex64(fnv1a64(os.str()));
}

std::size_t CoefficientTable::total_count() const {
  std::size_t c = 0;
  for (const auto& b : blocks)
    for (const auto& s : b.slices) c += s.v.size();
  return c;
}

double CoefficientTable::energy() const {
  double e = 0;
  for (const auto& b : blocks)
    for (const auto& s : b.slices)
      for (double x : s.v) e += x * x;
  return e;
}

DualizableSystem::DualizableSystem(SystemConfig cfg)
    : cfg_(cfg),
      grid_(cfg.n),
      gen_(cfg.gen_order, cfg.depth, std::max(2.0 * cfg.n, 2048.0)),
      win_(build_window({cfg.win_order, cfg.depth, std::max(2.0 * cfg.n, 2048.0)})),
      bank_(build_filter_bank(cfg.n, cfg.effective_jmax(), win_, gen_, cfg.threads)) {
  int tmax = 0;
  for (const auto& s : bank_.shears) tmax = std::max(tmax, s.t);
  for (int t = 0; t <= tmax; ++t) {
    auto it = casc_.emplace(t, CascadeTables(gen_.cmf(), cfg_.n, t, grid_.L)).first;
    for (int d = 1; d <= grid_.L; ++d) {
      vt_.emplace(std::make_tuple(t, d, 0), wrap_periodic(it->second.phi(d), cfg_.n, t));
      vt_.emplace(std::make_tuple(t, d, 1), wrap_periodic(it->second.wav(d), cfg_.n, t));
    }
  }
}

SliceSpec DualizableSystem::slice_spec(const ShearParam& s, const SliceKey& k) const {
  SliceSpec sp;
  sp.n = cfg_.n;
  sp.t = s.t;
  sp.q = s.q;
  slice_dims(k, &sp.n1, &sp.n2);
  const int d1 = grid_.L - k.j;
  const int d2 = grid_.L - (k.j / 2 + d_p(k.p));
  const CascadeTables& hor = casc_.at(0);
  sp.h = (k.phi_type ? hor.phi(d1) : hor.wav(d1)).data();
  const VTable& vt = vt_.at(std::make_tuple(s.t, d2, k.p == 0 ? 0 : 1));
  sp.v = vt.v.data();
  sp.v_lo = vt.lo;
  sp.norm = std::exp2(0.5 * (d1 + d2)) / cfg_.n;
  return sp;
}

std::vector<cplx> DualizableSystem::spectrum(const std::vector<double>& f) const {
  const std::size_t nn = static_cast<std::size_t>(cfg_.n) * cfg_.n;
  if (f.size() != nn) throw std::invalid_argument("spectrum: grid mismatch (shape error)");
  std::vector<cplx> fc(nn);
  for (std::size_t i = 0; i < nn; ++i) fc[i] = f[i];
  fft2(fc.data(), static_cast<std::size_t>(cfg_.n), -1);
  const double scale = 1.0 / static_cast<double>(nn);
  for (auto& z : fc) z *= scale;
  return fc;
}

std::vector<double> DualizableSystem::field(const std::vector<cplx>& fc) const {
  const std::size_t nn = static_cast<std::size_t>(cfg_.n) * cfg_.n;
  if (fc.size() != nn) throw std::invalid_argument("field: grid mismatch (shape error)");
  std::vector<cplx> buf(fc);
  fft2(buf.data(), static_cast<std::size_t>(cfg_.n), +1);
  std::vector<double> f(nn);
  for (std::size_t i = 0; i < nn; ++i) f[i] = buf[i].real();
  return f;
}

std::vector<CoeffSlice> DualizableSystem::onb_analyze(const ShearParam& s, const cplx* ch) const {
  std::vector<CoeffSlice> out;
  for (const SliceKey& key : slices_for(s)) {
    SliceSpec sp = slice_spec(s, key);
    CoeffSlice cs;
    cs.key = key;
    cs.n1 = sp.n1;
    cs.n2 = sp.n2;
    std::vector<cplx> coeff(static_cast<std::size_t>(sp.n1) * sp.n2);
    slice_analyze(sp, ch, coeff.data());
    cs.v.resize(coeff.size());
    for (std::size_t i = 0; i < coeff.size(); ++i) cs.v[i] = coeff[i].real();
    out.push_back(std::move(cs));
  }
  return out;
}

void DualizableSystem::onb_adjoint(const ShearParam& s, const std::vector<CoeffSlice>& in,
                                   cplx* acc) const {
  for (const CoeffSlice& cs : in) {
    SliceSpec sp = slice_spec(s, cs.key);
    std::vector<cplx> coeff(cs.v.begin(), cs.v.end());
    slice_adjoint(sp, coeff.data(), acc);
  }
}

CoefficientTable DualizableSystem::analyze(const std::vector<double>& f) const {
  const int n = cfg_.n;
  const std::size_t nn = static_cast<std::size_t>(n) * n;
  const std::vector<cplx> fc0 = spectrum(f);
  const std::vector<cplx> fc1 = rot90_inv(fc0, n);

  CoefficientTable t;
  t.n = n;
  t.digest = cfg_.digest();
  const std::size_t S = bank_.shears.size();
  t.blocks.resize(2 * S);
  parallel_for(2 * S, [&](std::size_t task) {
    const int cone = static_cast<int>(task / S);
    const std::size_t si = task % S;
    ShearBlock& blk = t.blocks[task];
    blk.cone = cone;
    blk.s = bank_.shears[si];
    const std::vector<cplx>& spec = cone ? fc1 : fc0;
    const std::vector<double>& g = bank_.g_hat[si];
    std::vector<cplx> ch(nn);
    for (std::size_t i = 0; i < nn; ++i) ch[i] = spec[i] * g[i];
    blk.slices = onb_analyze(blk.s, ch.data());
  }, cfg_.threads);
  return t;
}

std::vector<double> DualizableSystem::synthesize_dual(const CoefficientTable& t) const {
  const int n = cfg_.n;
  const std::size_t nn = static_cast<std::size_t>(n) * n;
  const std::size_t S = bank_.shears.size();
  if (t.n != n || t.blocks.size() != 2 * S)
    throw std::invalid_argument("synthesize_dual: table does not match this system");

  // Fixed bucket partition (independent of thread count) keeps the
  // floating-point accumulation order, and hence the output bytes, stable.
  constexpr std::size_t kLanes = 4;
  std::vector<std::vector<cplx>> lane_acc(2 * kLanes);
  parallel_for(2 * kLanes, [&](std::size_t bucket) {
    const int cone = static_cast<int>(bucket / kLanes);
    const std::size_t lane = bucket % kLanes;
    auto& acc = lane_acc[bucket];
    acc.assign(nn, cplx{});
    std::vector<cplx> tmp(nn);
    for (std::size_t si = lane; si < S; si += kLanes) {
      const ShearBlock& blk = t.blocks[static_cast<std::size_t>(cone) * S + si];
      if (blk.cone != cone || !(blk.s == bank_.shears[si]))
        throw std::invalid_argument("synthesize_dual: block order mismatch");
      std::fill(tmp.begin(), tmp.end(), cplx{});
      onb_adjoint(blk.s, blk.slices, tmp.data());
      const std::vector<double>& g = bank_.g_hat[si];
      for (std::size_t i = 0; i < nn; ++i) acc[i] += tmp[i] * g[i];
    }
  }, cfg_.threads);

  std::vector<cplx> acc0(nn, cplx{}), acc1(nn, cplx{});
  for (std::size_t lane = 0; lane < kLanes; ++lane)
    for (std::size_t i = 0; i < nn; ++i) acc0[i] += lane_acc[lane][i];
  for (std::size_t lane = 0; lane < kLanes; ++lane)
    for (std::size_t i = 0; i < nn; ++i) acc1[i] += lane_acc[kLanes + lane][i];

  const std::vector<cplx> acc1r = rot90(acc1, n);
  std::vector<cplx> fhat(nn);
  for (std::size_t i = 0; i < nn; ++i) fhat[i] = (acc0[i] + acc1r[i]) / bank_.w_hat[i];
  return field(fhat);
}

namespace {

std::string slice_file(int cone, std::size_t si, const SliceKey& k) {
  std::ostringstream os;
  os << "c" << cone << "_s" << si << "_" << (k.phi_type ? "phi" : "psi") << k.j << "_p" << k.p
     << ".bin";
  return os.str();
}

}  // namespace

void save_table(const CoefficientTable& t, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  nlohmann::json m;
  m["n"] = t.n;
  m["config"] = t.digest;
  m["tiebreak_version"] = 1;
  nlohmann::json jb = nlohmann::json::array();
  std::size_t si = 0;
  int last_cone = -1;
  for (const auto& blk : t.blocks) {
    if (blk.cone != last_cone) {
      last_cone = blk.cone;
      si = 0;
    }
    nlohmann::json b;
    b["cone"] = blk.cone;
    b["q"] = blk.s.q;
    b["t"] = blk.s.t;
    nlohmann::json js = nlohmann::json::array();
    for (const auto& s : blk.slices) {
      nlohmann::json e;
      e["phi"] = s.key.phi_type;
      e["j"] = s.key.j;
      e["p"] = s.key.p;
      e["n1"] = s.n1;
      e["n2"] = s.n2;
      e["file"] = slice_file(blk.cone, si, s.key);
      js.push_back(e);
      std::ofstream bin(fs::path(dir) / slice_file(blk.cone, si, s.key), std::ios::binary);
      bin.write(reinterpret_cast<const char*>(s.v.data()),
                static_cast<std::streamsize>(s.v.size() * sizeof(double)));
    }
    b["slices"] = js;
    jb.push_back(b);
    ++si;
  }
  m["blocks"] = jb;
  std::ofstream out(fs::path(dir) / "manifest.json");
  out << m.dump(2) << "\n";
}

CoefficientTable load_table(const std::string& dir) {
  namespace fs = std::filesystem;
  std::ifstream in(fs::path(dir) / "manifest.json");
  if (!in) throw std::runtime_error("load_table: missing manifest in " + dir);
  nlohmann::json m;
  in >> m;
  CoefficientTable t;
  t.n = m.at("n").get<int>();
  t.digest = m.at("config").get<std::string>();
  for (const auto& b : m.at("blocks")) {
    ShearBlock blk;
    blk.cone = b.at("cone").get<int>();
    blk.s = ShearParam(b.at("q").get<std::int64_t>(), b.at("t").get<int>());
    for (const auto& e : b.at("slices")) {
      CoeffSlice s;
      s.key.phi_type = e.at("phi").get<bool>();
      s.key.j = e.at("j").get<int>();
      s.key.p = e.at("p").get<int>();
      s.n1 = e.at("n1").get<int>();
      s.n2 = e.at("n2").get<int>();
      s.v.resize(static_cast<std::size_t>(s.n1) * s.n2);
      std::ifstream bin(fs::path(dir) / e.at("file").get<std::string>(), std::ios::binary);
      if (!bin) throw std::runtime_error("load_table: missing slice file");
      bin.read(reinterpret_cast<char*>(s.v.data()),
               static_cast<std::streamsize>(s.v.size() * sizeof(double)));
      if (!bin) throw std::runtime_error("load_table: truncated slice file");
      blk.slices.push_back(std::move(s));
    }
    t.blocks.push_back(std::move(blk));
  }
  return t;
}

}  // namespace dsh
