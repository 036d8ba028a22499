#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "dualshear/cascade.hpp"
#include "dualshear/filter_bank.hpp"
#include "dualshear/grid.hpp"
#include "dualshear/subband.hpp"

namespace dsh {

struct SystemConfig {
  int n = 256;
  int gen_order = 4;  // K
  int win_order = 4;  // K_g
  int jmax = -1;      // filter-sum truncation; -1 selects L
  int j_cap = -1;     // top-N candidate-pool cap on j; -1 = no cap
  int p_cap = -1;     // top-N candidate-pool cap on p; -1 = no cap
  int depth = 0;      // 1-D product depth; 0 = auto
  double support_threshold = 1e-6;
  double gram_tol = 1e-3;
  unsigned threads = 0;

  int levels() const;
  int effective_jmax() const { return jmax < 0 ? levels() : jmax; }
  std::string digest() const;
};

struct CoeffSlice {
  SliceKey key;
  int n1 = 0, n2 = 0;
  std::vector<double> v;  // real frame coefficients, m1-major
};

struct ShearBlock {
  int cone = 0;
  ShearParam s;
  std::vector<CoeffSlice> slices;
};

/// Analysis output: per (cone, shear) the full grid-complete slice tree.
/// Stored count is exactly 2 * #shears * n^2.
struct CoefficientTable {
  int n = 0;
  std::string digest;
  std::vector<ShearBlock> blocks;  // cone-major, shears ascending by value

  std::size_t total_count() const;
  double energy() const;
};

/// The dualizable shearlet system on one grid: filter bank (continuum
/// window profiles) + exact sheared subband trees (periodic CMF cascades).
/// Immutable after construction; analyze/synthesize are const and
/// thread-safe.
class DualizableSystem {
 public:
  explicit DualizableSystem(SystemConfig cfg);

  const SystemConfig& config() const { return cfg_; }
  const FourierGrid& grid() const { return grid_; }
  const FilterBank& bank() const { return bank_; }
  const Generator1D& generator() const { return gen_; }
  const DirectionalWindow& window() const { return win_; }
  const std::vector<ShearParam>& shears() const { return bank_.shears; }
  int levels() const { return grid_.L; }

  CoefficientTable analyze(const std::vector<double>& f) const;
  std::vector<double> synthesize_dual(const CoefficientTable& t) const;

  /// Fourier coefficients (raw layout) of a pixel field, and back.
  std::vector<cplx> spectrum(const std::vector<double>& f) const;
  std::vector<double> field(const std::vector<cplx>& fc) const;

  std::vector<SliceKey> slices_for(const ShearParam& s) const {
    return slice_tree(grid_.L, s.j0());
  }
  SliceSpec slice_spec(const ShearParam& s, const SliceKey& k) const;

  /// Unfiltered orthonormal layer of one shear (tensor-wavelet baseline and
  /// test oracles).
  std::vector<CoeffSlice> onb_analyze(const ShearParam& s, const cplx* ch) const;
  void onb_adjoint(const ShearParam& s, const std::vector<CoeffSlice>& in, cplx* acc) const;

 private:
  SystemConfig cfg_;
  FourierGrid grid_;
  Generator1D gen_;
  DirectionalWindow win_;
  FilterBank bank_;
  std::map<int, CascadeTables> casc_;                // by shear denominator t
  std::map<std::tuple<int, int, int>, VTable> vt_;   // (t, depth, kind: 0 phi, 1 wav)
};

void save_table(const CoefficientTable& t, const std::string& dir);
CoefficientTable load_table(const std::string& dir);

}  // namespace dsh
