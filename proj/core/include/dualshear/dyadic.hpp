#pragma once

#include <cstdint>
#include <vector>

namespace dsh {

inline int d_p(int p) { return p > 1 ? p - 1 : 0; }

/// floor(j/2) valid for negative j as well.
inline int floor_half(int j) { return j >= 0 ? j / 2 : -((-j + 1) / 2); }
inline int ceil_half(int j) { return j >= 0 ? (j + 1) / 2 : -((-j) / 2); }

/// A dyadic-rational shear s = q / 2^t in canonical form:
/// either (t, q) = (0, 0) or q odd, with |q| <= 2^t (so |s| <= 1).
struct ShearParam {
  std::int64_t q = 0;
  int t = 0;

  ShearParam() = default;
  ShearParam(std::int64_t q_, int t_);  // validates canonical form

  /// Canonicalize s = k / 2^e (reduces the fraction). Requires |k| <= 2^e.
  static ShearParam from_k(std::int64_t k, int e);

  double value() const { return static_cast<double>(q) / static_cast<double>(std::int64_t{1} << t); }
  bool is_zero() const { return q == 0; }

  /// Smallest scale at which this shear is representable: j0 = max(2t - 1, 0).
  int j0() const { return t >= 1 ? 2 * t - 1 : 0; }

  bool operator==(const ShearParam& o) const { return q == o.q && t == o.t; }
  bool operator<(const ShearParam& o) const;  // by value
};

/// S_{J/2}: all shears representable at scales 0..J, sorted ascending by value.
/// Cardinality 2^{ceil(J/2)+1} + 1.
std::vector<ShearParam> shear_set(int J);

/// k with s = k / 2^{ceil(j/2)}. Requires j >= j0(s); throws std::domain_error.
std::int64_t k_for(const ShearParam& s, int j);

struct Mat2 {
  double a11 = 1, a12 = 0, a21 = 0, a22 = 1;
  Mat2 operator*(const Mat2& o) const {
    return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
            a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
  }
  Mat2 transpose() const { return {a11, a21, a12, a22}; }
  double det() const { return a11 * a22 - a12 * a21; }
};

Mat2 parabolic(int j);          // A_j = diag(2^j, 2^{floor(j/2)})
Mat2 parabolic_tilde(int j);    // diag(2^{floor(j/2)}, 2^j)
Mat2 shear_mat(double s);       // [[1, s], [0, 1]]
Mat2 sampling(int p);           // D_p = diag(1, 2^{-d_p})

/// All matrices of Def. 2.2 for one (j, s, p), with inverses.
struct ParabolicMatrices {
  Mat2 A, A_inv;
  Mat2 Atilde, Atilde_inv;
  Mat2 S, S_inv;
  Mat2 D, D_inv;
};
ParabolicMatrices matrices(int j, const ShearParam& s, int p);
ParabolicMatrices matrices_k(int j, std::int64_t k, int p);

/// Full shearlet index: cone, scale (j = -1 marks the coarse phi-type
/// elements), shear, translation, vertical oversampling level.
struct LambdaIndex {
  int cone = 0;
  int j = -1;
  ShearParam s;
  int p = 0;
  std::int64_t m1 = 0, m2 = 0;
};

}  // namespace dsh
