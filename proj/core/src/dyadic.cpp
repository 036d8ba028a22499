#include "dualshear/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dsh {

ShearParam::ShearParam(std::int64_t q_, int t_) : q(q_), t(t_) {
  if (t < 0) throw std::invalid_argument("ShearParam: negative exponent");
  const bool origin = (t == 0 && q == 0);
  if (!origin && (q % 2 == 0)) throw std::invalid_argument("ShearParam: q must be odd");
  if (std::llabs(q) > (std::int64_t{1} << t)) throw std::invalid_argument("ShearParam: |s| > 1");
}

ShearParam ShearParam::from_k(std::int64_t k, int e) {
  if (e < 0) throw std::invalid_argument("ShearParam::from_k: negative exponent");
  if (std::llabs(k) > (std::int64_t{1} << e)) throw std::invalid_argument("ShearParam::from_k: |s| > 1");
  if (k == 0) return ShearParam(0, 0);
  while (e > 0 && k % 2 == 0) {
    k /= 2;
    --e;
  }
  return ShearParam(k, e);
}

bool ShearParam::operator<(const ShearParam& o) const {
  // q/2^t < q'/2^t'  <=>  q * 2^{t'} < q' * 2^t (exponents are small)
  const int tt = std::max(t, o.t);
  return q * (std::int64_t{1} << (tt - t)) < o.q * (std::int64_t{1} << (tt - o.t));
}

std::vector<ShearParam> shear_set(int J) {
  if (J < 0) throw std::invalid_argument("shear_set: J < 0");
  const int tmax = ceil_half(J);
  std::vector<ShearParam> out;
  out.emplace_back(0, 0);
  out.emplace_back(1, 0);
  out.emplace_back(-1, 0);
  for (int t = 1; t <= tmax; ++t)
    for (std::int64_t q = -((std::int64_t{1} << t) - 1); q <= (std::int64_t{1} << t) - 1; q += 2)
      out.emplace_back(q, t);
  std::sort(out.begin(), out.end());
  return out;
}

std::int64_t k_for(const ShearParam& s, int j) {
  if (j < s.j0()) throw std::domain_error("k_for: scale below j0(s)");
  return s.q << (ceil_half(j) - s.t);
}

Mat2 parabolic(int j) { return {std::exp2(j), 0, 0, std::exp2(floor_half(j))}; }
Mat2 parabolic_tilde(int j) { return {std::exp2(floor_half(j)), 0, 0, std::exp2(j)}; }
Mat2 shear_mat(double s) { return {1, s, 0, 1}; }
Mat2 sampling(int p) { return {1, 0, 0, std::exp2(-d_p(p))}; }

ParabolicMatrices matrices(int j, const ShearParam& s, int p) {
  if (j < 0) throw std::invalid_argument("matrices: j < 0");
  if (p < 0) throw std::invalid_argument("matrices: p < 0");
  ParabolicMatrices m;
  m.A = parabolic(j);
  m.A_inv = {std::exp2(-j), 0, 0, std::exp2(-floor_half(j))};
  m.Atilde = parabolic_tilde(j);
  m.Atilde_inv = {std::exp2(-floor_half(j)), 0, 0, std::exp2(-j)};
  m.S = shear_mat(s.value());
  m.S_inv = shear_mat(-s.value());
  m.D = sampling(p);
  m.D_inv = {1, 0, 0, std::exp2(d_p(p))};
  return m;
}

ParabolicMatrices matrices_k(int j, std::int64_t k, int p) {
  return matrices(j, ShearParam::from_k(k, ceil_half(j)), p);
}

}  // namespace dsh
