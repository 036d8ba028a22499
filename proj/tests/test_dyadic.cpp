#include <doctest.h>

#include <cmath>
#include <set>
#include <stdexcept>

#include "dualshear/dyadic.hpp"

using namespace dsh;

TEST_SUITE("dyadic") {

TEST_CASE("shear_set enumeration matches the definition") {
  // direct enumeration oracle: {0} u {q/2^ceil(j/2) : 0<=j<=J, odd q, |q|<=2^ceil(j/2)}
  auto oracle = [](int J) {
    std::set<double> vals;
    vals.insert(0.0);
    for (int j = 0; j <= J; ++j) {
      const std::int64_t c = std::int64_t{1} << ceil_half(j);
      for (std::int64_t q = -c; q <= c; ++q)
        if (q % 2 != 0) vals.insert(static_cast<double>(q) / static_cast<double>(c));
    }
    return vals;
  };
  for (int J : {0, 2, 4}) {
    const auto set = shear_set(J);
    const auto ref = oracle(J);
    REQUIRE(set.size() == ref.size());
    std::size_t i = 0;
    for (double v : ref) CHECK(set[i++].value() == v);  // ascending order
  }
  CHECK(shear_set(0).size() == 3);
  CHECK(shear_set(2).size() == 5);
  CHECK(shear_set(4).size() == 9);
  CHECK(shear_set(2)[0].value() == -1.0);
  CHECK(shear_set(2)[1].value() == -0.5);
  CHECK(shear_set(2)[2].value() == 0.0);
}

TEST_CASE("shear_set nesting and cardinality") {
  for (int J = 0; J <= 16; ++J) {
    const auto s = shear_set(J);
    CHECK(s.size() == (std::size_t{1} << (ceil_half(J) + 1)) + 1);
    if (J >= 2) {
      std::set<std::pair<std::int64_t, int>> big;
      for (const auto& x : s) big.insert({x.q, x.t});
      for (const auto& x : shear_set(J - 2)) CHECK(big.count({x.q, x.t}) == 1);
    }
  }
}

TEST_CASE("k_for examples and error") {
  CHECK(k_for(ShearParam(1, 1), 3) == 2);  // s = 1/2, j = 3
  CHECK(k_for(ShearParam(0, 0), 7) == 0);
  CHECK(k_for(ShearParam(3, 2), 4) == 3);  // s = 3/4, j = 4
  CHECK_THROWS_AS(k_for(ShearParam(3, 2), 2), std::domain_error);  // j0(3/4) = 3
}

TEST_CASE("uniqueness of (j,k) -> shear for j <= 12") {
  for (int j = 0; j <= 12; ++j) {
    const std::int64_t c = std::int64_t{1} << ceil_half(j);
    const auto candidates = shear_set(j);
    for (std::int64_t k = -c; k <= c; ++k) {
      if (k == 0) continue;
      const ShearParam s = ShearParam::from_k(k, ceil_half(j));
      CHECK(s.j0() <= j);
      CHECK(k_for(s, j) == k);
      int hits = 0;
      for (const auto& cand : candidates)
        if (!cand.is_zero() && cand.j0() <= j && k_for(cand, j) == k) ++hits;
      CHECK(hits == 1);
    }
  }
}

TEST_CASE("matrices examples") {
  const ShearParam zero(0, 0);
  auto m0 = matrices(0, zero, 0);
  CHECK(m0.A.a11 == 1.0);
  CHECK(m0.A.a22 == 1.0);
  auto m3 = matrices(3, zero, 0);
  CHECK(m3.A.a11 == 8.0);
  CHECK(m3.A.a22 == 2.0);
  auto mp = matrices(0, zero, 3);
  CHECK(mp.D.a22 == 0.25);  // d_3 = 2
  CHECK(mp.D.a11 == 1.0);
  for (int j = 0; j <= 10; ++j) CHECK(parabolic(j).det() == std::exp2(j + floor_half(j)));
  const Mat2 id = shear_mat(5.0) * shear_mat(-5.0);
  CHECK(id.a11 == 1.0);
  CHECK(id.a12 == 0.0);
  CHECK(sampling(0).a22 == 1.0);
  CHECK(sampling(1).a22 == 1.0);
}

TEST_CASE("A_j^{-1} S_s^{-T} = S_k^{-T} A_j^{-1} exactly (dyadic doubles)") {
  for (int j = 0; j <= 10; ++j) {
    for (const auto& s : shear_set(j)) {
      if (s.j0() > j) continue;
      const std::int64_t k = k_for(s, j);
      const ParabolicMatrices m = matrices(j, s, 0);
      const Mat2 lhs = m.A_inv * m.S_inv.transpose();
      const Mat2 rhs = shear_mat(-static_cast<double>(k)).transpose() * m.A_inv;
      CHECK(lhs.a11 == rhs.a11);
      CHECK(lhs.a12 == rhs.a12);
      CHECK(lhs.a21 == rhs.a21);
      CHECK(lhs.a22 == rhs.a22);
    }
  }
}

TEST_CASE("canonical form validation") {
  CHECK_THROWS_AS(ShearParam(2, 2), std::invalid_argument);  // even q
  CHECK_THROWS_AS(ShearParam(5, 1), std::invalid_argument);  // |s| > 1
  CHECK(ShearParam::from_k(4, 3).q == 1);                    // 4/8 -> 1/2
  CHECK(ShearParam::from_k(4, 3).t == 1);
  CHECK(ShearParam::from_k(0, 5).t == 0);
  CHECK(ShearParam::from_k(-8, 3).q == -1);  // -8/8 -> -1
  CHECK(ShearParam::from_k(-8, 3).t == 0);
  CHECK(ShearParam(1, 1).j0() == 1);
  CHECK(ShearParam(3, 2).j0() == 3);
  CHECK(ShearParam(1, 0).j0() == 0);
}

}  // TEST_SUITE
