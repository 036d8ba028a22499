#pragma once

#include <cstdint>
#include <span>
#include <string>

namespace dsh {

/// Least-squares line y ~ a + b x.
struct LinFit {
  double intercept = 0, slope = 0;
};
LinFit linfit(std::span<const double> x, std::span<const double> y);

/// floor(a / 2^t) with arithmetic (toward -inf) semantics.
inline std::int64_t floordiv_pow2(std::int64_t a, int t) { return a >> t; }

std::uint64_t fnv1a64(const std::string& s);
std::string hex64(std::uint64_t v);

}  // namespace dsh
