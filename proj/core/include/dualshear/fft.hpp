#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace dsh {

using cplx = std::complex<double>;

constexpr bool is_pow2(std::size_t n) { return n && (n & (n - 1)) == 0; }

/// Exact log2 of a power of two; throws std::invalid_argument otherwise.
int ilog2(std::size_t n);

/// Root table w[k] = exp(+2 pi i k / n), cached per n. Thread-safe.
const std::vector<cplx>& unit_roots(std::size_t n);

/// In-place radix-2 transform, n a power of two, no normalization.
/// sign = -1: sum f[k] e^{-2 pi i k m / n};  sign = +1: e^{+...}.
void fft(cplx* data, std::size_t n, int sign);

/// Strided variant (elements at data[0], data[stride], ...).
void fft_strided(cplx* data, std::size_t n, std::size_t stride, int sign);

/// 2-D transform of an n x n row-major array (rows then columns).
void fft2(cplx* data, std::size_t n, int sign);

}  // namespace dsh
