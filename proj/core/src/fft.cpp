#include "dualshear/fft.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace dsh {

int ilog2(std::size_t n) {
  if (!is_pow2(n)) throw std::invalid_argument("ilog2: not a power of two");
  int l = 0;
  while ((std::size_t{1} << l) < n) ++l;
  return l;
}

const std::vector<cplx>& unit_roots(std::size_t n) {
  static std::mutex mu;
  static std::unordered_map<std::size_t, std::vector<cplx>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<cplx> w(n);
  const double step = 2.0 * M_PI / static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k)
    w[k] = std::polar(1.0, step * static_cast<double>(k));
  return cache.emplace(n, std::move(w)).first->second;
}

namespace {

void transform(cplx* a, std::size_t n, std::size_t stride, int sign) {
  if (n <= 1) return;
  // bit reversal
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i * stride], a[j * stride]);
  }
  const auto& w = unit_roots(n);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t ws = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        cplx tw = w[k * ws];
        if (sign < 0) tw = std::conj(tw);
        cplx& u = a[(i + k) * stride];
        cplx& v = a[(i + k + len / 2) * stride];
        const cplx t = v * tw;
        v = u - t;
        u += t;
      }
    }
  }
}

}  // namespace

void fft(cplx* data, std::size_t n, int sign) { transform(data, n, 1, sign); }

void fft_strided(cplx* data, std::size_t n, std::size_t stride, int sign) {
  transform(data, n, stride, sign);
}

void fft2(cplx* data, std::size_t n, int sign) {
  if (!is_pow2(n)) throw std::invalid_argument("fft2: size not a power of two");
  for (std::size_t r = 0; r < n; ++r) transform(data + r * n, n, 1, sign);
  std::vector<cplx> col(n);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t r = 0; r < n; ++r) col[r] = data[r * n + c];
    transform(col.data(), n, 1, sign);
    for (std::size_t r = 0; r < n; ++r) data[r * n + c] = col[r];
  }
}

}  // namespace dsh
