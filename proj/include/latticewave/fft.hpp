#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace latticewave {

using cdouble = std::complex<double>;

namespace detail {

inline bool is_pow2(std::size_t n) { return n && (n & (n - 1)) == 0; }

// Iterative radix-2 Cooley-Tukey, in place, sign = -1 forward / +1 inverse
// (unnormalized).
inline void fft_pow2(std::vector<cdouble>& a, int sign) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * M_PI / static_cast<double>(len);
    const cdouble wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      cdouble w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const cdouble even = a[i + k];
        const cdouble odd = a[i + k + len / 2] * w;
        a[i + k] = even + odd;
        a[i + k + len / 2] = even - odd;
        w *= wl;
      }
    }
  }
}

// Direct O(n^2) transform for sizes that are not powers of two (small test
// sizes only).
inline std::vector<cdouble> dft_direct(const std::vector<cdouble>& a,
                                       int sign) {
  const std::size_t n = a.size();
  std::vector<cdouble> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    cdouble s(0.0, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      const double ang =
          sign * 2.0 * M_PI * static_cast<double>(j) * static_cast<double>(k) /
          static_cast<double>(n);
      s += a[j] * cdouble(std::cos(ang), std::sin(ang));
    }
    out[k] = s;
  }
  return out;
}

}  // namespace detail

// Forward DFT, convention X_k = sum_j x_j exp(-2 pi i j k / n).
inline void fft_forward(std::vector<cdouble>& a) {
  if (detail::is_pow2(a.size()))
    detail::fft_pow2(a, -1);
  else
    a = detail::dft_direct(a, -1);
}

// Inverse DFT including the 1/n normalization.
inline void fft_inverse(std::vector<cdouble>& a) {
  if (detail::is_pow2(a.size()))
    detail::fft_pow2(a, +1);
  else
    a = detail::dft_direct(a, +1);
  const double inv = 1.0 / static_cast<double>(a.size());
  for (auto& z : a) z *= inv;
}

}  // namespace latticewave
