#pragma once

/**
 * @file fft.hpp
 * @brief Discrete Fourier transform of arbitrary length.
 *
 * Powers of two use an iterative radix-2 transform; other lengths go through
 * Bluestein's chirp-z reduction to a power-of-two cyclic convolution.
 * Twiddles are evaluated directly (no recurrences), so the error is
 * O(eps log N) relative to the input norm.
 */

#include <bit>
#include <cstdint>
#include <vector>

#include "numeric.hpp"

namespace cusp {

namespace detail {

/// In-place radix-2 transform, out[j] = sum_r in[r] e(sign * r j / n).
inline void fft_pow2(std::vector<complex>& a, int sign) {
    const std::size_t n = a.size();
    if (n <= 1) return;
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    std::vector<complex> roots(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k)
        roots[k] = unit_phase(sign * static_cast<std::int64_t>(k), static_cast<std::int64_t>(n));
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                const complex u = a[i + k];
                const complex v = a[i + k + len / 2] * roots[k * stride];
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
        }
    }
}

}  // namespace detail

/// out[j] = sum_{r<n} in[r] e(sign * r j / n), for any n >= 1.
inline std::vector<complex> dft(std::vector<complex> a, int sign) {
    const std::size_t n = a.size();
    if (n <= 1) return a;
    if (std::has_single_bit(n)) {
        detail::fft_pow2(a, sign);
        return a;
    }
    // r j = (r^2 + j^2 - (j - r)^2) / 2
    const std::size_t m = std::bit_ceil(2 * n - 1);
    const auto two_n = static_cast<std::int64_t>(2 * n);
    std::vector<complex> chirp(n);
    for (std::size_t k = 0; k < n; ++k) {
        const auto k2 = static_cast<std::int64_t>((static_cast<unsigned __int128>(k) * k) % static_cast<unsigned __int128>(two_n));
        chirp[k] = unit_phase(sign * k2, two_n);
    }
    std::vector<complex> u(m, complex{}), v(m, complex{});
    for (std::size_t k = 0; k < n; ++k) u[k] = a[k] * chirp[k];
    v[0] = std::conj(chirp[0]);
    for (std::size_t k = 1; k < n; ++k) v[k] = v[m - k] = std::conj(chirp[k]);
    detail::fft_pow2(u, -1);
    detail::fft_pow2(v, -1);
    for (std::size_t k = 0; k < m; ++k) u[k] *= v[k];
    detail::fft_pow2(u, 1);
    const double scale = 1.0 / static_cast<double>(m);
    for (std::size_t k = 0; k < n; ++k) a[k] = u[k] * scale * chirp[k];
    return a;
}

}  // namespace cusp
