#pragma once

// Independent brute-force oracles shared by the unit and acceptance tests.
// None of these reuse the library's evaluation paths.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

namespace oracle {

/// prod_{n>=1} (1 - q^n)^24 by multiplying in one linear factor at a time, shifted by q.
inline std::vector<long long> tau_naive(int limit) {
    std::vector<long long> poly(limit, 0);  // coefficients of q^0 .. q^{limit-1}
    poly[0] = 1;
    for (int n = 1; n < limit; ++n)
        for (int rep = 0; rep < 24; ++rep)
            for (int d = limit - 1; d >= n; --d) poly[d] -= poly[d - n];
    std::vector<long long> tau(limit + 1, 0);
    for (int n = 1; n <= limit; ++n) tau[n] = poly[n - 1];
    return tau;
}

inline std::vector<std::uint64_t> r3_triple_loop(int limit) {
    std::vector<std::uint64_t> r(limit + 1, 0);
    const int b = static_cast<int>(std::sqrt(limit)) + 1;
    for (int a = -b; a <= b; ++a)
        for (int c = -b; c <= b; ++c)
            for (int d = -b; d <= b; ++d) {
                const int s = a * a + c * c + d * d;
                if (s <= limit) ++r[s];
            }
    return r;
}

inline bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Lambda(n) by trial division.
inline double lambda(long long n) {
    for (long long p = 2; p <= n; ++p) {
        if (n % p != 0) continue;
        long long m = n;
        while (m % p == 0) m /= p;
        return m == 1 ? std::log(static_cast<double>(p)) : 0.0;
    }
    return 0.0;
}

inline std::complex<double> e(double t) {
    t -= std::floor(t);
    return std::polar(1.0, 2.0 * std::numbers::pi * t);
}

inline std::vector<std::complex<double>> naive_dft(const std::vector<std::complex<double>>& a, int sign) {
    const std::size_t n = a.size();
    std::vector<std::complex<double>> out(n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t r = 0; r < n; ++r)
            out[j] += a[r] * e(sign * static_cast<double>((r * j) % n) / static_cast<double>(n));
    return out;
}

/// #{1 <= m_i <= M : m1^2 + m3^2 = m2^2 + m4^2} by four nested loops.
inline std::uint64_t fourth_moment_quartic(int M) {
    std::uint64_t c = 0;
    for (int a = 1; a <= M; ++a)
        for (int b = 1; b <= M; ++b)
            for (int d = 1; d <= M; ++d)
                for (int f = 1; f <= M; ++f)
                    if (a * a + d * d == b * b + f * f) ++c;
    return c;
}

/// sum_{n1+n2+n3=N} w(n1) w(n2) w(n3) over all ordered pairs (n1, n2), Kahan-summed.
inline double ternary_brute(const std::vector<double>& w, int N) {
    double sum = 0.0, comp = 0.0;
    for (int n1 = 0; n1 <= N; ++n1)
        for (int n2 = 0; n1 + n2 <= N; ++n2) {
            const double v = w[n1] * w[n2] * w[N - n1 - n2];
            const double y = v - comp;
            const double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
    return sum;
}

}  // namespace oracle
