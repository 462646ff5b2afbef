#pragma once

/**
 * @file arith.hpp
 * @brief Elementary arithmetic functions backed by a linear sieve, and the
 *        three-squares representation counts r3(n).
 *
 * Everything here is immutable after construction and safe to share between
 * threads.
 */

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "numeric.hpp"

namespace cusp {

/// Smallest-prime-factor table on 2..limit, built by a linear sieve.
class FactorizationTable {
public:
    explicit FactorizationTable(std::uint32_t limit) : limit_(limit), spf_(std::size_t{limit} + 1, 0) {
        for (std::uint32_t i = 2; i <= limit_; ++i) {
            if (spf_[i] == 0) {
                spf_[i] = i;
                primes_.push_back(i);
            }
            for (std::uint32_t p : primes_) {
                const std::uint64_t m = std::uint64_t{p} * i;
                if (p > spf_[i] || m > limit_) break;
                spf_[m] = p;
            }
        }
    }

    std::uint32_t limit() const noexcept { return limit_; }
    const std::vector<std::uint32_t>& primes() const noexcept { return primes_; }

    std::uint32_t smallest_prime_factor(std::uint64_t n) const {
        check(n);
        if (n < 2) throw RangeError("smallest_prime_factor: n must be >= 2");
        return spf_[n];
    }

    bool is_prime(std::uint64_t n) const {
        check(n);
        return n >= 2 && spf_[n] == n;
    }

    /// Prime factorization as (p, exponent) pairs in increasing p.
    std::vector<std::pair<std::uint32_t, int>> factorize(std::uint64_t n) const {
        check(n);
        std::vector<std::pair<std::uint32_t, int>> out;
        while (n > 1) {
            const std::uint32_t p = spf_[n];
            int k = 0;
            while (n % p == 0) {
                n /= p;
                ++k;
            }
            out.emplace_back(p, k);
        }
        return out;
    }

    void check(std::uint64_t n) const {
        if (n < 1 || n > limit_)
            throw RangeError("index " + std::to_string(n) + " outside factorization table [1, " +
                             std::to_string(limit_) + "]");
    }

private:
    std::uint32_t limit_;
    std::vector<std::uint32_t> spf_;
    std::vector<std::uint32_t> primes_;
};

/// Lambda(n): log p when n = p^m, m >= 1; zero otherwise.
inline double von_mangoldt(std::uint64_t n, const FactorizationTable& table) {
    table.check(n);
    if (n == 1) return 0.0;
    const std::uint32_t p = table.smallest_prime_factor(n);
    while (n % p == 0) n /= p;
    return n == 1 ? std::log(static_cast<double>(p)) : 0.0;
}

/// Lambda(0..limit) as a dense vector (entry 0 is zero).
inline std::vector<double> von_mangoldt_values(std::uint64_t limit, const FactorizationTable& table) {
    if (limit > table.limit()) throw RangeError("von_mangoldt_values: limit exceeds table");
    std::vector<double> out(limit + 1, 0.0);
    for (std::uint64_t n = 2; n <= limit; ++n) out[n] = von_mangoldt(n, table);
    return out;
}

inline std::uint64_t euler_phi(std::uint64_t n, const FactorizationTable& table) {
    std::uint64_t phi = n;
    for (auto [p, k] : table.factorize(n)) phi = phi / p * (p - 1);
    return phi;
}

inline std::uint64_t divisor_count(std::uint64_t n, const FactorizationTable& table) {
    std::uint64_t d = 1;
    for (auto [p, k] : table.factorize(n)) d *= static_cast<std::uint64_t>(k + 1);
    return d;
}

/// Nonnegative gcd; gcd(0, 0) = 0.
inline std::int64_t gcd(std::int64_t a, std::int64_t b) {
    return std::gcd(a, b);
}

/// r3[n] = #{(m1, m2, m3) in Z^3 : m1^2 + m2^2 + m3^2 = n}, signs and zeros included.
struct ThreeSquaresTable {
    std::uint64_t limit = 0;
    std::vector<std::uint64_t> r3;

    std::uint64_t operator[](std::uint64_t n) const {
        if (n > limit) throw RangeError("r3 index " + std::to_string(n) + " exceeds table limit");
        return r3[n];
    }
};

/// Tally r2 over pairs (m1, m2), then add every square complement m3^2.
inline ThreeSquaresTable three_squares_counts(std::uint64_t limit) {
    std::vector<std::uint64_t> r2(limit + 1, 0);
    for (std::uint64_t m1 = 0; m1 * m1 <= limit; ++m1) {
        const std::uint64_t w1 = m1 == 0 ? 1 : 2;
        for (std::uint64_t m2 = 0; m1 * m1 + m2 * m2 <= limit; ++m2)
            r2[m1 * m1 + m2 * m2] += w1 * (m2 == 0 ? 1 : 2);
    }
    ThreeSquaresTable t{limit, std::vector<std::uint64_t>(limit + 1, 0)};
    for (std::uint64_t m3 = 0; m3 * m3 <= limit; ++m3) {
        const std::uint64_t w3 = m3 == 0 ? 1 : 2;
        const std::uint64_t s = m3 * m3;
        for (std::uint64_t n = s; n <= limit; ++n) t.r3[n] += w3 * r2[n - s];
    }
    return t;
}

}  // namespace cusp
