#pragma once

/**
 * @file modforms.hpp
 * @brief Cusp-form coefficient sequences.
 *
 * The built-in series is Ramanujan's tau, read off the q-expansion
 * Delta = q * prod_{n>=1} (1 - q^n)^24 in exact 128-bit arithmetic. Other
 * forms (Maass forms in particular) enter through plain-text coefficient
 * files holding already normalized values.
 */

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "arith.hpp"
#include "numeric.hpp"

namespace cusp {

using int128 = __int128;

inline std::string to_string(int128 v) {
    if (v == 0) return "0";
    const bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    std::string s;
    while (u > 0) {
        s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    if (neg) s.push_back('-');
    return {s.rbegin(), s.rend()};
}

enum class SeriesSource { builtin_tau, file };

/// Exponent in |a(p)| <= 2 p^theta assumed for coefficients read from a file.
inline constexpr double kMaassTheta = 7.0 / 64.0;

/**
 * A finite table n -> a(n), 1 <= n <= limit, of normalized coefficients.
 *
 * Index 0 of @c values is unused and held at zero so that a(n) is values[n].
 */
struct CoefficientSeries {
    std::size_t limit = 0;
    std::vector<double> values;
    std::optional<std::vector<int128>> raw_values;
    SeriesSource source = SeriesSource::file;
    std::optional<int> weight;
    double theta = kMaassTheta;

    double operator()(std::size_t n) const {
        if (n < 1 || n > limit)
            throw RangeError("coefficient index " + std::to_string(n) + " outside [1, " + std::to_string(limit) + "]");
        return values[n];
    }
};

namespace detail {

inline int128 checked_mul(int128 a, int128 b) {
    int128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("tau_series: coefficient exceeds 128-bit range");
    return r;
}

inline int128 checked_add(int128 a, int128 b) {
    int128 r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("tau_series: coefficient exceeds 128-bit range");
    return r;
}

}  // namespace detail

/**
 * tau(1..limit) and a(n) = tau(n) / n^{11/2}.
 *
 * prod (1 - q^n)^3 is sparse by Jacobi's identity,
 *     sum_{k>=0} (-1)^k (2k+1) q^{k(k+1)/2},
 * so the 24th power is eight sparse-times-dense products, O(limit^{3/2}).
 */
inline CoefficientSeries tau_series(std::size_t limit) {
    if (limit < 1) throw PreconditionError("tau_series: limit must be >= 1");
    const std::size_t len = limit;  // coefficients of q^0 .. q^{limit-1} in prod (1-q^n)^24

    std::vector<std::pair<std::size_t, int128>> cube;
    for (std::size_t k = 0; k * (k + 1) / 2 < len; ++k)
        cube.emplace_back(k * (k + 1) / 2, (k % 2 == 0 ? 1 : -1) * static_cast<int128>(2 * k + 1));

    std::vector<int128> acc(len, 0);
    acc[0] = 1;
    std::vector<int128> next(len);
    for (int step = 0; step < 8; ++step) {
        std::fill(next.begin(), next.end(), 0);
        for (std::size_t i = 0; i < len; ++i) {
            if (acc[i] == 0) continue;
            for (auto [deg, c] : cube) {
                if (i + deg >= len) break;
                next[i + deg] = detail::checked_add(next[i + deg], detail::checked_mul(acc[i], c));
            }
        }
        acc.swap(next);
    }

    CoefficientSeries s;
    s.limit = limit;
    s.source = SeriesSource::builtin_tau;
    s.weight = 12;
    s.theta = 0.0;
    s.values.assign(limit + 1, 0.0);
    std::vector<int128> raw(limit + 1, 0);
    for (std::size_t n = 1; n <= limit; ++n) {
        raw[n] = acc[n - 1];
        const double nd = static_cast<double>(n);
        s.values[n] = static_cast<double>(raw[n]) / (std::pow(nd, 5) * std::sqrt(nd));
    }
    s.raw_values = std::move(raw);
    return s;
}

/// Wrap already normalized values a(1..limit) (values[0] is ignored).
inline CoefficientSeries series_from_values(std::vector<double> values, double theta = kMaassTheta) {
    if (values.size() < 2) throw PreconditionError("series_from_values: need at least a(1)");
    CoefficientSeries s;
    s.limit = values.size() - 1;
    values[0] = 0.0;
    s.values = std::move(values);
    s.source = SeriesSource::file;
    s.theta = theta;
    return s;
}

/**
 * Read a coefficient file: one "n,value" record per line, n ascending from 1
 * without gaps; lines starting with '#' and blank lines are skipped. Records
 * beyond @p limit are ignored.
 */
inline CoefficientSeries load_series(const std::string& path, std::size_t limit, double theta = kMaassTheta) {
    if (limit < 1) throw PreconditionError("load_series: limit must be >= 1");
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_series: cannot open " + path);

    std::vector<double> values(limit + 1, 0.0);
    std::size_t expected = 1;
    std::size_t lineno = 0;
    std::string line;
    auto trim = [](std::string_view v) {
        while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) v.remove_prefix(1);
        while (!v.empty() && (v.back() == ' ' || v.back() == '\t' || v.back() == '\r')) v.remove_suffix(1);
        return v;
    };
    while (expected <= limit && std::getline(in, line)) {
        ++lineno;
        std::string_view rec = trim(line);
        if (rec.empty() || rec.front() == '#') continue;
        const auto comma = rec.find(',');
        if (comma == std::string_view::npos) throw ParseError(lineno, "expected \"n,value\"");
        const std::string_view idx_text = trim(rec.substr(0, comma));
        const std::string_view val_text = trim(rec.substr(comma + 1));

        std::uint64_t n = 0;
        auto [ip, iec] = std::from_chars(idx_text.data(), idx_text.data() + idx_text.size(), n);
        if (iec != std::errc{} || ip != idx_text.data() + idx_text.size())
            throw ParseError(lineno, "bad index '" + std::string(idx_text) + "'");
        double v = 0.0;
        auto [vp, vec] = std::from_chars(val_text.data(), val_text.data() + val_text.size(), v);
        if (vec != std::errc{} || vp != val_text.data() + val_text.size())
            throw ParseError(lineno, "bad value '" + std::string(val_text) + "'");
        if (!std::isfinite(v)) throw ParseError(lineno, "non-finite value");

        if (n > expected) throw ParseError(lineno, "gap in coefficients: missing n=" + std::to_string(expected));
        if (n < expected) throw ParseError(lineno, "indices must ascend from 1, got n=" + std::to_string(n));
        values[n] = v;
        ++expected;
    }
    if (expected <= limit)
        throw ParseError(lineno, "gap in coefficients: missing n=" + std::to_string(expected));
    return series_from_values(std::move(values), theta);
}

/// Write a(1..limit) in the coefficient file format (17 significant digits, so it reloads bit-exactly).
inline void write_series(const CoefficientSeries& s, std::ostream& out) {
    char buf[64];
    out << "# n,a(n)\n";
    for (std::size_t n = 1; n <= s.limit; ++n) {
        auto [p, ec] = std::to_chars(buf, buf + sizeof buf, s.values[n], std::chars_format::general, 17);
        out << n << ',' << std::string_view(buf, static_cast<std::size_t>(p - buf)) << '\n';
    }
}

struct HeckeViolation {
    enum class Kind { multiplicative, prime_power } kind;
    std::uint64_t m;  ///< first factor, or the prime p
    std::uint64_t n;  ///< second factor, or the exponent k+1
    int128 lhs;
    int128 rhs;
};

/**
 * Check tau(mn) = tau(m) tau(n) for coprime m, n and
 * tau(p^{k+1}) = tau(p) tau(p^k) - p^11 tau(p^{k-1}) over the whole table.
 * An empty result means every relation holds exactly.
 */
inline std::vector<HeckeViolation> check_hecke_relations(const CoefficientSeries& s) {
    if (s.source != SeriesSource::builtin_tau || !s.raw_values)
        throw UnsupportedError("check_hecke_relations: needs exact integer coefficients");
    const auto& tau = *s.raw_values;
    const std::size_t limit = s.limit;
    std::vector<HeckeViolation> out;

    for (std::size_t m = 2; m * m <= limit; ++m) {
        for (std::size_t n = m + 1; m * n <= limit; ++n) {
            if (std::gcd(m, n) != 1) continue;
            const int128 rhs = detail::checked_mul(tau[m], tau[n]);
            if (tau[m * n] != rhs)
                out.push_back({HeckeViolation::Kind::multiplicative, m, n, tau[m * n], rhs});
        }
    }

    if (limit >= 2) {
        FactorizationTable table(static_cast<std::uint32_t>(limit));
        for (std::uint64_t p : table.primes()) {
            if (p > limit / p) break;  // no p^2 in range
            int128 p11 = 1;
            for (int i = 0; i < 11; ++i) p11 = detail::checked_mul(p11, static_cast<int128>(p));
            std::uint64_t prev = 1, cur = p;  // p^{k-1}, p^k
            for (std::uint64_t k = 1; cur <= limit / p; ++k) {
                const std::uint64_t nxt = cur * p;
                const int128 rhs = detail::checked_add(detail::checked_mul(tau[p], tau[cur]),
                                                       -detail::checked_mul(p11, tau[prev]));
                if (tau[nxt] != rhs) out.push_back({HeckeViolation::Kind::prime_power, p, k + 1, tau[nxt], rhs});
                prev = cur;
                cur = nxt;
            }
        }
    }
    return out;
}

struct MeanSquarePoint {
    double x;
    double ratio;  ///< sum_{n<=x} |a(n)|^2 / x
};

inline std::vector<MeanSquarePoint> mean_square_profile(const CoefficientSeries& s, const std::vector<double>& checkpoints) {
    std::vector<MeanSquarePoint> out;
    if (checkpoints.empty()) return out;
    for (double x : checkpoints) {
        if (!(x >= 1.0) || x > static_cast<double>(s.limit))
            throw RangeError("mean_square_profile: checkpoint outside [1, limit]");
    }
    for (double x : checkpoints) {
        CompensatedSum<double> acc;
        const auto top = static_cast<std::size_t>(std::floor(x));
        for (std::size_t n = 1; n <= top; ++n) acc += s.values[n] * s.values[n];
        out.push_back({x, acc.value() / x});
    }
    return out;
}

}  // namespace cusp
