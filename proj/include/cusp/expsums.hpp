#pragma once

/**
 * @file expsums.hpp
 * @brief The exponential sums of the circle-method setup.
 *
 *   S1(alpha, y) = sum_{1 <= m <= y} e(m^2 alpha)
 *   S2(alpha, y) = sum_{|m| <= y}    e(m^2 alpha)
 *   T(alpha, x)  = sum_{n <= x} a(n) Lambda(n) e(n alpha)
 *   psi_f(x, chi) = sum_{n <= x} a(n) chi(n) Lambda(n)
 *
 * Pointwise evaluators sum directly with compensated accumulation. Grid
 * evaluators compute a trigonometric polynomial sum_n w(n) e(n j / N) at all
 * j < N, either naively or by folding indices mod N and transforming.
 */

#include <cmath>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "arith.hpp"
#include "characters.hpp"
#include "fft.hpp"
#include "modforms.hpp"
#include "numeric.hpp"
#include "quadrature.hpp"

namespace cusp {

namespace detail {

inline std::uint64_t floor_index(double y) {
    return y < 1.0 ? 0 : static_cast<std::uint64_t>(std::floor(y));
}

inline std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline std::uint64_t checked_upper(double x, const CoefficientSeries& s, const FactorizationTable& table, const char* who) {
    const std::uint64_t top = floor_index(x);
    if (top > s.limit || top > table.limit())
        throw RangeError(std::string(who) + ": x = " + std::to_string(x) + " exceeds coefficient or sieve range");
    return top;
}

}  // namespace detail

inline complex s1(double alpha, double y) {
    const double frac = alpha - std::floor(alpha);
    const std::uint64_t top = detail::floor_index(y);
    CompensatedSum<complex> acc;
    for (std::uint64_t m = 1; m <= top; ++m) acc += unit_phase(static_cast<double>(m * m) * frac);
    return acc.value();
}

inline complex s2(double alpha, double y) {
    const double frac = alpha - std::floor(alpha);
    const auto top = static_cast<std::int64_t>(detail::floor_index(y));
    CompensatedSum<complex> acc;
    for (std::int64_t m = -top; m <= top; ++m) acc += unit_phase(static_cast<double>(m * m) * frac);
    return acc.value();
}

/// w(n) = a(n) Lambda(n) for 0 <= n <= floor(x).
inline std::vector<double> coefficient_weights(double x, const CoefficientSeries& s, const FactorizationTable& table) {
    const std::uint64_t top = detail::checked_upper(x, s, table, "coefficient_weights");
    std::vector<double> w(top + 1, 0.0);
    for (std::uint64_t n = 2; n <= top; ++n) {
        const double lam = von_mangoldt(n, table);
        if (lam != 0.0) w[n] = s.values[n] * lam;
    }
    return w;
}

/// Indicator of the squares m^2 with 1 <= m <= sqrt(x), as weights on 0..floor(x).
inline std::vector<double> square_weights(double x) {
    const std::uint64_t top = detail::floor_index(x);
    std::vector<double> w(top + 1, 0.0);
    for (std::uint64_t m = 1; m * m <= top; ++m) w[m * m] = 1.0;
    return w;
}

inline complex t_sum(double alpha, double x, const CoefficientSeries& s, const FactorizationTable& table) {
    const std::uint64_t top = detail::checked_upper(x, s, table, "t_sum");
    const double frac = alpha - std::floor(alpha);
    CompensatedSum<complex> acc;
    for (std::uint64_t n = 2; n <= top; ++n) {
        const double lam = von_mangoldt(n, table);
        if (lam == 0.0) continue;
        acc += (s.values[n] * lam) * unit_phase(static_cast<double>(n) * frac);
    }
    return acc.value();
}

inline complex psi_f(double x, const DirichletCharacter& chi, const CoefficientSeries& s, const FactorizationTable& table) {
    const std::uint64_t top = detail::checked_upper(x, s, table, "psi_f");
    CompensatedSum<complex> acc;
    for (std::uint64_t n = 2; n <= top; ++n) {
        const double lam = von_mangoldt(n, table);
        if (lam == 0.0) continue;
        acc += (s.values[n] * lam) * chi(static_cast<std::int64_t>(n));
    }
    return acc.value();
}

// -----------------------------------------------------------------------------
// Grid evaluation
// -----------------------------------------------------------------------------

enum class GridMethod { naive, transform };

struct EvaluationGrid {
    std::size_t N = 0;
    std::vector<double> frequencies;  ///< empty for the uniform grid j/N
    std::vector<complex> values;
    GridMethod method = GridMethod::naive;
    std::size_t degree = 0;           ///< largest n with w(n) != 0

    double frequency(std::size_t j) const {
        return frequencies.empty() ? static_cast<double>(j) / static_cast<double>(N) : frequencies[j];
    }
};

namespace detail {

inline std::size_t degree_of(std::span<const double> w) {
    for (std::size_t n = w.size(); n-- > 0;)
        if (w[n] != 0.0) return n;
    return 0;
}

}  // namespace detail

/**
 * values[j] = sum_{n} w[n] e(n j / N), j = 0..N-1, where w[n] is the
 * coefficient of e(n alpha) (w[0] is the constant term).
 *
 * The transform path folds w into N residue bins (aliasing is exact at the
 * frequencies j/N) and applies one length-N DFT: O(L + N log N).
 */
inline EvaluationGrid grid_eval(std::span<const double> w, std::size_t N, GridMethod method = GridMethod::transform) {
    if (N < 1) throw PreconditionError("grid_eval: N must be >= 1");
    EvaluationGrid g;
    g.N = N;
    g.method = method;
    g.degree = detail::degree_of(w);

    if (method == GridMethod::transform) {
        std::vector<CompensatedSum<double>> bins(N);
        for (std::size_t n = 0; n < w.size(); ++n)
            if (w[n] != 0.0) bins[n % N] += w[n];
        std::vector<complex> folded(N);
        for (std::size_t r = 0; r < N; ++r) folded[r] = bins[r].value();
        g.values = dft(std::move(folded), +1);
        return g;
    }

    g.values.resize(N);
    const auto n_mod = static_cast<std::int64_t>(N);
    for (std::size_t j = 0; j < N; ++j) {
        CompensatedSum<complex> acc;
        for (std::size_t n = 0; n < w.size(); ++n) {
            if (w[n] == 0.0) continue;
            const auto phase = static_cast<std::int64_t>((static_cast<unsigned __int128>(n) * j) % N);
            acc += w[n] * unit_phase(phase, n_mod);
        }
        g.values[j] = acc.value();
    }
    return g;
}

/// Naive evaluation at an explicit list of frequencies.
inline EvaluationGrid grid_eval_at(std::span<const double> w, std::span<const double> alphas) {
    EvaluationGrid g;
    g.N = alphas.size();
    g.frequencies.assign(alphas.begin(), alphas.end());
    g.method = GridMethod::naive;
    g.degree = detail::degree_of(w);
    g.values.reserve(alphas.size());
    for (double alpha : alphas) {
        const double frac = alpha - std::floor(alpha);
        CompensatedSum<complex> acc;
        for (std::size_t n = 0; n < w.size(); ++n)
            if (w[n] != 0.0) acc += w[n] * unit_phase(static_cast<double>(n) * frac);
        g.values.push_back(acc.value());
    }
    return g;
}

// -----------------------------------------------------------------------------
// Fourth moment of S1
// -----------------------------------------------------------------------------

/// (1/N) sum_{j<N} |S1(j/N, sqrt x)|^4; exact for N > 4x.
inline double fourth_moment_grid(double x, std::size_t N) {
    if (static_cast<double>(N) <= 4.0 * std::floor(x))
        throw PreconditionError("fourth_moment_grid: need N > 4x for exact sampling");
    const auto w = square_weights(x);
    const auto grid = grid_eval(w, N);
    CompensatedSum<double> acc;
    for (const complex& v : grid.values) {
        const double n2 = std::norm(v);
        acc += n2 * n2;
    }
    return acc.value() / static_cast<double>(N);
}

/// #{1 <= m_i <= sqrt x : m1^2 + m3^2 = m2^2 + m4^2}, by hashing the pair sums.
inline std::uint64_t fourth_moment_count(double x) {
    const std::uint64_t top = detail::isqrt(detail::floor_index(x));
    std::unordered_map<std::uint64_t, std::uint64_t> pairs;
    for (std::uint64_t m1 = 1; m1 <= top; ++m1)
        for (std::uint64_t m3 = 1; m3 <= top; ++m3) ++pairs[m1 * m1 + m3 * m3];
    std::uint64_t count = 0;
    for (const auto& [sum, c] : pairs) count += c * c;
    return count;
}

// -----------------------------------------------------------------------------
// Major-arc structure
// -----------------------------------------------------------------------------

/// (G(a,0,q)/q) sqrt(x) int_0^1 e(x beta v^2) dv, the major-arc approximation to S1(a/q + beta, sqrt x).
inline complex s1_major_main_term(std::int64_t a, std::int64_t q, double beta, double x) {
    const complex integral = adaptive_gauss_legendre(
        [&](double v) { return unit_phase(x * beta * v * v); }, 0.0, 1.0, 1e-10);
    return quadratic_gauss_sum(a, 0, q) / static_cast<double>(q) * std::sqrt(x) * integral;
}

struct Lemma4Check {
    double identity_error = 0.0;  ///< |LHS - RHS| of the character expansion
    complex lhs;                  ///< sum over (n,q)=1 of a(n) Lambda(n) e(an/q) e(n beta)
    complex rhs;
    complex noncoprime;           ///< sum over (n,q)>1 of a(n) Lambda(n) e(n alpha)
    double noncoprime_abs = 0.0;  ///< sum over (n,q)>1 of |a(n)| Lambda(n)
};

/**
 * Expand T(a/q + beta, x) on residues coprime to q through the characters mod q
 * and compare with direct summation:
 *
 *   sum_{(n,q)=1} a(n) Lambda(n) e(an/q) e(n beta)
 *     = (1/phi(q)) sum_chi [sum_b chi(b) e(ab/q)] sum_n a(n) conj(chi)(n) Lambda(n) e(beta n)
 */
inline Lemma4Check lemma4_decomposition_check(std::int64_t a, std::int64_t q, double beta, double x,
                                              const CoefficientSeries& s, const FactorizationTable& table) {
    if (q < 1 || gcd(a, q) != 1) throw PreconditionError("lemma4_decomposition_check: need q >= 1 and gcd(a, q) = 1");
    const std::uint64_t top = detail::checked_upper(x, s, table, "lemma4_decomposition_check");
    const auto w = coefficient_weights(x, s, table);
    const CharacterGroup group(q);
    const double alpha = static_cast<double>(a) / static_cast<double>(q) + beta;

    Lemma4Check out;
    CompensatedSum<complex> lhs, noncoprime;
    CompensatedSum<double> noncoprime_abs;
    std::vector<complex> beta_phase(top + 1);
    for (std::uint64_t n = 2; n <= top; ++n) {
        if (w[n] == 0.0) continue;
        beta_phase[n] = unit_phase(static_cast<double>(n) * beta);
        const auto ni = static_cast<std::int64_t>(n);
        if (gcd(ni, q) == 1) {
            lhs += w[n] * unit_phase(static_cast<std::int64_t>(static_cast<__int128>(a) * ni % q), q) * beta_phase[n];
        } else {
            noncoprime += w[n] * unit_phase(static_cast<double>(n) * alpha);
            noncoprime_abs += std::abs(w[n]);
        }
    }

    CompensatedSum<complex> rhs;
    for (const auto& chi : group) {
        CompensatedSum<complex> twisted_gauss;
        for (std::int64_t b = 0; b < q; ++b)
            twisted_gauss += chi(b) * unit_phase(static_cast<std::int64_t>(static_cast<__int128>(a) * b % q), q);
        CompensatedSum<complex> twisted_t;
        for (std::uint64_t n = 2; n <= top; ++n)
            if (w[n] != 0.0) twisted_t += w[n] * std::conj(chi(static_cast<std::int64_t>(n))) * beta_phase[n];
        rhs += twisted_gauss.value() * twisted_t.value();
    }

    out.lhs = lhs.value();
    out.rhs = rhs.value() / static_cast<double>(group.size());
    out.identity_error = std::abs(out.lhs - out.rhs);
    out.noncoprime = noncoprime.value();
    out.noncoprime_abs = noncoprime_abs.value();
    return out;
}

}  // namespace cusp
