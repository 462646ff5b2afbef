#pragma once

/**
 * @file arcs.hpp
 * @brief Rational approximation and the Farey dissection of [1/Q, 1 + 1/Q].
 *
 * With P = exp(C sqrt(log x)) and Q = x / P, the major arcs are the closed
 * intervals M(a,q) = [a/q - 1/(qQ), a/q + 1/(qQ)] for 1 <= a <= q <= P,
 * gcd(a,q) = 1; the minor arcs are the rest of the window.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arith.hpp"
#include "numeric.hpp"

namespace cusp {

struct ReducedFraction {
    std::int64_t a = 0;
    std::int64_t q = 1;

    double value() const { return static_cast<double>(a) / static_cast<double>(q); }
    friend bool operator==(const ReducedFraction&, const ReducedFraction&) = default;
};

struct RationalApproximation {
    ReducedFraction fraction;
    double beta = 0.0;  ///< alpha - a/q
};

/**
 * a/q with 1 <= q <= floor(Q) and |alpha - a/q| <= 1/(q floor(Q)).
 *
 * Takes the last continued-fraction convergent of alpha with denominator at
 * most floor(Q). The fractional part of alpha is expanded exactly as a
 * dyadic rational, so no convergent is lost to floating-point drift.
 */
inline RationalApproximation dirichlet_approx(double alpha, double Q) {
    if (!(Q >= 1.0)) throw PreconditionError("dirichlet_approx: Q must be >= 1");
    if (!std::isfinite(alpha)) throw PreconditionError("dirichlet_approx: alpha must be finite");
    const double whole = std::floor(alpha);
    const double frac = alpha - whole;  // exact
    const auto bound = static_cast<std::int64_t>(std::min(std::floor(Q), 9.0e18));

    // frac = num / 2^64 (rounded at 2^-64)
    using u128 = unsigned __int128;
    const u128 den = static_cast<u128>(1) << 64;
    u128 num = static_cast<u128>(std::ldexp(frac, 64));
    if (num >= den) num = den - 1;

    // convergents p_k / q_k of num/den
    std::int64_t p_prev = 1, q_prev = 0;  // p_{-1}, q_{-1}
    std::int64_t p_cur = 0, q_cur = 1;    // p_0 / q_0 = 0/1
    u128 x = den, y = num;                // continued fraction of y / x, frac in [0,1)
    while (y != 0) {
        const u128 t = x / y;
        const u128 r = x - t * y;
        if (t > static_cast<u128>(bound)) break;
        const auto ti = static_cast<std::int64_t>(t);
        // next denominator = t * q_cur + q_prev; stop once it passes the bound
        const __int128 q_next = static_cast<__int128>(ti) * q_cur + q_prev;
        if (q_next > bound) break;
        const std::int64_t p_next = static_cast<std::int64_t>(static_cast<__int128>(ti) * p_cur + p_prev);
        p_prev = p_cur;
        q_prev = q_cur;
        p_cur = p_next;
        q_cur = static_cast<std::int64_t>(q_next);
        x = y;
        y = r;
    }

    RationalApproximation out;
    const auto w = static_cast<std::int64_t>(whole);
    out.fraction = {p_cur + w * q_cur, q_cur};
    out.beta = frac - static_cast<double>(p_cur) / static_cast<double>(q_cur);
    return out;
}

struct MajorArc {
    ReducedFraction center;
    double left;
    double right;

    double length() const { return right - left; }
    bool contains(double alpha) const { return left <= alpha && alpha <= right; }
};

struct Interval {
    double lo;
    double hi;
    double length() const { return hi - lo; }
};

/// Raised when Q <= 2P: the major arcs could overlap.
struct ArcOverlapError : std::domain_error {
    using std::domain_error::domain_error;
};

class ArcSystem {
public:
    ArcSystem(double x, double C) : x_(x), C_(C) {
        if (!(x > 1.0)) throw PreconditionError("build_arcs: x must exceed 1");
        if (!(C > 0.0)) throw PreconditionError("build_arcs: C must be positive");
        P_ = std::exp(C * std::sqrt(std::log(x)));
        Q_ = x / P_;
        if (!(Q_ > 2.0 * P_))
            throw ArcOverlapError("build_arcs: Q = " + std::to_string(Q_) + " <= 2P = " + std::to_string(2.0 * P_) +
                                  "; major arcs may overlap (increase x or decrease C)");

        const auto q_max = static_cast<std::int64_t>(std::floor(P_));
        for (std::int64_t q = 1; q <= q_max; ++q) {
            for (std::int64_t a = 1; a <= q; ++a) {
                if (gcd(a, q) != 1) continue;
                const double center = static_cast<double>(a) / static_cast<double>(q);
                const double radius = 1.0 / (static_cast<double>(q) * Q_);
                major_.push_back({{a, q}, center - radius, center + radius});
            }
        }
        std::sort(major_.begin(), major_.end(), [](const MajorArc& l, const MajorArc& r) {
            return l.center.a * r.center.q < r.center.a * l.center.q;
        });
        for (std::size_t i = 0; i + 1 < major_.size(); ++i)
            if (!(major_[i].right < major_[i + 1].left))
                throw ArcOverlapError("build_arcs: adjacent major arcs intersect");

        double cursor = window_lo();
        for (const auto& arc : major_) {
            if (arc.left > cursor) minor_.push_back({cursor, arc.left});
            cursor = arc.right;
        }
        if (window_hi() > cursor) minor_.push_back({cursor, window_hi()});
    }

    double x() const noexcept { return x_; }
    double C() const noexcept { return C_; }
    double P() const noexcept { return P_; }
    double Q() const noexcept { return Q_; }
    double window_lo() const noexcept { return 1.0 / Q_; }
    double window_hi() const noexcept { return 1.0 + 1.0 / Q_; }

    const std::vector<MajorArc>& major() const noexcept { return major_; }
    const std::vector<Interval>& minor() const noexcept { return minor_; }

    double major_measure() const {
        CompensatedSum<double> acc;
        for (const auto& arc : major_) acc += arc.length();
        return acc.value();
    }

    double minor_measure() const {
        CompensatedSum<double> acc;
        for (const auto& iv : minor_) acc += iv.length();
        return acc.value();
    }

    /// sum_{q <= P} phi(q) * 2 / (qQ)
    double expected_major_measure() const {
        const auto q_max = static_cast<std::int64_t>(std::floor(P_));
        CompensatedSum<double> acc;
        for (std::int64_t q = 1; q <= q_max; ++q) {
            std::int64_t phi = 0;
            for (std::int64_t a = 1; a <= q; ++a) phi += gcd(a, q) == 1;
            acc += static_cast<double>(phi) * 2.0 / (static_cast<double>(q) * Q_);
        }
        return acc.value();
    }

    /// alpha shifted by an integer into [1/Q, 1 + 1/Q).
    double reduce(double alpha) const {
        double r = alpha - std::floor(alpha - window_lo());
        if (r >= window_hi()) r -= 1.0;
        return r;
    }

private:
    double x_, C_, P_ = 0.0, Q_ = 0.0;
    std::vector<MajorArc> major_;
    std::vector<Interval> minor_;
};

inline ArcSystem build_arcs(double x, double C) { return ArcSystem(x, C); }

/**
 * The major arc containing alpha (closed intervals, so endpoints count as
 * major), or nullopt on the minor arcs. alpha must already lie in the window.
 */
inline std::optional<MajorArc> classify(const ArcSystem& system, double alpha) {
    if (alpha < system.window_lo() || alpha > system.window_hi())
        throw PreconditionError("classify: alpha outside [1/Q, 1 + 1/Q]; reduce it first");
    const auto& arcs = system.major();
    auto it = std::upper_bound(arcs.begin(), arcs.end(), alpha, [](double v, const MajorArc& arc) { return v < arc.left; });
    if (it == arcs.begin()) return std::nullopt;
    --it;
    if (it->contains(alpha)) return *it;
    return std::nullopt;
}

}  // namespace cusp
