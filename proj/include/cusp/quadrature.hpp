#pragma once

/**
 * @file quadrature.hpp
 * @brief Gauss-Legendre rules: fixed composite panels and an adaptive driver.
 */

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "numeric.hpp"

namespace cusp {

/// Nodes and weights on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Newton iteration on P_n from the Chebyshev-like initial guesses.
inline GaussLegendreRule gauss_legendre(int n) {
    GaussLegendreRule rule{std::vector<double>(n), std::vector<double>(n)};
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = rule.weights[n - 1 - i] = w;
    }
    return rule;
}

inline const GaussLegendreRule& gauss_legendre_8() {
    static const GaussLegendreRule rule = gauss_legendre(8);
    return rule;
}

/// One application of @p rule on [lo, hi].
template <typename F>
auto gauss_panel(const GaussLegendreRule& rule, F&& f, double lo, double hi) {
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    using R = decltype(f(mid));
    R acc{};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return acc * half;
}

namespace detail {

template <typename F>
complex adaptive_gl_step(const GaussLegendreRule& rule, F& f, double lo, double hi, complex whole, double tol, int depth) {
    const double mid = 0.5 * (lo + hi);
    const complex left = gauss_panel(rule, f, lo, mid);
    const complex right = gauss_panel(rule, f, mid, hi);
    if (depth <= 0 || std::abs(left + right - whole) <= tol) return left + right;
    return adaptive_gl_step(rule, f, lo, mid, left, 0.5 * tol, depth - 1) +
           adaptive_gl_step(rule, f, mid, hi, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive bisection with a 10-point rule until halves agree to @p abs_tol.
template <typename F>
complex adaptive_gauss_legendre(F f, double lo, double hi, double abs_tol = 1e-10, int max_depth = 40) {
    static const GaussLegendreRule rule = gauss_legendre(10);
    const complex whole = gauss_panel(rule, f, lo, hi);
    return detail::adaptive_gl_step(rule, f, lo, hi, whole, abs_tol, max_depth);
}

}  // namespace cusp
