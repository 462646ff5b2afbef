#pragma once

/**
 * @file circle.hpp
 * @brief Top-level pipelines.
 *
 * pi_{a,Lambda}(x) = sum over (m1,m2,m3) in Z^3 with m1^2+m2^2+m3^2 <= x of
 * a(n) Lambda(n), n = m1^2+m2^2+m3^2, is computed three independent ways
 * (lattice enumeration, r3 convolution, exact uniform-grid integration of
 * S2^3 T). The arc split integrates 8 S1^3 T over the major and minor arcs and
 * carries the S2^3 - 8 S1^3 remainder as an exactly computed term.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <thread>
#include <vector>

#include "arcs.hpp"
#include "arith.hpp"
#include "expsums.hpp"
#include "modforms.hpp"
#include "numeric.hpp"
#include "quadrature.hpp"

namespace cusp {

// -----------------------------------------------------------------------------
// pi_{a,Lambda}(x), three ways
// -----------------------------------------------------------------------------

/// Direct sum over every integer triple in the ball of radius sqrt(x).
inline double pi_lattice(double x, const CoefficientSeries& s, const FactorizationTable& table) {
    if (x < 0.0) return 0.0;
    const auto w = coefficient_weights(x, s, table);
    const auto top = static_cast<std::int64_t>(w.size() - 1);
    const auto r1 = static_cast<std::int64_t>(detail::isqrt(static_cast<std::uint64_t>(top)));
    CompensatedSum<double> acc;
    for (std::int64_t m1 = -r1; m1 <= r1; ++m1) {
        const std::int64_t rest1 = top - m1 * m1;
        const auto r2 = static_cast<std::int64_t>(detail::isqrt(static_cast<std::uint64_t>(rest1)));
        for (std::int64_t m2 = -r2; m2 <= r2; ++m2) {
            const std::int64_t rest2 = rest1 - m2 * m2;
            const auto r3 = static_cast<std::int64_t>(detail::isqrt(static_cast<std::uint64_t>(rest2)));
            for (std::int64_t m3 = -r3; m3 <= r3; ++m3) {
                const double v = w[static_cast<std::size_t>(m1 * m1 + m2 * m2 + m3 * m3)];
                if (v != 0.0) acc += v;
            }
        }
    }
    return acc.value();
}

/// sum_{2 <= n <= x} r3(n) a(n) Lambda(n).
inline double pi_convolution(double x, const CoefficientSeries& s, const FactorizationTable& table,
                             const ThreeSquaresTable& r3) {
    if (x < 2.0) return 0.0;
    const auto w = coefficient_weights(x, s, table);
    if (w.size() - 1 > r3.limit) throw RangeError("pi_convolution: r3 table too short");
    CompensatedSum<double> acc;
    for (std::size_t n = 2; n < w.size(); ++n)
        if (w[n] != 0.0) acc += static_cast<double>(r3.r3[n]) * w[n];
    return acc.value();
}

struct GridIntegral {
    double value = 0.0;
    double imaginary = 0.0;  ///< should vanish; reported so callers can assert it
};

/**
 * (1/N) sum_{j<N} S2(j/N, sqrt x)^3 T(-j/N, x). The integrand has frequencies
 * in [-x, 3x], so any N > 4x integrates it exactly.
 */
inline GridIntegral pi_integral(double x, const CoefficientSeries& s, const FactorizationTable& table, std::size_t N) {
    const std::uint64_t top = detail::floor_index(std::max(x, 0.0));
    if (static_cast<double>(N) <= 4.0 * static_cast<double>(top))
        throw PreconditionError("pi_integral: grid size N = " + std::to_string(N) + " aliases; need N > 4x");
    std::vector<double> sq(top + 1, 0.0);
    sq[0] = 1.0;
    for (std::uint64_t m = 1; m * m <= top; ++m) sq[m * m] = 2.0;
    const auto t_w = top >= 2 ? coefficient_weights(x, s, table) : std::vector<double>(top + 1, 0.0);

    const auto s2 = grid_eval(sq, N);
    const auto t = grid_eval(t_w, N);
    CompensatedSum<complex> acc;
    for (std::size_t j = 0; j < N; ++j) {
        const complex v = s2.values[j];
        acc += v * v * v * std::conj(t.values[j]);
    }
    const complex mean = acc.value() / static_cast<double>(N);
    return {mean.real(), mean.imag()};
}

struct PiComputation {
    double x = 0.0;
    double lattice_value = 0.0;
    double convolution_value = 0.0;
    double integral_value = 0.0;
    double integral_imaginary = 0.0;
    std::size_t grid_size = 0;
};

/// Default grid for pi_integral: 4x + 8 points.
inline std::size_t default_pi_grid(double x) { return 4 * detail::floor_index(std::max(x, 0.0)) + 8; }

inline PiComputation compute_pi(double x, const CoefficientSeries& s, const FactorizationTable& table,
                                const ThreeSquaresTable& r3, std::size_t N = 0) {
    PiComputation out;
    out.x = x;
    out.grid_size = N == 0 ? default_pi_grid(x) : N;
    out.lattice_value = pi_lattice(x, s, table);
    out.convolution_value = pi_convolution(x, s, table, r3);
    const auto integral = pi_integral(x, s, table, out.grid_size);
    out.integral_value = integral.value;
    out.integral_imaginary = integral.imaginary;
    return out;
}

// -----------------------------------------------------------------------------
// Arc split
// -----------------------------------------------------------------------------

struct ArcContribution {
    MajorArc arc;
    complex value;  ///< 8 * integral over the arc of S1^3(alpha) T(-alpha)
};

struct MinorContribution {
    Interval interval;
    complex value;
};

struct ArcSplit {
    ArcSystem system;
    std::vector<ArcContribution> major_arcs;
    std::vector<MinorContribution> minor_arcs;
    complex major_total;
    complex minor_total;
    double discrepancy = 0.0;  ///< pi - 8 int_0^1 S1^3 T, exactly, via (12 S1^2 + 6 S1 + 1) T
    double discrepancy_imaginary = 0.0;
    std::size_t panels = 0;

    double major_part() const { return major_total.real(); }
    double minor_part() const { return minor_total.real(); }
    double total() const { return major_part() + minor_part() + discrepancy; }
};

struct ArcSplitOptions {
    double panels_per_unit_x = 8.0;  ///< panel length <= 1 / (panels_per_unit_x * x)
    unsigned threads = 0;            ///< 0: hardware concurrency
};

/// 8 S1(alpha, sqrt x)^3 T(-alpha, x) with a shared phase table per point.
class ArcIntegrand {
public:
    ArcIntegrand(double x, const CoefficientSeries& s, const FactorizationTable& table) {
        const auto w = coefficient_weights(x, s, table);
        top_ = w.size() - 1;
        for (std::size_t n = 2; n < w.size(); ++n)
            if (w[n] != 0.0) terms_.emplace_back(n, w[n]);
        for (std::uint64_t m = 1; m * m <= top_; ++m) squares_.push_back(m * m);
    }

    complex operator()(double alpha) const {
        const double frac = alpha - std::floor(alpha);
        const PhaseTable phase(frac, top_);
        complex s1{0.0, 0.0};
        for (auto sq : squares_) s1 += phase(sq);
        complex t{0.0, 0.0};
        for (const auto& [n, w] : terms_) t += w * phase(n);
        return 8.0 * s1 * s1 * s1 * std::conj(t);
    }

private:
    std::size_t top_ = 0;
    std::vector<std::pair<std::size_t, double>> terms_;
    std::vector<std::uint64_t> squares_;
};

/**
 * Composite 8-point Gauss-Legendre over every major arc and every minor
 * interval. Panels are independent and may be evaluated on several threads;
 * per-interval sums are reduced in panel order, so the result does not depend
 * on the thread count.
 */
inline ArcSplit arc_split(double x, double C, const CoefficientSeries& s, const FactorizationTable& table,
                          ArcSplitOptions options = {}) {
    ArcSystem system(x, C);
    const ArcIntegrand integrand(x, s, table);
    const std::uint64_t top = detail::floor_index(x);
    const double max_panel = 1.0 / (options.panels_per_unit_x * static_cast<double>(top));

    std::vector<Interval> intervals;
    for (const auto& arc : system.major()) intervals.push_back({arc.left, arc.right});
    for (const auto& iv : system.minor()) intervals.push_back(iv);

    struct Panel {
        std::size_t interval;
        double lo, hi;
    };
    std::vector<Panel> panels;
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        const auto& iv = intervals[i];
        const auto count = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(iv.length() / max_panel)));
        const double h = iv.length() / static_cast<double>(count);
        for (std::size_t k = 0; k < count; ++k)
            panels.push_back({i, iv.lo + h * static_cast<double>(k), k + 1 == count ? iv.hi : iv.lo + h * static_cast<double>(k + 1)});
    }

    std::vector<complex> results(panels.size());
    const auto& rule = gauss_legendre_8();
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t p = begin; p < end; ++p) results[p] = gauss_panel(rule, integrand, panels[p].lo, panels[p].hi);
    };
    unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, panels.size()));
    if (threads <= 1) {
        work(0, panels.size());
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (panels.size() + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            const std::size_t b = t * chunk, e = std::min(panels.size(), b + chunk);
            if (b < e) pool.emplace_back(work, b, e);
        }
        for (auto& th : pool) th.join();
    }

    std::vector<CompensatedSum<complex>> per_interval(intervals.size());
    for (std::size_t p = 0; p < panels.size(); ++p) per_interval[panels[p].interval] += results[p];

    ArcSplit out{system, {}, {}, {}, {}, 0.0, 0.0, panels.size()};
    CompensatedSum<complex> major_total, minor_total;
    const std::size_t n_major = system.major().size();
    for (std::size_t i = 0; i < n_major; ++i) {
        const complex v = per_interval[i].value();
        out.major_arcs.push_back({system.major()[i], v});
        major_total += v;
    }
    for (std::size_t i = n_major; i < intervals.size(); ++i) {
        const complex v = per_interval[i].value();
        out.minor_arcs.push_back({intervals[i], v});
        minor_total += v;
    }
    out.major_total = major_total.value();
    out.minor_total = minor_total.value();

    // (S2^3 - 8 S1^3) T = (12 S1^2 + 6 S1 + 1) T, degree <= 3x, so 4x + 8 points are exact.
    const std::size_t N = 4 * top + 8;
    const auto s1g = grid_eval(square_weights(x), N);
    const auto tg = grid_eval(coefficient_weights(x, s, table), N);
    CompensatedSum<complex> acc;
    for (std::size_t j = 0; j < N; ++j) {
        const complex v = s1g.values[j];
        acc += (12.0 * v * v + 6.0 * v + 1.0) * std::conj(tg.values[j]);
    }
    const complex disc = acc.value() / static_cast<double>(N);
    out.discrepancy = disc.real();
    out.discrepancy_imaginary = disc.imag();
    return out;
}

// -----------------------------------------------------------------------------
// Empirical envelopes
// -----------------------------------------------------------------------------

struct MajorArcSample {
    ReducedFraction center;
    double beta;
    double error;       ///< |S1 - main term|
    double normalized;  ///< error / (sqrt(q) log(q + 1))
};

/// Compare S1(a/q + beta, sqrt x) with its Gauss-sum main term at evenly spaced beta on every major arc.
inline std::vector<MajorArcSample> major_arc_scan(const ArcSystem& system, std::size_t samples_per_arc = 5) {
    std::vector<MajorArcSample> out;
    const double x = system.x();
    for (const auto& arc : system.major()) {
        const double radius = 1.0 / (static_cast<double>(arc.center.q) * system.Q());
        for (std::size_t k = 0; k < samples_per_arc; ++k) {
            const double beta = samples_per_arc == 1
                                    ? 0.0
                                    : -radius + 2.0 * radius * static_cast<double>(k) / static_cast<double>(samples_per_arc - 1);
            const complex direct = s1(arc.center.value() + beta, std::sqrt(x));
            const complex main = s1_major_main_term(arc.center.a, arc.center.q, beta, x);
            const double q = static_cast<double>(arc.center.q);
            const double err = std::abs(direct - main);
            out.push_back({arc.center, beta, err, err / (std::sqrt(q) * std::log(q + 1.0))});
        }
    }
    return out;
}

struct MinorArcSample {
    double alpha;
    std::int64_t q;            ///< denominator from Dirichlet approximation with bound Q
    double magnitude;          ///< |S1(alpha, sqrt x)|
    double envelope_by_q;      ///< x^{1/2} q^{-1/2} + q^{1/2} (log q)^{1/2} + x^{1/4} (log q)^{1/2}
    double envelope_by_P;      ///< x^{1/2} P^{-1/2}
};

struct MinorArcScan {
    std::vector<MinorArcSample> samples;
    double constant_by_q = 0.0;  ///< max |S1| / envelope_by_q
    double constant_by_P = 0.0;  ///< max |S1| / envelope_by_P
};

/// Evenly spaced samples across the minor arcs, spread in proportion to interval length.
inline MinorArcScan minor_arc_scan(const ArcSystem& system, std::size_t samples = 2000) {
    MinorArcScan scan;
    const double x = system.x();
    const double total = system.minor_measure();
    if (total <= 0.0 || samples == 0) return scan;
    const double step = total / static_cast<double>(samples);
    double start = 0.0;
    std::size_t k = 0;
    for (const auto& iv : system.minor()) {
        for (; k < samples && (static_cast<double>(k) + 0.5) * step < start + iv.length(); ++k) {
            const double alpha = iv.lo + (static_cast<double>(k) + 0.5) * step - start;
            const auto approx = dirichlet_approx(alpha, system.Q());
            const double q = static_cast<double>(approx.fraction.q);
            const double logq = std::log(q);
            MinorArcSample smp{alpha, approx.fraction.q, std::abs(s1(alpha, std::sqrt(x))),
                               std::sqrt(x / q) + std::sqrt(q * logq) + std::pow(x, 0.25) * std::sqrt(logq),
                               std::sqrt(x / system.P())};
            scan.constant_by_q = std::max(scan.constant_by_q, smp.magnitude / smp.envelope_by_q);
            scan.constant_by_P = std::max(scan.constant_by_P, smp.magnitude / smp.envelope_by_P);
            scan.samples.push_back(smp);
        }
        start += iv.length();
    }
    return scan;
}

struct PsiSample {
    std::int64_t q;
    std::size_t character;
    bool principal;
    double x;
    double magnitude;   ///< |psi_f(x, chi)|
    double normalized;  ///< |psi_f| / (sqrt(q) x)
};

/// |psi_f(x, chi)| for every character mod q <= q_max at each x.
inline std::vector<PsiSample> psi_scan(std::int64_t q_max, const std::vector<double>& xs, const CoefficientSeries& s,
                                       const FactorizationTable& table) {
    std::vector<PsiSample> out;
    for (std::int64_t q = 1; q <= q_max; ++q) {
        const CharacterGroup group(q);
        for (std::size_t i = 0; i < group.size(); ++i) {
            for (double x : xs) {
                const double mag = std::abs(psi_f(x, group[i], s, table));
                out.push_back({q, i, group[i].is_principal(), x, mag, mag / (std::sqrt(static_cast<double>(q)) * x)});
            }
        }
    }
    return out;
}

// -----------------------------------------------------------------------------
// Decay monitoring
// -----------------------------------------------------------------------------

struct DecayRecord {
    double x = 0.0;
    double pi = 0.0;
    double ratio = 0.0;             ///< |pi| / x^{3/2}
    double P = 0.0;                 ///< exp(C sqrt(log x)) at this x
    std::optional<double> fitted_c; ///< slope of -log(ratio) on sqrt(log x) over records so far
};

/// Least-squares slope of -log(ratio) against sqrt(log x); needs two usable points.
inline std::optional<double> fit_decay_constant(std::span<const DecayRecord> records) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : records)
        if (r.ratio > 0.0 && std::isfinite(r.ratio) && r.x > 1.0) pts.emplace_back(std::sqrt(std::log(r.x)), -std::log(r.ratio));
    if (pts.size() < 2) return std::nullopt;
    double mx = 0.0, my = 0.0;
    for (auto [u, v] : pts) {
        mx += u;
        my += v;
    }
    mx /= static_cast<double>(pts.size());
    my /= static_cast<double>(pts.size());
    double sxy = 0.0, sxx = 0.0;
    for (auto [u, v] : pts) {
        sxy += (u - mx) * (v - my);
        sxx += (u - mx) * (u - mx);
    }
    if (sxx == 0.0) return std::nullopt;
    return sxy / sxx;
}

inline std::vector<DecayRecord> decay_scan(const std::vector<double>& xs, double C, const CoefficientSeries& s,
                                           const FactorizationTable& table) {
    std::vector<DecayRecord> out;
    if (xs.empty()) return out;
    const double x_max = *std::max_element(xs.begin(), xs.end());
    if (x_max > static_cast<double>(s.limit)) throw RangeError("decay_scan: x exceeds coefficient range");
    const auto r3 = three_squares_counts(detail::floor_index(std::max(x_max, 0.0)));
    for (double x : xs) {
        DecayRecord r;
        r.x = x;
        r.pi = pi_convolution(x, s, table, r3);
        r.ratio = std::abs(r.pi) / std::pow(x, 1.5);
        r.P = x > 1.0 ? std::exp(C * std::sqrt(std::log(x))) : 1.0;
        out.push_back(r);
        out.back().fitted_c = fit_decay_constant(out);
    }
    return out;
}

// -----------------------------------------------------------------------------
// Ternary tau sum
// -----------------------------------------------------------------------------

/// w(n) = tau(n) Lambda(n), unnormalized, for 0 <= n <= N.
inline std::vector<double> tau_lambda_weights(std::size_t N, const CoefficientSeries& tau, const FactorizationTable& table) {
    if (!tau.raw_values) throw UnsupportedError("tau_lambda_weights: needs the built-in tau series");
    if (N > tau.limit || N > table.limit()) throw RangeError("tau_lambda_weights: N exceeds series or sieve range");
    std::vector<double> w(N + 1, 0.0);
    for (std::size_t n = 2; n <= N; ++n) {
        const double lam = von_mangoldt(n, table);
        if (lam != 0.0) w[n] = static_cast<double>((*tau.raw_values)[n]) * lam;
    }
    return w;
}

/// r_tau(N) = sum_{n1+n2+n3=N} prod tau(n_i) Lambda(n_i), by two linear convolutions.
inline double ternary_tau(std::size_t N, const CoefficientSeries& tau, const FactorizationTable& table) {
    const auto w = tau_lambda_weights(N, tau, table);
    std::vector<double> pair(N + 1, 0.0);
    for (std::size_t m = 0; m <= N; ++m) {
        CompensatedSum<double> acc;
        for (std::size_t n1 = 0; n1 <= m; ++n1)
            if (w[n1] != 0.0 && w[m - n1] != 0.0) acc += w[n1] * w[m - n1];
        pair[m] = acc.value();
    }
    CompensatedSum<double> acc;
    for (std::size_t m = 0; m <= N; ++m)
        if (pair[m] != 0.0 && w[N - m] != 0.0) acc += pair[m] * w[N - m];
    return acc.value();
}

/// S_tau(j / grid) = sum_{n <= N} tau(n) Lambda(n) e(n j / grid).
inline EvaluationGrid s_tau_scan(std::size_t N, std::size_t grid, const CoefficientSeries& tau, const FactorizationTable& table,
                                 GridMethod method = GridMethod::transform) {
    const auto w = tau_lambda_weights(N, tau, table);
    return grid_eval(w, grid, method);
}

}  // namespace cusp
