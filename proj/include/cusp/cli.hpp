#pragma once

/**
 * @file cli.hpp
 * @brief Command dispatch behind the `cusp` executable.
 *
 * Argument parsing lives in tools/cusp_cli.cpp; everything here takes a
 * parsed RunConfig and two streams so it can be driven from tests.
 * Numbers are printed with std::to_chars (locale independent) at 15
 * significant digits, and nothing time- or thread-dependent is written, so
 * one configuration always produces the same bytes.
 */

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "arcs.hpp"
#include "arith.hpp"
#include "characters.hpp"
#include "circle.hpp"
#include "expsums.hpp"
#include "modforms.hpp"

namespace cusp::cli {

enum class Command { pi, arcsplit, decay, ternary, verify, coeffs };

struct FormSpec {
    bool builtin_tau = true;
    std::string path;  ///< coefficient file when !builtin_tau
    double theta = kMaassTheta;
};

struct RunConfig {
    Command command = Command::pi;
    std::optional<double> x;
    std::optional<std::uint64_t> n;
    double C = 0.5;
    std::optional<std::size_t> grid;
    FormSpec form;
    std::optional<std::string> out;
    std::string suite;
    std::uint64_t seed = 0;
    std::optional<double> tol;
};

inline std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 15);
    return {buf, p};
}

inline CoefficientSeries load_form(const FormSpec& form, std::size_t limit) {
    limit = std::max<std::size_t>(limit, 1);
    if (form.builtin_tau) return tau_series(limit);
    return load_series(form.path, limit, form.theta);
}

// -----------------------------------------------------------------------------
// Verification suites
// -----------------------------------------------------------------------------

struct SuiteResult {
    bool ok = true;
    std::vector<std::string> lines;

    void check(bool cond, const std::string& line) {
        ok = ok && cond;
        lines.push_back(std::string(cond ? "ok   " : "FAIL ") + line);
    }
};

inline SuiteResult suite_orthogonality(std::int64_t q_max, double tol) {
    SuiteResult r;
    double worst = 0.0;
    for (std::int64_t q = 1; q <= q_max; ++q) {
        const CharacterGroup group(q);
        double worst_q = 0.0;
        for (std::int64_t a = 1; a <= q; ++a)
            if (gcd(a, q) == 1) worst_q = std::max(worst_q, verify_orthogonality_identity(group, a));
        if (worst_q > tol) r.check(false, "q=" + std::to_string(q) + " max error " + format_number(worst_q));
        worst = std::max(worst, worst_q);
    }
    r.check(worst <= tol, "identities e(a/q) expansion and chi(a)tau(conj chi) for q <= " + std::to_string(q_max) +
                              ": max error " + format_number(worst));
    return r;
}

inline SuiteResult suite_gauss(std::int64_t q_max, double tol) {
    SuiteResult r;
    double worst = 0.0, max_ratio = 0.0;
    for (const auto& row : gauss_bound_report(q_max, tol)) {
        worst = std::max(worst, row.norm_error);
        max_ratio = std::max(max_ratio, row.ratio);
    }
    r.check(worst <= tol, "|G(a,0,q)|^2 in {q, 0, 2q} for q <= " + std::to_string(q_max) + ": max rel error " +
                              format_number(worst) + ", max |G|/sqrt(q) " + format_number(max_ratio));
    double worst_tau = 0.0;
    const std::int64_t prim_max = std::min<std::int64_t>(q_max, 100);
    for (std::int64_t q = 1; q <= prim_max; ++q) {
        const CharacterGroup group(q);
        for (const auto& chi : group) {
            if (!chi.is_primitive()) continue;
            const double sq = std::sqrt(static_cast<double>(q));
            worst_tau = std::max(worst_tau, std::abs(std::abs(char_gauss_sum(chi)) - sq) / sq);
        }
    }
    r.check(worst_tau <= tol, "|tau(chi)| = sqrt(q) for primitive chi, q <= " + std::to_string(prim_max) +
                                  ": max rel error " + format_number(worst_tau));
    return r;
}

inline SuiteResult suite_hecke(std::size_t limit) {
    SuiteResult r;
    const auto tau = tau_series(limit);
    const auto violations = check_hecke_relations(tau);
    r.check(violations.empty(), "tau multiplicativity and prime-power recurrence up to " + std::to_string(limit) + ": " +
                                    std::to_string(violations.size()) + " violations");
    const FactorizationTable table(static_cast<std::uint32_t>(std::max<std::size_t>(limit, 2)));
    double worst = 0.0;
    for (auto p : table.primes())
        if (p <= limit) worst = std::max(worst, std::abs(tau.values[p]));
    r.check(worst <= 2.0, "max |a(p)| for p <= " + std::to_string(limit) + ": " + format_number(worst));
    return r;
}

/// Random normalized coefficients in [-2, 2], standing in for a coefficient file.
inline CoefficientSeries random_series(std::size_t limit, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    std::vector<double> v(limit + 1, 0.0);
    v[1] = 1.0;
    for (std::size_t n = 2; n <= limit; ++n) v[n] = dist(rng);
    return series_from_values(std::move(v));
}

inline SuiteResult suite_identity3way(double x_max, bool with_large, std::uint64_t seed, double tol_conv, double tol_int) {
    SuiteResult r;
    std::vector<double> xs;
    for (int x = 1; x <= static_cast<int>(x_max); ++x) xs.push_back(x);
    if (with_large)
        for (double x : {500.0, 1000.0, 2000.0})
            if (x > x_max) xs.push_back(x);
    const double top = xs.empty() ? 1.0 : xs.back();
    const auto limit = static_cast<std::size_t>(std::max(2.0, top));
    const FactorizationTable table(static_cast<std::uint32_t>(limit));
    const auto r3 = three_squares_counts(limit);

    std::vector<std::pair<std::string, CoefficientSeries>> forms;
    forms.emplace_back("tau", tau_series(limit));
    for (int i = 0; i < 3; ++i)
        forms.emplace_back("random#" + std::to_string(i), random_series(limit, seed + static_cast<std::uint64_t>(i)));

    for (const auto& [name, s] : forms) {
        double worst_conv = 0.0, worst_int = 0.0;
        for (double x : xs) {
            const auto pc = compute_pi(x, s, table, r3);
            worst_conv = std::max(worst_conv, relative_error(pc.convolution_value, pc.lattice_value));
            worst_int = std::max(worst_int, relative_error(pc.integral_value, pc.lattice_value));
        }
        r.check(worst_conv <= tol_conv, name + ": lattice vs convolution max rel error " + format_number(worst_conv));
        r.check(worst_int <= tol_int, name + ": lattice vs grid integral max rel error " + format_number(worst_int));
    }
    return r;
}

inline SuiteResult suite_fourthmoment(const std::vector<double>& xs, double tol) {
    SuiteResult r;
    for (double x : xs) {
        const auto count = static_cast<double>(fourth_moment_count(x));
        const double grid = fourth_moment_grid(x, 4 * static_cast<std::size_t>(x) + 8);
        const double err = relative_error(grid, count);
        r.check(err <= tol, "x=" + format_number(x) + ": count " + format_number(count) + ", grid " + format_number(grid) +
                                ", rel error " + format_number(err));
    }
    return r;
}

inline SuiteResult suite_lemma4(std::int64_t q_max, double x, double C, double tol) {
    SuiteResult r;
    const auto limit = static_cast<std::size_t>(x);
    const auto tau = tau_series(limit);
    const FactorizationTable table(static_cast<std::uint32_t>(limit));
    const double Q = x / std::exp(C * std::sqrt(std::log(x)));
    double worst = 0.0;
    for (std::int64_t q = 1; q <= q_max; ++q)
        for (std::int64_t a = 1; a <= q; ++a) {
            if (gcd(a, q) != 1) continue;
            for (double beta : {0.0, 0.01, 1.0 / (static_cast<double>(q) * Q)})
                worst = std::max(worst, lemma4_decomposition_check(a, q, beta, x, tau, table).identity_error);
        }
    r.check(worst <= tol, "character expansion of T(a/q + beta) for q <= " + std::to_string(q_max) + ", x = " +
                              format_number(x) + ": max error " + format_number(worst));
    return r;
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"orthogonality", "gauss", "hecke", "identity3way", "fourthmoment", "lemma4"};
    return names;
}

inline SuiteResult run_suite(const RunConfig& cfg) {
    const auto& s = cfg.suite;
    auto size = [&](std::uint64_t dflt) { return cfg.n.value_or(dflt); };
    if (s == "orthogonality") return suite_orthogonality(static_cast<std::int64_t>(size(100)), cfg.tol.value_or(1e-10));
    if (s == "gauss") return suite_gauss(static_cast<std::int64_t>(size(200)), cfg.tol.value_or(1e-9));
    if (s == "hecke") return suite_hecke(size(10000));
    if (s == "identity3way")
        return suite_identity3way(cfg.x.value_or(200.0), !cfg.x.has_value(), cfg.seed, 1e-9, cfg.tol.value_or(1e-6));
    if (s == "fourthmoment") {
        std::vector<double> xs{16.0, 100.0, 400.0};
        if (cfg.x) xs = {*cfg.x};
        return suite_fourthmoment(xs, cfg.tol.value_or(1e-6));
    }
    if (s == "lemma4")
        return suite_lemma4(static_cast<std::int64_t>(size(20)), cfg.x.value_or(500.0), cfg.C, cfg.tol.value_or(1e-7));
    throw PreconditionError("unknown suite '" + s + "'");
}

// -----------------------------------------------------------------------------
// Commands
// -----------------------------------------------------------------------------

namespace detail {

inline double require_x(const RunConfig& cfg, const char* cmd) {
    if (!cfg.x) throw PreconditionError(std::string(cmd) + ": --x is required");
    if (*cfg.x < 0.0) throw PreconditionError(std::string(cmd) + ": --x must be nonnegative");
    return *cfg.x;
}

inline std::uint32_t sieve_limit(double x) { return static_cast<std::uint32_t>(std::max(2.0, std::floor(x))); }

/// Runs @p write against the --out file, or against @p fallback when no file is configured.
inline void emit(const RunConfig& cfg, std::ostream& fallback, const std::function<void(std::ostream&)>& write) {
    if (!cfg.out) {
        write(fallback);
        return;
    }
    std::ofstream f(*cfg.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file " + *cfg.out);
    write(f);
    f.flush();
    if (!f) throw std::runtime_error("failed writing " + *cfg.out);
}

inline std::string form_name(const FormSpec& f) { return f.builtin_tau ? "tau" : "file:" + f.path; }

}  // namespace detail

inline int cmd_pi(const RunConfig& cfg, std::ostream& out) {
    const double x = detail::require_x(cfg, "pi");
    const auto s = load_form(cfg.form, static_cast<std::size_t>(x));
    const FactorizationTable table(detail::sieve_limit(x));
    const auto r3 = three_squares_counts(static_cast<std::uint64_t>(x));
    const auto pc = compute_pi(x, s, table, r3, cfg.grid.value_or(0));

    out << "pi_{a,Lambda}(x), x = " << format_number(x) << ", form = " << detail::form_name(cfg.form) << '\n';
    out << std::left << std::setw(14) << "method" << std::setw(24) << "value" << "rel. diff vs lattice\n";
    auto row = [&](const std::string& name, double v) {
        out << std::setw(14) << name << std::setw(24) << format_number(v) << format_number(relative_error(v, pc.lattice_value))
            << '\n';
    };
    row("lattice", pc.lattice_value);
    row("convolution", pc.convolution_value);
    row("integral", pc.integral_value);
    out << "grid N = " << pc.grid_size << ", integral imaginary residual = " << format_number(pc.integral_imaginary) << '\n';
    return 0;
}

inline void write_arcsplit_csv(const ArcSplit& split, std::ostream& out) {
    out << "a,q,center,length,contribution_real,contribution_imag\n";
    for (const auto& c : split.major_arcs)
        out << c.arc.center.a << ',' << c.arc.center.q << ',' << format_number(c.arc.center.value()) << ','
            << format_number(c.arc.length()) << ',' << format_number(c.value.real()) << ',' << format_number(c.value.imag())
            << '\n';
    out << "major_total,,," << format_number(split.system.major_measure()) << ',' << format_number(split.major_total.real())
        << ',' << format_number(split.major_total.imag()) << '\n';
    out << "minor_total,,," << format_number(split.system.minor_measure()) << ',' << format_number(split.minor_total.real())
        << ',' << format_number(split.minor_total.imag()) << '\n';
}

inline int cmd_arcsplit(const RunConfig& cfg, std::ostream& out) {
    const double x = detail::require_x(cfg, "arcsplit");
    const auto s = load_form(cfg.form, static_cast<std::size_t>(x));
    const FactorizationTable table(detail::sieve_limit(x));
    const auto split = arc_split(x, cfg.C, s, table);

    detail::emit(cfg, out, [&](std::ostream& o) { write_arcsplit_csv(split, o); });
    if (!cfg.out) return 0;

    const double lattice = pi_lattice(x, s, table);
    const auto& sys = split.system;
    const double logx = std::log(x);
    const auto minor = minor_arc_scan(sys);
    double major_const = 0.0;
    for (const auto& m : major_arc_scan(sys)) major_const = std::max(major_const, m.normalized);

    out << "arc split, x = " << format_number(x) << ", C = " << format_number(cfg.C) << ", form = " << detail::form_name(cfg.form)
        << '\n';
    out << "P = " << format_number(sys.P()) << ", Q = " << format_number(sys.Q()) << ", major arcs = " << sys.major().size()
        << ", minor intervals = " << sys.minor().size() << ", panels = " << split.panels << '\n';
    out << std::left << std::setw(32) << "major part" << format_number(split.major_part()) << '\n'
        << std::setw(32) << "minor part" << format_number(split.minor_part()) << '\n'
        << std::setw(32) << "S2^3 - 8 S1^3 term" << format_number(split.discrepancy) << '\n'
        << std::setw(32) << "sum" << format_number(split.total()) << '\n'
        << std::setw(32) << "lattice value" << format_number(lattice) << '\n'
        << std::setw(32) << "rel. diff" << format_number(relative_error(split.total(), lattice)) << '\n'
        << std::setw(32) << "|term| / x^{1+theta} log^2 x"
        << format_number(std::abs(split.discrepancy) / (std::pow(x, 1.0 + s.theta) * logx * logx)) << '\n'
        << std::setw(32) << "major S1 error constant" << format_number(major_const) << '\n'
        << std::setw(32) << "minor S1 constant (q)" << format_number(minor.constant_by_q) << '\n'
        << std::setw(32) << "minor S1 constant (P)" << format_number(minor.constant_by_P) << '\n';
    return 0;
}

/// 10^2, 10^2.5, ..., up to x_max.
inline std::vector<double> decay_grid(double x_max) {
    std::vector<double> xs;
    for (int k = 0;; ++k) {
        const double x = std::floor(std::pow(10.0, 2.0 + 0.5 * k));
        if (x > x_max) break;
        xs.push_back(x);
    }
    return xs;
}

inline void write_decay_csv(const std::vector<DecayRecord>& records, std::ostream& out) {
    out << "x,ratio,fitted_c\n";
    for (const auto& r : records)
        out << format_number(r.x) << ',' << format_number(r.ratio) << ',' << (r.fitted_c ? format_number(*r.fitted_c) : "")
            << '\n';
}

inline int cmd_decay(const RunConfig& cfg, std::ostream& out) {
    const double x_max = cfg.x.value_or(1e5);
    auto xs = decay_grid(x_max);
    if (xs.empty()) xs.push_back(x_max);
    const auto s = load_form(cfg.form, static_cast<std::size_t>(x_max));
    const FactorizationTable table(detail::sieve_limit(x_max));
    const auto records = decay_scan(xs, cfg.C, s, table);
    detail::emit(cfg, out, [&](std::ostream& o) { write_decay_csv(records, o); });
    if (cfg.out) out << "decay scan: " << records.size() << " points written to " << *cfg.out << '\n';
    return 0;
}

inline int cmd_ternary(const RunConfig& cfg, std::ostream& out) {
    if (!cfg.n) throw PreconditionError("ternary: --n is required");
    const auto N = static_cast<std::size_t>(*cfg.n);
    const auto tau = tau_series(std::max<std::size_t>(N, 1));
    const FactorizationTable table(static_cast<std::uint32_t>(std::max<std::size_t>(N, 2)));
    out << "r_tau(" << N << ") = " << format_number(ternary_tau(N, tau, table)) << '\n';
    return 0;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    const auto result = run_suite(cfg);
    for (const auto& line : result.lines) out << line << '\n';
    out << "suite " << cfg.suite << ": " << (result.ok ? "PASS" : "FAIL") << '\n';
    return result.ok ? 0 : 1;
}

inline int cmd_coeffs(const RunConfig& cfg, std::ostream& out) {
    if (!cfg.n || *cfg.n < 1) throw PreconditionError("coeffs: --n (number of coefficients) is required");
    const auto s = load_form(cfg.form, static_cast<std::size_t>(*cfg.n));
    detail::emit(cfg, out, [&](std::ostream& o) { write_series(s, o); });
    return 0;
}

/// Run one command; failures become a one-line diagnostic on @p err and exit status 1.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        switch (cfg.command) {
            case Command::pi: return cmd_pi(cfg, out);
            case Command::arcsplit: return cmd_arcsplit(cfg, out);
            case Command::decay: return cmd_decay(cfg, out);
            case Command::ternary: return cmd_ternary(cfg, out);
            case Command::verify: return cmd_verify(cfg, out);
            case Command::coeffs: return cmd_coeffs(cfg, out);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

}  // namespace cusp::cli
