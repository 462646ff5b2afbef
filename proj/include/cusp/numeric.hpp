#pragma once

/**
 * @file numeric.hpp
 * @brief Shared numeric plumbing: error types, compensated summation and
 *        the additive character e(t) = exp(2*pi*i*t).
 */

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace cusp {

using complex = std::complex<double>;

// -----------------------------------------------------------------------------
// Errors
// -----------------------------------------------------------------------------

/// An index or argument lies outside the range a table was built for.
struct RangeError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

/// A documented precondition of an operation was violated.
struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Exact integer arithmetic would exceed the representable width.
struct OverflowError : std::overflow_error {
    using std::overflow_error::overflow_error;
};

/// The operation is not defined for this kind of input.
struct UnsupportedError : std::logic_error {
    using std::logic_error::logic_error;
};

/// Malformed input file; carries the 1-based line number.
struct ParseError : std::runtime_error {
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// -----------------------------------------------------------------------------
// Compensated summation (Neumaier variant of Kahan)
// -----------------------------------------------------------------------------

template <typename T>
class CompensatedSum {
public:
    CompensatedSum() = default;
    explicit CompensatedSum(T init) : sum_(init) {}

    CompensatedSum& operator+=(T v) {
        const T t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
        return *this;
    }

    T value() const { return sum_ + comp_; }

private:
    T sum_{};
    T comp_{};
};

/// Complex sums are two independent real compensated sums.
template <>
class CompensatedSum<complex> {
public:
    CompensatedSum() = default;
    explicit CompensatedSum(complex init) : re_(init.real()), im_(init.imag()) {}

    CompensatedSum& operator+=(complex v) {
        re_ += v.real();
        im_ += v.imag();
        return *this;
    }

    complex value() const { return {re_.value(), im_.value()}; }

private:
    CompensatedSum<double> re_;
    CompensatedSum<double> im_;
};

// -----------------------------------------------------------------------------
// e(t)
// -----------------------------------------------------------------------------

/// e(t) = exp(2*pi*i*t), with t reduced mod 1 before the trig call.
inline complex unit_phase(double t) {
    t -= std::floor(t);
    const double angle = 2.0 * std::numbers::pi * t;
    return {std::cos(angle), std::sin(angle)};
}

/// e(num/den) with the reduction done exactly in integers.
inline complex unit_phase(std::int64_t num, std::int64_t den) {
    std::int64_t r = num % den;
    if (r < 0) r += den;
    if (r == 0) return {1.0, 0.0};
    if (2 * r == den) return {-1.0, 0.0};
    return unit_phase(static_cast<double>(r) / static_cast<double>(den));
}

/**
 * Baby-step/giant-step table for e(n*alpha), 0 <= n <= max_n.
 *
 * Each lookup is one complex product of two directly evaluated phases, so the
 * error stays at a few ulps regardless of n. Used by the arc quadrature where
 * the integrand is evaluated at hundreds of thousands of points.
 */
class PhaseTable {
public:
    PhaseTable(double alpha, std::size_t max_n, std::size_t block = 64)
        : block_(block), baby_(block), giant_(max_n / block + 1) {
        for (std::size_t r = 0; r < block_; ++r)
            baby_[r] = unit_phase(static_cast<double>(r) * alpha);
        for (std::size_t s = 0; s < giant_.size(); ++s)
            giant_[s] = unit_phase(static_cast<double>(s * block_) * alpha);
    }

    complex operator()(std::size_t n) const { return giant_[n / block_] * baby_[n % block_]; }

private:
    std::size_t block_;
    std::vector<complex> baby_;
    std::vector<complex> giant_;
};

/// |a - b| / |b|, falling back to the absolute difference when b == 0.
inline double relative_error(double a, double b) {
    const double diff = std::abs(a - b);
    return b == 0.0 ? diff : diff / std::abs(b);
}

}  // namespace cusp
