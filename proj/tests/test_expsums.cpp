#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cusp/expsums.hpp"
#include "oracles.hpp"

using namespace cusp;

namespace {

struct Fixture : ::testing::Test {
    static void SetUpTestSuite() {
        tau = new CoefficientSeries(tau_series(3000));
        table = new FactorizationTable(3000);
    }
    static void TearDownTestSuite() {
        delete tau;
        delete table;
    }
    static inline CoefficientSeries* tau = nullptr;
    static inline FactorizationTable* table = nullptr;
};

using ExpSums = Fixture;

}  // namespace

TEST(S1, Examples) {
    EXPECT_LT(std::abs(s1(0.0, 5.5) - complex(5.0, 0.0)), 1e-14);
    EXPECT_LT(std::abs(s1(0.5, 3.0) - complex(-1.0, 0.0)), 1e-14);
    EXPECT_EQ(s1(0.3, 0.99), complex(0.0, 0.0));
}

TEST(S2, Examples) {
    EXPECT_LT(std::abs(s2(0.0, 2.0) - complex(5.0, 0.0)), 1e-14);
    EXPECT_EQ(s2(0.37, -3.0), complex(1.0, 0.0));
    EXPECT_EQ(s2(0.37, 0.5), complex(1.0, 0.0));
}

TEST(S2, EqualsTwiceS1PlusOne) {
    std::mt19937_64 rng(0);
    std::uniform_real_distribution<double> a(0.0, 1.0), y(1.0, 1e4);
    for (int i = 0; i < 100; ++i) {
        const double alpha = a(rng), yy = y(rng);
        EXPECT_LE(std::abs(s2(alpha, yy) - (2.0 * s1(alpha, yy) + 1.0)), 1e-12) << alpha << ' ' << yy;
    }
}

TEST_F(ExpSums, Periodicity) {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> k(0, 1 << 20);
    for (int i = 0; i < 50; ++i) {
        const double alpha = std::ldexp(static_cast<double>(k(rng)), -20);  // alpha + 1 is exact
        EXPECT_LT(std::abs(s1(alpha + 1.0, 300.0) - s1(alpha, 300.0)), 1e-10);
        EXPECT_LT(std::abs(s2(alpha + 1.0, 300.0) - s2(alpha, 300.0)), 1e-10);
        EXPECT_LT(std::abs(t_sum(alpha + 1.0, 3000.0, *tau, *table) - t_sum(alpha, 3000.0, *tau, *table)), 1e-10);
    }
}

TEST_F(ExpSums, TSumExamples) {
    const double l2 = std::log(2.0), l3 = std::log(3.0);
    const double expected = tau->values[2] * l2 + tau->values[3] * l3 + tau->values[4] * l2;
    EXPECT_NEAR(t_sum(0.0, 4.0, *tau, *table).real(), expected, 1e-15);
    EXPECT_NEAR(expected, -0.208020235, 1e-9);
    EXPECT_EQ(t_sum(0.3, 1.5, *tau, *table), complex(0.0, 0.0));
    for (double alpha : {0.125, 0.375, 0.9375}) EXPECT_LT(std::abs(t_sum(-alpha, 2000, *tau, *table) - std::conj(t_sum(alpha, 2000, *tau, *table))), 1e-11);
    EXPECT_THROW(t_sum(0.0, 3001.0, *tau, *table), RangeError);
}

TEST_F(ExpSums, TSumMatchesOracle) {
    for (double alpha : {0.0, 0.125, 0.3141, 0.77}) {
        complex ref{};
        for (int n = 1; n <= 500; ++n) ref += tau->values[n] * oracle::lambda(n) * oracle::e(n * alpha);
        EXPECT_LT(std::abs(t_sum(alpha, 500.0, *tau, *table) - ref), 1e-11);
    }
}

TEST_F(ExpSums, PsiExamples) {
    const CharacterGroup one(1);
    EXPECT_EQ(psi_f(4.0, one[0], *tau, *table), t_sum(0.0, 4.0, *tau, *table));

    const CharacterGroup three(3);
    const auto& chi = three[1];  // the nontrivial character, chi(2) = -1
    ASSERT_NEAR(chi(2).real(), -1.0, 1e-15);
    const double l2 = std::log(2.0);
    const double expected = tau->values[2] * (-1.0) * l2 + tau->values[4] * 1.0 * l2;
    EXPECT_LT(std::abs(psi_f(4.0, chi, *tau, *table) - complex(expected, 0.0)), 1e-14);
    EXPECT_EQ(psi_f(1.0, chi, *tau, *table), complex(0.0, 0.0));
}

TEST(Dft, MatchesNaive) {
    std::mt19937_64 rng(2);
    std::normal_distribution<double> d;
    for (std::size_t n : {1, 2, 3, 5, 7, 8, 12, 16, 17, 31, 64, 100, 127}) {
        std::vector<complex> a(n);
        for (auto& v : a) v = {d(rng), d(rng)};
        for (int sign : {-1, 1}) {
            const auto fast = dft(a, sign);
            const auto ref = oracle::naive_dft(a, sign);
            for (std::size_t j = 0; j < n; ++j) EXPECT_LT(std::abs(fast[j] - ref[j]), 1e-11) << n;
        }
    }
}

TEST(GridEval, TrivialCases) {
    const std::vector<double> single{0.0, 1.0};
    for (std::size_t N : {1, 5, 8}) {
        const auto g = grid_eval(single, N);
        for (std::size_t j = 0; j < N; ++j)
            EXPECT_LT(std::abs(g.values[j] - oracle::e(static_cast<double>(j) / static_cast<double>(N))), 1e-14);
    }
    const std::vector<double> w{0.0, 1.5, -2.0, 4.0};
    for (auto m : {GridMethod::naive, GridMethod::transform}) {
        const auto g = grid_eval(w, 1, m);
        ASSERT_EQ(g.values.size(), 1u);
        EXPECT_NEAR(g.values[0].real(), 3.5, 1e-14);
    }
    EXPECT_THROW(grid_eval(w, 0), PreconditionError);
    EXPECT_EQ(grid_eval(w, 4).degree, 3u);
}

TEST(GridEval, SquareIndicatorMatchesS1) {
    const double x = 50.0;
    const auto w = square_weights(x);
    const auto g = grid_eval(w, 8);
    for (std::size_t j = 0; j < 8; ++j) EXPECT_LT(std::abs(g.values[j] - s1(j / 8.0, std::sqrt(x))), 1e-10);
}

TEST(GridEval, TransformMatchesNaive) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (std::size_t L : {1, 10, 333, 2000}) {
        std::vector<double> w(L + 1);
        for (auto& v : w) v = d(rng);
        for (std::size_t N : {1, 7, 64, 100, 1000, 4096}) {
            const auto fast = grid_eval(w, N, GridMethod::transform);
            const auto slow = grid_eval(w, N, GridMethod::naive);
            EXPECT_EQ(fast.method, GridMethod::transform);
            for (std::size_t j = 0; j < N; ++j) ASSERT_LT(std::abs(fast.values[j] - slow.values[j]), 1e-9) << L << ' ' << N;
        }
    }
}

TEST(GridEval, ExplicitFrequencies) {
    const std::vector<double> w{0.0, 0.0, 1.0, 0.0, -0.5};
    const std::vector<double> alphas{0.1, 0.25, 0.9};
    const auto g = grid_eval_at(w, alphas);
    ASSERT_EQ(g.values.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(g.frequency(i), alphas[i]);
        EXPECT_LT(std::abs(g.values[i] - (oracle::e(2 * alphas[i]) - 0.5 * oracle::e(4 * alphas[i]))), 1e-14);
    }
}

TEST(FourthMoment, CountAndGrid) {
    EXPECT_EQ(fourth_moment_count(4.0), 6u);
    EXPECT_EQ(oracle::fourth_moment_quartic(2), 6u);
    for (int M : {3, 5, 10, 20}) EXPECT_EQ(fourth_moment_count(M * M), oracle::fourth_moment_quartic(M));
    for (double x : {4.0, 16.0, 100.0, 400.0}) {
        const double count = static_cast<double>(fourth_moment_count(x));
        EXPECT_LE(std::abs(fourth_moment_grid(x, 4 * static_cast<std::size_t>(x) + 8) - count) / count, 1e-6);
    }
    EXPECT_THROW(fourth_moment_grid(100.0, 400), PreconditionError);
}

TEST_F(ExpSums, CharacterDecompositionExamples) {
    const auto trivial = lemma4_decomposition_check(1, 1, 0.01, 200.0, *tau, *table);
    EXPECT_EQ(trivial.identity_error, 0.0);
    EXPECT_EQ(trivial.noncoprime, complex(0.0, 0.0));
    EXPECT_LE(lemma4_decomposition_check(1, 3, 0.01, 100.0, *tau, *table).identity_error, 1e-8);
    EXPECT_LE(lemma4_decomposition_check(7, 20, 0.0, 500.0, *tau, *table).identity_error, 1e-7);
    EXPECT_THROW(lemma4_decomposition_check(2, 4, 0.0, 100.0, *tau, *table), PreconditionError);
}

TEST_F(ExpSums, CharacterDecompositionPartsAddUpToT) {
    // coprime part + (n,q)>1 part = T(a/q + beta)
    const std::int64_t a = 5, q = 12;
    const double beta = 0.003, x = 1500.0;
    const auto chk = lemma4_decomposition_check(a, q, beta, x, *tau, *table);
    const complex total = t_sum(static_cast<double>(a) / q + beta, x, *tau, *table);
    EXPECT_LT(std::abs(chk.lhs + chk.noncoprime - total), 1e-9);

    complex ref{};
    double ref_abs = 0.0;
    for (int n = 2; n <= 1500; ++n) {
        if (std::gcd(n, 12) == 1) continue;
        const double w = tau->values[n] * oracle::lambda(n);
        ref += w * oracle::e(n * (5.0 / 12.0 + beta));
        ref_abs += std::abs(w);
    }
    EXPECT_LT(std::abs(chk.noncoprime - ref), 1e-10);
    EXPECT_NEAR(chk.noncoprime_abs, ref_abs, 1e-12);
}

TEST(MajorMainTerm, AtRationalCenters) {
    EXPECT_LT(std::abs(s1_major_main_term(1, 1, 0.0, 400.0) - complex(20.0, 0.0)), 1e-9);
    // x beta v^2 integral against a fine composite midpoint rule
    const double x = 1e4, beta = 3e-4;
    complex ref{};
    const int n = 200000;
    for (int k = 0; k < n; ++k) {
        const double v = (k + 0.5) / n;
        ref += oracle::e(x * beta * v * v);
    }
    ref /= static_cast<double>(n);
    EXPECT_LT(std::abs(s1_major_main_term(1, 1, beta, x) - 100.0 * ref), 1e-6);
}

TEST(Quadrature, GaussLegendreExactness) {
    const auto& rule = gauss_legendre_8();
    double wsum = 0.0;
    for (double w : rule.weights) wsum += w;
    EXPECT_NEAR(wsum, 2.0, 1e-15);
    for (int p = 0; p <= 15; ++p) {
        const double exact = p % 2 ? 0.0 : 2.0 / (p + 1);
        const double got = gauss_panel(rule, [p](double t) { return std::pow(t, p); }, -1.0, 1.0);
        EXPECT_NEAR(got, exact, 1e-14) << p;
    }
}
