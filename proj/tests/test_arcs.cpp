#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "cusp/arcs.hpp"

using namespace cusp;

TEST(DirichletApprox, Examples) {
    auto half = dirichlet_approx(0.5, 10.0);
    EXPECT_EQ(half.fraction, (ReducedFraction{1, 2}));
    EXPECT_EQ(half.beta, 0.0);

    auto pi = dirichlet_approx(std::numbers::pi - 3.0, 10.0);
    EXPECT_EQ(pi.fraction, (ReducedFraction{1, 7}));
    EXPECT_NEAR(pi.beta, (std::numbers::pi - 3.0) - 1.0 / 7.0, 1e-15);
    EXPECT_NEAR(pi.beta, -0.0012645, 1e-7);
    EXPECT_LE(std::abs(pi.beta), 1.0 / 70.0);

    for (double k : {-3.0, 0.0, 5.0}) {
        auto whole = dirichlet_approx(k, 100.0);
        EXPECT_EQ(whole.fraction, (ReducedFraction{static_cast<std::int64_t>(k), 1}));
        EXPECT_EQ(whole.beta, 0.0);
    }
    EXPECT_THROW(dirichlet_approx(0.3, 0.5), PreconditionError);
}

TEST(DirichletApprox, PropertyHolds) {
    std::mt19937_64 rng(0);
    std::uniform_real_distribution<double> a(-5.0, 5.0), logq(0.0, std::log(1e6));
    for (int i = 0; i < 10000; ++i) {
        const double alpha = a(rng), Q = std::exp(logq(rng));
        const auto r = dirichlet_approx(alpha, Q);
        const auto qf = static_cast<std::int64_t>(std::floor(Q));
        ASSERT_GE(r.fraction.q, 1);
        ASSERT_LE(r.fraction.q, qf);
        ASSERT_EQ(std::gcd(r.fraction.a, r.fraction.q), 1);
        ASSERT_LE(std::abs(r.beta), 1.0 / (static_cast<double>(r.fraction.q) * static_cast<double>(qf))) << alpha << ' ' << Q;
        ASSERT_NEAR(alpha - r.fraction.value(), r.beta, 1e-12);
    }
}

TEST(BuildArcs, CountsMeasureAndDisjointness) {
    for (double x : {1e3, 1e4, 1e5}) {
        const auto sys = build_arcs(x, 0.5);
        const auto qmax = static_cast<std::int64_t>(std::floor(sys.P()));
        std::size_t expected = 0;
        for (std::int64_t q = 1; q <= qmax; ++q)
            for (std::int64_t a = 1; a <= q; ++a) expected += std::gcd(a, q) == 1;
        EXPECT_EQ(sys.major().size(), expected);

        const auto& arcs = sys.major();
        for (std::size_t i = 0; i < arcs.size(); ++i) {
            EXPECT_LE(arcs[i].center.q, sys.P());
            EXPECT_GE(arcs[i].center.a, 1);
            EXPECT_LE(arcs[i].center.a, arcs[i].center.q);
            EXPECT_GE(arcs[i].left, sys.window_lo());
            EXPECT_LE(arcs[i].right, sys.window_hi());
            for (std::size_t j = i + 1; j < arcs.size(); ++j)
                EXPECT_TRUE(arcs[i].right < arcs[j].left || arcs[j].right < arcs[i].left);
        }
        EXPECT_NEAR(sys.major_measure() + sys.minor_measure(), 1.0, 1e-12);
        EXPECT_NEAR(sys.major_measure(), sys.expected_major_measure(), 1e-12);
        EXPECT_EQ(arcs.back().center, (ReducedFraction{1, 1}));
    }
}

TEST(BuildArcs, SmallPGivesSingleArc) {
    const auto sys = build_arcs(100.0, 0.1);
    ASSERT_LT(sys.P(), 2.0);
    ASSERT_EQ(sys.major().size(), 1u);
    EXPECT_EQ(sys.major()[0].center, (ReducedFraction{1, 1}));
    EXPECT_NEAR(sys.major()[0].length(), 2.0 / sys.Q(), 1e-15);
    ASSERT_EQ(sys.minor().size(), 1u);
}

TEST(BuildArcs, OverlapIsAnError) {
    EXPECT_THROW(build_arcs(3.0, 0.5), ArcOverlapError);
    EXPECT_THROW(build_arcs(50.0, 2.0), ArcOverlapError);
    EXPECT_THROW(build_arcs(1.0, 0.5), PreconditionError);
    EXPECT_THROW(build_arcs(100.0, 0.0), PreconditionError);
}

TEST(Classify, Examples) {
    const auto sys = build_arcs(1e4, 0.5);
    ASSERT_GE(sys.P(), 2.0);

    const auto near_half = classify(sys, 0.5 + 1.0 / (3.0 * sys.Q()));
    ASSERT_TRUE(near_half);
    EXPECT_EQ(near_half->center, (ReducedFraction{1, 2}));

    for (const auto& arc : sys.major()) {
        EXPECT_TRUE(classify(sys, arc.center.value()));
        const auto right = classify(sys, arc.right);
        ASSERT_TRUE(right);
        EXPECT_EQ(right->center, arc.center);
        EXPECT_TRUE(classify(sys, arc.left));
    }
    const auto& arcs = sys.major();
    for (std::size_t i = 0; i + 1 < arcs.size(); ++i) EXPECT_FALSE(classify(sys, 0.5 * (arcs[i].right + arcs[i + 1].left)));
    EXPECT_THROW(classify(sys, 0.0), PreconditionError);
}

TEST(Classify, AgreesWithNearestCenterSearch) {
    const auto sys = build_arcs(1e5, 0.5);
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int i = 0; i < 10000; ++i) {
        const double alpha = sys.reduce(u(rng));
        ASSERT_GE(alpha, sys.window_lo());
        ASSERT_LT(alpha, sys.window_hi());
        const MajorArc* nearest = nullptr;
        double best = 1e9;
        for (const auto& arc : sys.major()) {
            const double d = std::abs(alpha - arc.center.value());
            if (d < best) {
                best = d;
                nearest = &arc;
            }
        }
        const auto got = classify(sys, alpha);
        const bool inside = nearest->contains(alpha);
        ASSERT_EQ(got.has_value(), inside);
        if (inside) ASSERT_EQ(got->center, nearest->center);
    }
}
