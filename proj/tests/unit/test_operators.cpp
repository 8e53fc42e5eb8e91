#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "greedylab/basis.hpp"
#include "greedylab/errors.hpp"
#include "greedylab/operators.hpp"
#include "greedylab/rng.hpp"

using namespace greedylab;

namespace {

Vector vec(std::initializer_list<double> v) {
    Vector out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) out[i++] = x;
    return out;
}

BasisSystem unit(double p, int n) { return resolve_basis("lp:" + std::to_string(p) + ":" + std::to_string(n)).basis; }

}  // namespace

TEST(GreedySet, Examples) {
    const auto b = unit(1.0, 3);
    EXPECT_EQ(greedy_set(b, vec({0.5, -0.9, 0.2}), 2).indices, (std::vector<int>{1, 0}));
    EXPECT_EQ(greedy_set(b, vec({1, 1, 0}), 1).indices, (std::vector<int>{0}));
    EXPECT_TRUE(greedy_set(b, vec({1, 1, 0}), 0).indices.empty());
    EXPECT_THROW(greedy_set(b, vec({1, 1, 0}), 4), UsageError);
    EXPECT_EQ(greedy_set(b, vec({0.5, -0.9, 0.2}), 2).as_set(), (IndexSet{0, 1}));
}

TEST(GreedySet, AllGreedySetsEnumeratesTies) {
    const auto sets = coef::all_greedy_sets(vec({1, 0.5, 0.5, 0.5}), 2);
    ASSERT_EQ(sets.size(), 3u);
    EXPECT_EQ(sets.front(), (IndexSet{0, 1}));
    EXPECT_EQ(coef::all_greedy_sets(vec({3, 2, 1}), 2).size(), 1u);
}

TEST(Project, Examples) {
    const auto b = unit(2.0, 3);
    EXPECT_EQ(project(b, vec({3, 1, 2}), {0, 2}), vec({3, 0, 2}));
    EXPECT_EQ(project(b, vec({3, 1, 2}), {}), vec({0, 0, 0}));
    const BasisSystem s = summing_basis(3);
    const Vector f = synthesize(s, vec({0, 1, 0}));
    EXPECT_TRUE(project(s, f, {1}).isApprox(vec({1, 1, 0})));
    EXPECT_THROW(project(b, vec({3, 1, 2}), {3}), UsageError);
}

TEST(GreedyOperator, Examples) {
    const auto b = unit(1.0, 3);
    EXPECT_EQ(greedy_operator(b, vec({3, 1, 2}), 2), vec({3, 0, 2}));
    EXPECT_EQ(greedy_operator(b, vec({3, 1, 2}), 3), vec({3, 1, 2}));
    const auto b2 = unit(1.0, 2);
    EXPECT_EQ(greedy_operator(b2, vec({1, 1}), 1), vec({1, 0}));
}

TEST(RestrictedTruncation, Examples) {
    const auto b = unit(1.0, 3);
    EXPECT_EQ(restricted_truncation(b, vec({3, 1, 2}), {0, 2}), vec({2, 0, 2}));
    EXPECT_EQ(restricted_truncation(unit(1.0, 2), vec({-3, 2}), {0, 1}), vec({-2, 2}));
    EXPECT_EQ(restricted_truncation(b, vec({3, 1, 2}), {1}), vec({0, 1, 0}));
    EXPECT_EQ(restricted_truncation(b, vec({3, 1, 2}), {}), vec({0, 0, 0}));
    // a vanishing coefficient on A zeroes the whole output
    EXPECT_EQ(restricted_truncation(b, vec({3, 0, 2}), {0, 1}), vec({0, 0, 0}));
}

TEST(RestrictedTruncationM, Examples) {
    const auto b = unit(1.0, 3);
    EXPECT_EQ(restricted_truncation_m(b, vec({3, 1, 2}), 2), vec({2, 0, 2}));
    EXPECT_EQ(restricted_truncation_m(b, vec({3, 1, 2}), 0), vec({0, 0, 0}));
    EXPECT_EQ(restricted_truncation_m(b, vec({1, 1, 1}), 3), vec({1, 1, 1}));
}

TEST(TruncationOperator, Examples) {
    const auto b = unit(1.0, 3);
    EXPECT_EQ(truncation_operator(b, vec({3, 1, 2}), 2), vec({2, 1, 2}));
    EXPECT_EQ(truncation_operator(b, vec({3, 1, 2}), 0), vec({3, 1, 2}));
    EXPECT_EQ(truncation_operator(b, vec({3, 1, 2}), 3), vec({1, 1, 1}));
}

TEST(Thresholding, Examples) {
    const auto b = unit(1.0, 3);
    const Vector f = vec({0.9, 0.5, 0.1});
    EXPECT_EQ(threshold_set(b, f, 0.5), (IndexSet{0, 1}));
    EXPECT_TRUE(threshold_set(b, f, 1.1).empty());
    EXPECT_EQ(threshold_set(b, f, 1e-12), (IndexSet{0, 1, 2}));
    EXPECT_EQ(thresholding_greedy(b, f, 0.5), vec({0.9, 0.5, 0}));
    EXPECT_EQ(thresholding_truncation(b, f, 0.5), vec({0.5, 0.5, 0}));
    EXPECT_EQ(thresholding_greedy(b, f, 0.1), f);
    EXPECT_EQ(thresholding_truncation(b, f, 1.1), vec({0, 0, 0}));
    EXPECT_EQ(thresholding_truncation(unit(1.0, 2), vec({1, 1}), 1.0), vec({1, 1}));
}

TEST(OperatorProperties, GreedyDominanceAndIdentities) {
    Rng rng(21);
    for (const auto& entry : make_catalog(6, 3)) {
        const BasisSystem& b = entry.basis;
        for (int t = 0; t < 10000; ++t) {
            Vector f(6);
            for (int i = 0; i < 6; ++i) f[i] = rng.uniform(-1.0, 1.0);
            const Vector c = coefficients(b, f);
            const int m = static_cast<int>(rng.below(7));
            const auto sel = greedy_set(b, f, m);
            ASSERT_EQ(sel.m(), m);
            double min_in = std::numeric_limits<double>::infinity(), max_out = 0.0;
            std::vector<bool> in(6, false);
            for (int i : sel.indices) {
                in[static_cast<std::size_t>(i)] = true;
                min_in = std::min(min_in, std::abs(c[i]));
            }
            for (int i = 0; i < 6; ++i) {
                if (!in[static_cast<std::size_t>(i)]) max_out = std::max(max_out, std::abs(c[i]));
            }
            if (m > 0 && m < 6) ASSERT_GE(min_in, max_out);

            const Vector T = truncation_operator(b, f, m);
            const Vector R = restricted_truncation_m(b, f, m);
            const Vector G = greedy_operator(b, f, m);
            ASSERT_LT((T - R - f + G).cwiseAbs().maxCoeff(), 1e-10) << entry.id;

            const Vector rc = coefficients(b, R);
            if (m > 0) {
                const double mag = std::abs(rc[sel.indices.front()]);
                for (int i : sel.indices) ASSERT_NEAR(std::abs(rc[i]), mag, 1e-10);
            }

            const double alpha = rng.uniform(0.1, 3.0) * rng.sign();
            ASSERT_EQ(greedy_set(b, alpha * f, m).indices, sel.indices);
        }
    }
}

TEST(OperatorProperties, ProjectionIdempotentAndComplete) {
    Rng rng(22);
    const BasisSystem b = summing_basis(5);
    for (int t = 0; t < 200; ++t) {
        Vector f(5);
        for (int i = 0; i < 5; ++i) f[i] = rng.uniform(-1.0, 1.0);
        IndexSet A;
        for (int i = 0; i < 5; ++i) {
            if (rng.below(2)) A.push_back(i);
        }
        const Vector p = project(b, f, A);
        EXPECT_LT((project(b, p, A) - p).cwiseAbs().maxCoeff(), 1e-10);
        EXPECT_LT((project(b, f, {0, 1, 2, 3, 4}) - f).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(OperatorProperties, ThresholdScalingIdentity) {
    // grid-valued coefficients: R^(b)(f) = (b/a) R^(a)((a/b) f) for a = 2^-i, b = 2^-j
    Rng rng(23);
    const BasisSystem b = summing_basis(5);
    for (int t = 0; t < 500; ++t) {
        Vector c(5);
        for (int i = 0; i < 5; ++i) {
            const int level = static_cast<int>(rng.below(7));
            c[i] = level == 6 ? 0.0 : rng.sign() * std::ldexp(1.0, -level);
        }
        const Vector f = synthesize(b, c);
        const double a = std::ldexp(1.0, -static_cast<int>(1 + rng.below(4)));
        const double bb = std::ldexp(1.0, -static_cast<int>(1 + rng.below(4)));
        const Vector lhs = thresholding_truncation(b, f, bb);
        const Vector rhs = (bb / a) * thresholding_truncation(b, (a / bb) * f, a);
        ASSERT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-10);
    }
}
