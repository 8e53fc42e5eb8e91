#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "greedylab/basis.hpp"
#include "greedylab/errors.hpp"
#include "greedylab/lebesgue.hpp"
#include "greedylab/lp.hpp"
#include "greedylab/operators.hpp"
#include "greedylab/probes.hpp"
#include "greedylab/rng.hpp"

using namespace greedylab;

namespace {

Vector vec(std::initializer_list<double> v) {
    Vector out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) out[i++] = x;
    return out;
}

std::vector<IndexSet> supports_up_to(int n, int m) {
    std::vector<IndexSet> out;
    for (int mask = 0; mask < (1 << n); ++mask) {
        if (std::popcount(static_cast<unsigned>(mask)) > m) continue;
        IndexSet B;
        for (int i = 0; i < n; ++i) {
            if (mask >> i & 1) B.push_back(i);
        }
        out.push_back(B);
    }
    return out;
}

}  // namespace

TEST(Lp, SimplexSmallProgram) {
    // min -x - y  s.t.  x + 2y <= 4, 3x + y <= 6
    Matrix A(2, 2);
    A << 1, 2, 3, 1;
    const auto r = solve_lp_feasible_origin(A, vec({4, 6}), vec({-1, -1}));
    ASSERT_TRUE(r.optimal);
    EXPECT_NEAR(r.objective, -2.8, 1e-12);
    EXPECT_NEAR(r.x[0], 1.6, 1e-12);
    EXPECT_NEAR(r.x[1], 1.2, 1e-12);
}

TEST(Lp, PolyhedralFitL1AndLinf) {
    Matrix Y(3, 1);
    Y << 1, 1, 1;
    const Vector g = vec({0, 1, 5});
    EXPECT_NEAR(polyhedral_fit(Y, g, 1.0).error, 5.0, 1e-12);  // median fit
    EXPECT_NEAR(polyhedral_fit(Y, g, std::numeric_limits<double>::infinity()).error, 2.5, 1e-12);
}

TEST(SigmaM, Examples) {
    const BasisSystem b = resolve_basis("lp:1.0:3").basis;
    const Vector f = vec({3, 2, 1});
    const auto r1 = sigma_m(b, f, 1);
    EXPECT_DOUBLE_EQ(r1.error, 3.0);
    EXPECT_EQ(r1.support, (IndexSet{0}));
    EXPECT_DOUBLE_EQ(r1.coefficients[0], 3.0);
    EXPECT_DOUBLE_EQ(sigma_m(b, f, 0).error, 6.0);
    EXPECT_DOUBLE_EQ(sigma_m(b, f, 3).error, 0.0);
    EXPECT_EQ(sigma_method(b), SigmaMethod::tail_norm);
}

TEST(SigmaM, SummingBasisMatchesScipyOracle) {
    // frozen from tests/oracles/brute_force.py: summing:4, f = X (1, -1/2, 1/4, 3/4)
    const BasisSystem b = summing_basis(4);
    ASSERT_EQ(sigma_method(b), SigmaMethod::polyhedral_lp);
    const Vector f = synthesize(b, vec({1.0, -0.5, 0.25, 0.75}));
    const double expected[] = {1.5, 0.5, 0.25, 0.125, 0.0};
    for (int m = 0; m <= 4; ++m) {
        const auto r = sigma_m(b, f, m);
        EXPECT_EQ(r.mode, EstimateMode::exact);
        EXPECT_NEAR(r.error, expected[m], 1e-12) << "m=" << m;
        EXPECT_TRUE(close_relative(approximation_error(b, f, r), r.error, 1e-9) || r.error < 1e-12);
    }
}

TEST(SigmaM, InvariantsAcrossMethods) {
    Rng rng(31);
    Matrix M = Matrix::Identity(5, 5);
    for (int j = 1; j < 5; ++j) M(j - 1, j) = 0.3;
    const std::vector<BasisSystem> bases{
        resolve_basis("lp:2.0:5").basis, summing_basis(5),
        BasisSystem(QuasiNorm::lp(2.0, 5), M),   // convex descent
        BasisSystem(QuasiNorm::lp(0.5, 5), M),   // concave vertices
        resolve_basis("l2blocks:1.0:2+3").basis, resolve_basis("perturbed:5:2").basis};
    for (const auto& b : bases) {
        for (int t = 0; t < 6; ++t) {
            Vector f(5);
            for (int i = 0; i < 5; ++i) f[i] = rng.uniform(-1.0, 1.0);
            const double fn = b.space().norm(f);
            double prev = std::numeric_limits<double>::infinity();
            for (int m = 0; m <= 5; ++m) {
                const auto r = sigma_m(b, f, m);
                ASSERT_LE(r.error, prev + 1e-9 * fn) << to_string(sigma_method(b));
                ASSERT_LE(static_cast<int>(r.support.size()), m);
                prev = r.error;
                for (const auto& B : supports_up_to(5, m)) {
                    const double proj = b.space().norm(f - project(b, f, B));
                    ASSERT_LE(r.error, proj + 1e-9 * fn) << to_string(sigma_method(b)) << " m=" << m;
                }
                const double alpha = -2.5;
                ASSERT_NEAR(sigma_m(b, alpha * f, m).error, 2.5 * r.error, 1e-9 * fn * 2.5 + 1e-7 * r.error) << to_string(sigma_method(b)) << " m=" << m;
            }
            EXPECT_NEAR(sigma_m(b, f, 0).error, fn, 1e-9 * fn);
            EXPECT_NEAR(sigma_m(b, f, 5).error, 0.0, 1e-9 * fn);
        }
    }
}

TEST(SigmaM, ConcaveVerticesBeatScanAndDescent) {
    Matrix M = Matrix::Identity(4, 4);
    for (int j = 1; j < 4; ++j) M(j - 1, j) = -0.4;
    const BasisSystem b(QuasiNorm::lp(0.5, 4), M);
    ASSERT_EQ(sigma_method(b), SigmaMethod::concave_vertex);
    SigmaLimits descent;
    descent.row_subset_cap = 0;
    Rng rng(7);
    for (int t = 0; t < 8; ++t) {
        Vector f(4);
        for (int i = 0; i < 4; ++i) f[i] = rng.uniform(-1.0, 1.0);
        const auto r = sigma_m(b, f, 1);
        EXPECT_EQ(r.mode, EstimateMode::exact);
        double scan = std::numeric_limits<double>::infinity();
        for (int j = 0; j < 4; ++j) {
            for (int step = -40000; step <= 40000; ++step) {
                const double s = step * 1e-4;
                scan = std::min(scan, b.space().norm((f - s * M.col(j)).eval()));
            }
            // Kinks of the residual.
            for (int i = 0; i < 4; ++i) {
                if (M(i, j) != 0.0) scan = std::min(scan, b.space().norm((f - f[i] / M(i, j) * M.col(j)).eval()));
            }
        }
        EXPECT_NEAR(r.error, scan, 1e-12 * scan);
        for (int m = 1; m <= 3; ++m) {
            const auto h = sigma_m(b, f, m, descent);
            EXPECT_EQ(h.mode, EstimateMode::upper_bound);
            EXPECT_LE(sigma_m(b, f, m).error, h.error + 1e-12);
        }
    }
}

TEST(SigmaM, CapacityAndUsage) {
    const BasisSystem b = resolve_basis("lp:2.0:30").basis;
    SigmaLimits lim;
    lim.support_cap = 1000;
    EXPECT_THROW(sigma_m(b, Vector::Ones(30), 15, lim), CapacityError);
    EXPECT_THROW(sigma_m(b, Vector::Ones(30), 31), UsageError);
}

TEST(Lebesgue, UnitBasesAreOne) {
    for (const auto& id : {"lp:1.0:8", "lp:2.0:8", "lp:0.5:8"}) {
        const BasisSystem b = resolve_basis(id).basis;
        const auto L = lebesgue_constants(b, ProbeFamily::build(8, ProbeConfig{}), 8);
        ASSERT_EQ(L.table.m_max(), 8);
        for (int m = 1; m <= 8; ++m) EXPECT_NEAR(L.table.value(m), 1.0, 1e-6) << id;
        EXPECT_NEAR(greedy_constant(L).value, 1.0, 1e-6);
        for (const auto& e : L.table.entries) {
            EXPECT_TRUE(close_relative(reevaluate_lebesgue(b, e.witness), e.value, 1e-9));
        }
    }
}

TEST(Lebesgue, SingleCoordinateProbeIsSkipped) {
    const BasisSystem b = summing_basis(4);
    ProbeFamily one;
    one.add(vec({0, 1, 0, 0}));
    const auto L = lebesgue_constants(b, one, 4);
    for (int m = 1; m <= 4; ++m) {
        EXPECT_DOUBLE_EQ(L.table.value(m), 1.0);
        EXPECT_EQ(L.table.at(m).witness.coef.size(), 0);
    }
}

TEST(Lebesgue, SummingGrowsAndDominatesEntries) {
    const BasisSystem b = summing_basis(8);
    const auto probes = ProbeFamily::build(8, ProbeConfig{});
    const auto L = lebesgue_constants(b, probes, 8);
    const auto cg = greedy_constant(L);
    for (const auto& e : L.table.entries) {
        EXPECT_LE(e.value, cg.value);
        EXPECT_GE(e.value, 1.0 - 1e-12);
        EXPECT_TRUE(close_relative(reevaluate_lebesgue(b, e.witness), e.value, 1e-9));
    }
    EXPECT_GT(cg.value, 2.0);
    const auto small = greedy_constant(summing_basis(4), ProbeFamily::build(4, ProbeConfig{}), 4);
    EXPECT_GT(cg.value, small.value);
}
