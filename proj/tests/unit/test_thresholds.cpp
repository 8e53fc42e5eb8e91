#include <cmath>

#include <gtest/gtest.h>

#include "greedylab/basis.hpp"
#include "greedylab/errors.hpp"
#include "greedylab/probes.hpp"
#include "greedylab/thresholds.hpp"

using namespace greedylab;

namespace {

constexpr ThresholdFunction kAll[] = {ThresholdFunction::lambda, ThresholdFunction::theta, ThresholdFunction::phi};

FunctionTable table_from(std::vector<double> raw) {
    FunctionTable t;
    t.grid = ThresholdGrid(2.0, static_cast<int>(raw.size()));
    for (double v : raw) t.raw.push_back(EstimateValue{v, EstimateMode::lower_bound, false, {}});
    t.envelope = raw;
    return monotone_envelope(std::move(t));
}

}  // namespace

TEST(ThresholdGrid, Points) {
    const ThresholdGrid g(2.0, 4);
    EXPECT_EQ(g.points(), (std::vector<double>{0.5, 0.25, 0.125, 0.0625}));
    EXPECT_EQ(g.index_at_or_below(0.3), 2);
    EXPECT_EQ(g.index_at_or_below(0.25), 2);
    EXPECT_EQ(g.index_at_or_below(0.9), 1);
    EXPECT_EQ(g.index_at_or_below(0.01), 4);
    EXPECT_THROW(ThresholdGrid(1.0, 4), UsageError);
    EXPECT_THROW(ThresholdGrid(2.0, 0), UsageError);
    EXPECT_EQ(threshold_function_from_string(to_string(ThresholdFunction::theta)), ThresholdFunction::theta);
}

TEST(ExactGridOracle, UnitL1IsFlat) {
    const BasisSystem b = resolve_basis("lp:1.0:3").basis;
    const auto tables = exact_grid_oracle(b, ThresholdGrid(2.0, 4), 6);
    for (auto f : kAll) {
        const auto& t = tables.get(f);
        EXPECT_TRUE(t.exhaustive_grid());
        for (int k = 1; k <= 4; ++k) EXPECT_DOUBLE_EQ(t.raw_at(k), 1.0) << to_string(f);
    }
}

TEST(ExactGridOracle, SummingFourOracle) {
    // frozen from tests/oracles/brute_force.py (s = 2, K = 4, levels = 6)
    const BasisSystem b = summing_basis(4);
    const auto tables = exact_grid_oracle(b, ThresholdGrid(2.0, 4), 6);
    for (int k = 1; k <= 4; ++k) {
        EXPECT_DOUBLE_EQ(tables.lambda.raw_at(k), 2.0);
        EXPECT_DOUBLE_EQ(tables.theta.raw_at(k), 2.0);
        EXPECT_DOUBLE_EQ(tables.phi.raw_at(k), 4.0);
    }
    for (auto f : kAll) {
        for (const auto& e : tables.get(f).raw) {
            EXPECT_TRUE(close_relative(reevaluate(b, f, e.witness), e.value, 1e-9));
        }
    }
    const EstimateValue c_u = compute_c_u(b, 2.0, 6);
    EXPECT_DOUBLE_EQ(c_u.value, 4.0);
    EXPECT_TRUE(c_u.exhaustive_grid);
    EXPECT_TRUE(close_relative(reevaluate_c_u(b, c_u.witness), 4.0, 1e-9));
}

TEST(ExactGridOracle, SingleFunctionMatchesBundle) {
    const BasisSystem b = resolve_basis("perturbed:4:5").basis;
    const ThresholdGrid g(2.0, 3);
    const auto all = exact_grid_oracle(b, g, 4);
    for (auto f : kAll) {
        const auto one = exact_grid_oracle(b, f, g, 4);
        for (int k = 1; k <= 3; ++k) EXPECT_DOUBLE_EQ(one.raw_at(k), all.get(f).raw_at(k));
    }
}

TEST(ExactGridOracle, Caps) {
    const ThresholdGrid g(2.0, 4);
    EXPECT_THROW(exact_grid_oracle(summing_basis(7), g, 6), CapacityError);
    EXPECT_THROW(exact_grid_oracle(summing_basis(4), g, 4), UsageError);
    EXPECT_THROW(exact_grid_oracle(summing_basis(4), g, 17), CapacityError);
    GridOracleLimits tight;
    tight.work_cap = 100;
    EXPECT_THROW(exact_grid_oracle(summing_basis(4), g, 6, tight), CapacityError);
}

TEST(ExactGridOracle, InvariantsAcrossCatalog) {
    const ThresholdGrid g(2.0, 4);
    for (const auto& entry : make_catalog(4, 1)) {
        const auto t = exact_grid_oracle(entry.basis, g, 6);
        for (int k = 1; k <= 4; ++k) {
            EXPECT_LE(t.theta.raw_at(k), t.phi.raw_at(k)) << entry.id;
            for (auto f : kAll) EXPECT_GE(t.get(f).raw_at(k), 1.0 - 1e-12) << entry.id;
        }
        const auto probes = ProbeFamily::build(4, ProbeConfig{}).snapped_to_grid(2.0, 6);
        const auto pt = probe_estimate(entry.basis, g, probes);
        for (auto f : kAll) {
            for (int k = 1; k <= 4; ++k) EXPECT_LE(pt.get(f).raw_at(k), t.get(f).raw_at(k)) << entry.id;
        }
    }
}

TEST(ProbeEstimate, UnitL2IsFlat) {
    const BasisSystem b = resolve_basis("lp:2.0:8").basis;
    const auto t = probe_estimate(b, ThresholdGrid(2.0, 8), ProbeFamily::build(8, ProbeConfig{}));
    for (auto f : kAll) {
        EXPECT_FALSE(t.get(f).exhaustive_grid());
        for (int k = 1; k <= 8; ++k) EXPECT_NEAR(t.get(f).raw_at(k), 1.0, 1e-12);
    }
}

TEST(ProbeEstimate, SummingGrows) {
    const BasisSystem b = summing_basis(8);
    const auto t = probe_estimate(b, ThresholdGrid(2.0, 8), ProbeFamily::build(8, ProbeConfig{}));
    EXPECT_GT(t.phi.envelope_at(8), t.phi.envelope_at(1));
    for (int k = 1; k <= 8; ++k) EXPECT_LE(t.theta.raw_at(k), t.phi.raw_at(k));
}

TEST(MonotoneEnvelope, Examples) {
    EXPECT_EQ(table_from({1.0, 1.0, 1.2}).envelope, (std::vector<double>{1.0, 1.0, 1.2}));
    EXPECT_EQ(table_from({1.0, 0.9, 1.2}).envelope, (std::vector<double>{1.0, 1.0, 1.2}));
    EXPECT_EQ(table_from({2.0, 2.0, 2.0}).envelope, (std::vector<double>{2.0, 2.0, 2.0}));
    const auto once = table_from({1.5, 0.9, 1.2, 1.1});
    EXPECT_EQ(monotone_envelope(once).envelope, once.envelope);
    for (int k = 1; k <= once.size(); ++k) EXPECT_GE(once.envelope_at(k), once.raw_at(k));
}

TEST(SuccFromLambda, TopGridValue) {
    const BasisSystem b = resolve_basis("lp:1.0:3").basis;
    const auto t = exact_grid_oracle(b, ThresholdGrid(2.0, 3), 4);
    EXPECT_DOUBLE_EQ(succ_from_lambda(t.lambda).value, 1.0);
    const auto s = exact_grid_oracle(summing_basis(4), ThresholdGrid(2.0, 4), 6);
    EXPECT_DOUBLE_EQ(succ_from_lambda(s.lambda).value, s.lambda.envelope_at(1));
}
