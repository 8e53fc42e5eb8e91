#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "greedylab/estimate.hpp"
#include "greedylab/probes.hpp"

namespace greedylab {

// Points a_k = s^{-k}, k = 1..K, strictly decreasing in (0, 1).
class ThresholdGrid {
public:
    ThresholdGrid(double s = 2.0, int K = 8);

    double s() const noexcept { return s_; }
    int K() const noexcept { return K_; }
    double point(int k) const;  // 1 <= k <= K
    const std::vector<double>& points() const noexcept { return points_; }

    // Largest k with a_k <= a (the grid point at or below a), clamped to [1, K].
    int index_at_or_below(double a) const;

    bool operator==(const ThresholdGrid& other) const { return s_ == other.s_ && K_ == other.K_; }

private:
    double s_;
    int K_;
    std::vector<double> points_;
};

enum class ThresholdFunction { lambda, theta, phi };

std::string to_string(ThresholdFunction f);
ThresholdFunction threshold_function_from_string(std::string_view name);

// raw[k-1] is the estimate at a_k; envelope[k-1] = max_{j <= k} raw[j-1].
struct FunctionTable {
    ThresholdFunction func = ThresholdFunction::lambda;
    ThresholdGrid grid;
    std::vector<EstimateValue> raw;
    std::vector<double> envelope;

    int size() const noexcept { return static_cast<int>(raw.size()); }
    double raw_at(int k) const { return raw.at(static_cast<std::size_t>(k - 1)).value; }
    double envelope_at(int k) const { return envelope.at(static_cast<std::size_t>(k - 1)); }
    bool exhaustive_grid() const;
};

struct ThresholdTables {
    FunctionTable lambda, theta, phi;
    const FunctionTable& get(ThresholdFunction f) const;
};

struct GridOracleLimits {
    int dim_cap = 6;
    int levels_cap = 16;
    double work_cap = 5e7;  // max |V|^n
};

// Exhausts coefficient vectors in V^n, V = {0} U {+-s^{-j} : 0 <= j <= levels}.
// Every entry is a lower bound over the coefficient unit ball, flagged
// exhaustive_grid. Requires levels >= K + 1; n, levels or |V|^n above the
// caps throw CapacityError.
ThresholdTables exact_grid_oracle(const BasisSystem& basis, const ThresholdGrid& grid, int levels,
                                  const GridOracleLimits& limits = {});
FunctionTable exact_grid_oracle(const BasisSystem& basis, ThresholdFunction f, const ThresholdGrid& grid,
                                int levels, const GridOracleLimits& limits = {});

// Same ratios over a probe family (lower bounds, not exhaustive).
ThresholdTables probe_estimate(const BasisSystem& basis, const ThresholdGrid& grid, const ProbeFamily& probes);
FunctionTable probe_estimate(const BasisSystem& basis, ThresholdFunction f, const ThresholdGrid& grid,
                             const ProbeFamily& probes);

// Recomputes the envelope from the raw entries; idempotent.
FunctionTable monotone_envelope(FunctionTable table);

// Envelope value at the largest grid point, standing in for lambda(1^-).
EstimateValue succ_from_lambda(const FunctionTable& lambda_table);

double reevaluate(const BasisSystem& basis, ThresholdFunction f, const Witness& witness);

// max over A, eps and grid coefficients a supported on A of
//   ||sum a_n x_n|| / ||1_{eps,A}||,   |a_n| <= 1, a_n in V.
// Lower bound flagged exhaustive_grid; witness holds A, eps (signs) and a (coef).
EstimateValue compute_c_u(const BasisSystem& basis, double s, int levels, const GridOracleLimits& limits = {});
double reevaluate_c_u(const BasisSystem& basis, const Witness& witness);

}  // namespace greedylab
