#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "greedylab/estimate.hpp"
#include "greedylab/probes.hpp"

namespace greedylab {

namespace param_id {
inline constexpr std::string_view fundamental = "fundamental";
inline constexpr std::string_view democracy = "democracy";
inline constexpr std::string_view unconditionality = "unconditionality";
inline constexpr std::string_view succ = "succ";
inline constexpr std::string_view quasi_greedy = "quasi_greedy";
inline constexpr std::string_view truncation_qg = "truncation_qg";
}  // namespace param_id

struct EnumerationLimits {
    std::uint64_t subset_cap = 5'000'000;      // max C(n, m) for exact subset enumeration
    int subset_dim_cap = 24;                   // max n for exact subset enumeration
    int succ_dim_cap = 12;                     // max n for exact signed-set enumeration
    int vertex_cap = 16;                       // max n for unit-ball vertex listing
    std::uint64_t vertex_work_cap = 1ULL << 25;  // max (#vertices) * 2^n
    std::uint64_t sample_count = 4096;         // draws per m for sampled lower bounds
    std::uint64_t seed = 1;
    // Throw CapacityError instead of degrading to a sampled lower bound.
    bool require_exact = false;
};

// Per-cardinality extremes of ||1_A|| over |A| = k, k = 1..m_max.
struct SubsetNormExtremes {
    std::vector<double> max_value, min_value;
    std::vector<IndexSet> max_set, min_set;
    bool exact = false;
};

SubsetNormExtremes subset_norm_extremes(const BasisSystem& basis, int m_max,
                                        const EnumerationLimits& limits = {});

// phi(m) = sup_{|A| <= m} ||1_A||.
ParamTable fundamental_function(const BasisSystem& basis, int m_max, const EnumerationLimits& limits = {});

// mu_m = sup_{|A| = |B| <= m} ||1_A|| / ||1_B||.
ParamTable democracy_parameter(const BasisSystem& basis, int m_max, const EnumerationLimits& limits = {});

// sup over |A| <= subset_cap, eps, B subset of A of ||1_{eps,B}|| / ||1_{eps,A}||.
EstimateValue succ_constant(const BasisSystem& basis, int subset_cap, const EnumerationLimits& limits = {});

// k_m = sup_{|A| <= m} ||S_A||. Exact on polyhedral spaces through the
// unit-ball vertices, probe lower bound otherwise.
ParamTable unconditionality_constants(const BasisSystem& basis, int m_max, const ProbeFamily& probes,
                                      const EnumerationLimits& limits = {});

// sup_m ||G_m|| and sup_m ||R_m|| over the probes (all greedy sets when n <= 12).
EstimateValue quasi_greedy_constant(const BasisSystem& basis, const ProbeFamily& probes);
EstimateValue truncation_qg_constant(const BasisSystem& basis, const ProbeFamily& probes);

// Recomputes a reported value from its witness alone.
double reevaluate(const BasisSystem& basis, std::string_view param, const Witness& witness);

// Coefficient vectors of the witnesses in a table, for import into a probe family.
std::vector<Vector> witness_probes(const BasisSystem& basis, const ParamTable& table);

// Resolves m_max = 0 to n; throws UsageError outside [0, n].
int resolve_m_max(const BasisSystem& basis, int m_max);

}  // namespace greedylab
