#pragma once

#include <map>
#include <string>
#include <vector>

#include "greedylab/basis.hpp"
#include "greedylab/lebesgue.hpp"
#include "greedylab/thresholds.hpp"

namespace greedylab {

enum class Verdict { pass, fail, recorded };

std::string to_string(Verdict v);

struct NamedConstant {
    double value = 0.0;
    std::string formula;
};

// `fail` is only emitted when the inequality direction is sound for the
// estimate modes that produced the inputs; everything else is `recorded`.
struct CheckResult {
    std::string check_id;
    std::string basis_id;
    Verdict verdict = Verdict::recorded;
    std::map<std::string, double> details;
    std::map<std::string, NamedConstant> constants_used;
    std::vector<std::string> notes;
};

// s (1 - s^{-p})^{-1/p}.
double constant_p_s(double p, double s);
// 5 2^{1/p + 5} (2^p - 1)^{-1/p} C_u.
double nun_chain_constant(double p, double c_u);
// [2 C^p lambda(1^-)^p log2(m) lambda(m^{-1/p})^p + 2 (c d)^p]^{1/p}.
double nucc_bound(double p, double C, double lambda_top, double lambda_at_m, int m, double c, double d);

CheckResult check_theta_le_phi(const std::string& basis_id, const ThresholdTables& tables);

CheckResult check_monotone(const std::string& basis_id, const ThresholdTables& tables);

CheckResult check_nun_chain(const std::string& basis_id, const ThresholdTables& tables, double p,
                            const EstimateValue& c_u);

struct NuccInputs {
    const FunctionTable* lambda = nullptr;
    const ParamTable* k = nullptr;
    double p = 1.0;
    EstimateValue c_u;
    double c = 1.0;       // max ||x_j^*||
    bool c_exact = false;
    double d = 1.0;       // max ||x_j||
};

CheckResult check_nucc(const std::string& basis_id, const NuccInputs& in);

struct LebesgueInputs {
    const LebesgueTable* lebesgue = nullptr;
    const ParamTable* mu = nullptr;
    const ParamTable* k = nullptr;
    bool unconditional_democratic = false;
};

CheckResult check_lebesgue_equivalence(const std::string& basis_id, const LebesgueInputs& in);

struct KtEntry {
    std::string basis_id;
    bool unconditional = false;
    bool democratic = false;
    bool non_democratic = false;
    int dim = 0;
    EstimateValue greedy_constant;
    ParamTable mu;
    // mu is required to increase strictly for m <= strict_range.
    int strict_range = 0;
};

CheckResult check_kt_dichotomy(const std::vector<KtEntry>& entries);

// C = max over signed sets of ||1_{eps,A}|| / |A|^{1/r} (exact for n <= 12),
// D = max over probes a of ||sum a_n x_n|| / ||a||_{r,q}.
CheckResult check_lorentz_domination(const std::string& basis_id, const BasisSystem& basis, double r, double q,
                                     const ProbeFamily& probes);

// Probe tables must not exceed the exhaustive tables when probes are grid-valued.
CheckResult check_oracle_dominance(const std::string& basis_id, const ThresholdTables& probe,
                                   const ThresholdTables& exhaustive);

// Largest relative deviation between reported values and witness re-evaluation.
struct ReevaluationSummary {
    double max_relative_error = 0.0;
    int checked = 0;
    void add(double reported, double recomputed);
};

CheckResult check_witnesses(const std::string& basis_id, const ReevaluationSummary& summary, double tolerance = 1e-9);

// Deterministic (check_id, basis_id) order.
void sort_results(std::vector<CheckResult>& results);

}  // namespace greedylab
