#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "greedylab/estimate.hpp"
#include "greedylab/probes.hpp"

namespace greedylab {

// How the per-support problem min_b ||f - sum_{n in B} b_n x_n|| is solved.
enum class SigmaMethod {
    tail_norm,          // diagonal basis of a lattice norm: zero the coordinates on B (exact)
    polyhedral_lp,      // l1 / linf and linear images thereof: linear program (exact)
    convex_descent,     // smooth convex norm: cyclic coordinate descent (exact within tolerance)
    concave_vertex,     // lp with p < 1 and linear images: residual vertices of the sign arrangement (exact)
    multistart_descent  // everything else: seeded multi-start descent (upper bound)
};

std::string to_string(SigmaMethod method);
SigmaMethod sigma_method(const BasisSystem& basis);

struct BestApproxResult {
    int m = 0;
    IndexSet support;
    Vector coefficients;  // aligned with support
    double error = 0.0;
    EstimateMode mode = EstimateMode::exact;
};

struct SigmaLimits {
    std::uint64_t support_cap = 100000;  // max C(n, m)
    int starts = 8;                      // multi-start descent
    std::uint64_t seed = 1;
    std::uint64_t row_subset_cap = 20000; // max C(n, m) residual vertices per support before descent
    double tolerance = 1e-12;            // relative improvement per sweep
};

// sigma_m(f) by enumerating every support of size m. Throws CapacityError
// ("support_cap") when C(n, m) exceeds the cap.
BestApproxResult sigma_m(const BasisSystem& basis, const Vector& f, int m, const SigmaLimits& limits = {});

// ||f - sum_{n in B} b_n x_n|| for a stored result.
double approximation_error(const BasisSystem& basis, const Vector& f, const BestApproxResult& result);

struct LebesgueOptions {
    SigmaLimits sigma;
    // Probes used when sigma needs an LP or descent per support (0 = all).
    std::size_t costly_probe_cap = 128;
};

struct LebesgueTable {
    ParamTable table;                     // param_id "lebesgue"
    std::vector<EstimateMode> sigma_mode; // per m
};

// L_m = sup over probes f outside Sigma_m of ||f - G_m f|| / sigma_m(f),
// maximised over every greedy set when n <= 12. Always a lower bound; an
// upper-bound sigma keeps the ratio a lower bound. With no admissible probe
// the entry is 1, the value the ratio never falls below.
LebesgueTable lebesgue_constants(const BasisSystem& basis, const ProbeFamily& probes, int m_max,
                                 const LebesgueOptions& options = {});

// C_g = max_m L_m.
EstimateValue greedy_constant(const LebesgueTable& table);
EstimateValue greedy_constant(const BasisSystem& basis, const ProbeFamily& probes, int m_max,
                              const LebesgueOptions& options = {});

// ||f - S_A f|| / ||f - sum_B approx_n x_n|| from the witness (1 when empty).
double reevaluate_lebesgue(const BasisSystem& basis, const Witness& witness);

}  // namespace greedylab
