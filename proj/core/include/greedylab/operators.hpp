#pragma once

#include <cstddef>
#include <vector>

#include "greedylab/basis.hpp"

namespace greedylab {

// Indices are 0-based throughout the library.
using IndexSet = std::vector<int>;

// Indices of the m largest |x_n^*(f)|, listed by descending magnitude with
// ties broken by ascending index.
struct GreedySelection {
    std::vector<int> indices;
    int m() const noexcept { return static_cast<int>(indices.size()); }
    // Same indices, ascending.
    IndexSet as_set() const;
};

// An index set A with sign pattern eps in {-1,+1}^A; signs[i] goes with indices[i].
struct SignedSet {
    std::vector<int> indices;
    std::vector<int> signs;
};

// Coefficient-space primitives shared by the estimators.
namespace coef {

// Full greedy ordering of a coefficient vector.
std::vector<int> greedy_order(const Vector& c);

GreedySelection greedy_set(const Vector& c, int m);

// Every greedy set of cardinality m (ascending index sets): the strict top
// part plus each choice among the coefficients tied at the cut. Returns only
// the tie-rule set when the count would exceed `limit`.
std::vector<IndexSet> all_greedy_sets(const Vector& c, int m, std::size_t limit = 4096);

// Coefficients restricted to A.
Vector restrict_to(const Vector& c, const IndexSet& A);

// Coefficients of R(f, A): min_{n in A}|c_n| * sgn(c_n) on A, zero elsewhere.
Vector flatten_on(const Vector& c, const IndexSet& A);

// {n : |c_n| >= a}, ascending.
IndexSet threshold_set(const Vector& c, double a);

}  // namespace coef

// Ambient vector with the given coefficients: sum c_n x_n.
Vector synthesize(const BasisSystem& basis, const Vector& c);

// sum_{n in A} eps_n x_n.
Vector indicator(const BasisSystem& basis, const SignedSet& set);
Vector indicator(const BasisSystem& basis, const IndexSet& A);

GreedySelection greedy_set(const BasisSystem& basis, const Vector& f, int m);

// S_A(f).
Vector project(const BasisSystem& basis, const Vector& f, const IndexSet& A);

// G_m(f) = S_{A_m(f)}(f).
Vector greedy_operator(const BasisSystem& basis, const Vector& f, int m);

// R(f, A). Zero when A is empty or some coefficient on A vanishes.
Vector restricted_truncation(const BasisSystem& basis, const Vector& f, const IndexSet& A);

// R_m(f) = R(f, A_m(f)); R_0 = 0.
Vector restricted_truncation_m(const BasisSystem& basis, const Vector& f, int m);

// T_m(f) = R_m(f) + f - G_m(f) with a single shared greedy set.
Vector truncation_operator(const BasisSystem& basis, const Vector& f, int m);

// A(a, f) = {n : |x_n^*(f)| >= a}.
IndexSet threshold_set(const BasisSystem& basis, const Vector& f, double a);

// G^(a)(f) = S_{A(a,f)}(f) and R^(a)(f) = R(f, A(a,f)).
Vector thresholding_greedy(const BasisSystem& basis, const Vector& f, double a);
Vector thresholding_truncation(const BasisSystem& basis, const Vector& f, double a);

}  // namespace greedylab
