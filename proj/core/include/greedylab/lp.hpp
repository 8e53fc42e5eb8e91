#pragma once

#include "greedylab/space.hpp"

namespace greedylab {

struct LpResult {
    bool optimal = false;
    double objective = 0.0;
    Vector x;
};

// minimize c^T x  subject to  A x <= h, x >= 0, where h >= 0 so the origin is
// feasible. Dense tableau simplex with Bland's rule.
LpResult solve_lp_feasible_origin(const Matrix& A, const Vector& h, const Vector& c, int max_pivots = 10000);

struct PolyhedralFit {
    double error = 0.0;
    Vector b;
};

// argmin_b ||g - Y b||_p for p = 1 or p = inf.
PolyhedralFit polyhedral_fit(const Matrix& Y, const Vector& g, double p);

}  // namespace greedylab
