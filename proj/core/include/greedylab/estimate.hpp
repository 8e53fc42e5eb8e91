#pragma once

#include <limits>
#include <string>
#include <vector>

#include "greedylab/operators.hpp"

namespace greedylab {

enum class EstimateMode { exact, lower_bound, upper_bound };

std::string to_string(EstimateMode mode);

// The input that attains a reported value. Which fields are meaningful
// depends on the parameter that produced it.
struct Witness {
    IndexSet A;                 // primary set (greedy set, suppression set, ...)
    IndexSet B;                 // secondary set (denominator set, subset of A, support)
    std::vector<int> signs;     // sign pattern on A, aligned with A
    Vector coef;                // probe coefficients
    Vector ambient;             // ambient probe (vertex of the unit ball)
    Vector approx;              // coefficients on B of a best m-term approximant
    int m = -1;
    double a = std::numeric_limits<double>::quiet_NaN();

    bool empty() const {
        return A.empty() && B.empty() && signs.empty() && coef.size() == 0 && ambient.size() == 0 && m < 0;
    }
};

struct EstimateValue {
    double value = 0.0;
    EstimateMode mode = EstimateMode::lower_bound;
    // Lower bound obtained by exhausting a finite coefficient grid.
    bool exhaustive_grid = false;
    Witness witness;
};

// m -> value for m = 1..m_max; entries[m - 1].
struct ParamTable {
    std::string param_id;
    std::vector<EstimateValue> entries;

    int m_max() const { return static_cast<int>(entries.size()); }
    const EstimateValue& at(int m) const { return entries.at(static_cast<std::size_t>(m - 1)); }
    double value(int m) const { return at(m).value; }
    // Exact iff every entry is.
    bool exact() const;
};

// Relative agreement used for witness re-evaluation.
inline bool close_relative(double a, double b, double rel) {
    const double scale = std::max({1e-300, std::abs(a), std::abs(b)});
    return std::abs(a - b) <= rel * scale;
}

}  // namespace greedylab
