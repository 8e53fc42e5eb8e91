#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "greedylab/space.hpp"

namespace greedylab {

struct ProbeConfig {
    std::uint64_t seed = 1;
    int random_count = 256;     // uniform and layered draws, each
    int support_cap = 6;        // largest support of the +-1 sign probes
    std::size_t sign_probe_limit = 20000;
    double s = 2.0;             // grid ratio for layered probes
    int levels = 9;             // layered magnitudes s^{-j}, 0 <= j <= levels
};

// Coefficient vectors used by every lower-bound estimator:
//   (i)   +-1 sign vectors on supports up to support_cap (first sign +1),
//   (ii)  layered vectors with magnitudes on the grid s^{-j},
//   (iii) seeded uniform vectors in [-1, 1]^n,
//   (iv)  vectors imported from other estimators' witnesses.
class ProbeFamily {
public:
    ProbeFamily() = default;
    static ProbeFamily build(int n, const ProbeConfig& config);

    void add(Vector coef);
    const std::vector<Vector>& probes() const noexcept { return probes_; }
    std::size_t size() const noexcept { return probes_.size(); }
    bool empty() const noexcept { return probes_.empty(); }

    // Copy with every coefficient snapped to the nearest value of
    // {0} U {+-s^{-j} : 0 <= j <= levels}; duplicates dropped.
    ProbeFamily snapped_to_grid(double s, int levels) const;

private:
    std::vector<Vector> probes_;
};

// Coefficient alphabet {0, +1, -1, +s^-1, -s^-1, ...}.
std::vector<double> grid_values(double s, int levels);

}  // namespace greedylab
