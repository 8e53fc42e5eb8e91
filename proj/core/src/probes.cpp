#include "greedylab/probes.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "greedylab/errors.hpp"
#include "greedylab/rng.hpp"

namespace greedylab {
namespace {

std::size_t sign_probe_count(int n, int cap) {
    double total = 0.0, binom = 1.0;
    for (int k = 1; k <= std::min(n, cap); ++k) {
        binom = binom * (n - k + 1) / k;
        total += binom * std::ldexp(1.0, k - 1);
    }
    return total > 1e12 ? static_cast<std::size_t>(1e12) : static_cast<std::size_t>(total);
}

struct VectorLess {
    bool operator()(const Vector& a, const Vector& b) const {
        return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
    }
};

}  // namespace

std::vector<double> grid_values(double s, int levels) {
    std::vector<double> out{0.0};
    for (int j = 0; j <= levels; ++j) {
        const double v = std::pow(s, -j);
        out.push_back(v);
        out.push_back(-v);
    }
    return out;
}

ProbeFamily ProbeFamily::build(int n, const ProbeConfig& config) {
    if (n < 1) throw UsageError("probe family: dimension must be positive");
    if (config.support_cap < 0 || config.random_count < 0) throw UsageError("probe family: caps must be non-negative");
    if (!(config.s > 1.0)) throw UsageError("probe family: grid ratio must exceed 1");
    ProbeFamily fam;
    Rng rng(mix_seed(config.seed, 0x70726f62));
    const int cap = std::min(n, config.support_cap);

    // (i) sign vectors
    if (sign_probe_count(n, cap) <= config.sign_probe_limit) {
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
            const int k = std::popcount(mask);
            if (k > cap) continue;
            for (std::uint64_t signs = 0; signs < (std::uint64_t{1} << (k - 1)); ++signs) {
                Vector c = Vector::Zero(n);
                int pos = 0;
                for (int i = 0; i < n; ++i) {
                    if (!((mask >> i) & 1U)) continue;
                    c[i] = pos > 0 && ((signs >> (pos - 1)) & 1U) ? -1.0 : 1.0;
                    ++pos;
                }
                fam.probes_.push_back(std::move(c));
            }
        }
    } else {
        for (std::size_t t = 0; t < config.sign_probe_limit; ++t) {
            Vector c = Vector::Zero(n);
            const int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(cap)));
            for (int placed = 0; placed < k;) {
                const auto i = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n)));
                if (c[i] != 0.0) continue;
                c[i] = rng.sign();
                ++placed;
            }
            fam.probes_.push_back(std::move(c));
        }
    }

    // (ii) layered vectors: deterministic staircases, then random band assignments
    for (int sgn = 0; sgn < 2; ++sgn) {
        Vector up(n), down(n);
        for (int i = 0; i < n; ++i) {
            const double sign = sgn == 1 && (i % 2 == 1) ? -1.0 : 1.0;
            down[i] = sign * std::pow(config.s, -(i % (config.levels + 1)));
            up[i] = sign * std::pow(config.s, -((n - 1 - i) % (config.levels + 1)));
        }
        fam.probes_.push_back(std::move(down));
        fam.probes_.push_back(std::move(up));
    }
    for (int t = 0; t < config.random_count; ++t) {
        Vector c = Vector::Zero(n);
        const int depth = static_cast<int>(rng.below(static_cast<std::uint64_t>(config.levels + 1)));
        for (int i = 0; i < n; ++i) {
            const auto level = static_cast<int>(rng.below(static_cast<std::uint64_t>(depth + 2)));
            if (level <= depth) c[i] = rng.sign() * std::pow(config.s, -level);
        }
        if (c.cwiseAbs().maxCoeff() == 0.0) c[0] = 1.0;
        fam.probes_.push_back(std::move(c));
    }

    // (iii) uniform vectors
    for (int t = 0; t < config.random_count; ++t) {
        Vector c(n);
        for (int i = 0; i < n; ++i) c[i] = rng.uniform(-1.0, 1.0);
        fam.probes_.push_back(std::move(c));
    }
    return fam;
}

void ProbeFamily::add(Vector coef) {
    if (!probes_.empty() && coef.size() != probes_.front().size()) {
        throw UsageError("probe family: imported probe has the wrong dimension");
    }
    if (!coef.allFinite()) throw UsageError("probe family: non-finite probe");
    probes_.push_back(std::move(coef));
}

ProbeFamily ProbeFamily::snapped_to_grid(double s, int levels) const {
    const auto values = grid_values(s, levels);
    ProbeFamily out;
    std::set<Vector, VectorLess> seen;
    for (const auto& p : probes_) {
        Vector c(p.size());
        for (Eigen::Index i = 0; i < p.size(); ++i) {
            double best = values.front();
            for (double v : values) {
                if (std::abs(v - p[i]) < std::abs(best - p[i])) best = v;
            }
            c[i] = best;
        }
        if (c.cwiseAbs().maxCoeff() == 0.0) continue;
        if (seen.insert(c).second) out.probes_.push_back(std::move(c));
    }
    return out;
}

}  // namespace greedylab
