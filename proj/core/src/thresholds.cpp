#include "greedylab/thresholds.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>

#include "greedylab/errors.hpp"
#include "greedylab/parallel.hpp"
#include "greedylab/rng.hpp"

namespace greedylab {

ThresholdGrid::ThresholdGrid(double s, int K) : s_(s), K_(K) {
    if (!(s > 1.0) || !std::isfinite(s)) throw UsageError("threshold grid: ratio s must exceed 1");
    if (K < 1) throw UsageError("threshold grid: K must be at least 1");
    for (int k = 1; k <= K; ++k) points_.push_back(std::pow(s, -k));
}

double ThresholdGrid::point(int k) const {
    if (k < 1 || k > K_) throw UsageError("threshold grid: index out of range");
    return points_[static_cast<std::size_t>(k - 1)];
}

int ThresholdGrid::index_at_or_below(double a) const {
    for (int k = 1; k <= K_; ++k) {
        if (points_[static_cast<std::size_t>(k - 1)] <= a) return k;
    }
    return K_;
}

std::string to_string(ThresholdFunction f) {
    switch (f) {
        case ThresholdFunction::lambda: return "lambda";
        case ThresholdFunction::theta: return "theta";
        case ThresholdFunction::phi: return "phi";
    }
    return "unknown";
}

ThresholdFunction threshold_function_from_string(std::string_view name) {
    if (name == "lambda") return ThresholdFunction::lambda;
    if (name == "theta") return ThresholdFunction::theta;
    if (name == "phi") return ThresholdFunction::phi;
    throw UsageError("unknown threshold function '" + std::string(name) + "'");
}

bool FunctionTable::exhaustive_grid() const {
    return !raw.empty() && std::all_of(raw.begin(), raw.end(), [](const EstimateValue& e) { return e.exhaustive_grid; });
}

const FunctionTable& ThresholdTables::get(ThresholdFunction f) const {
    switch (f) {
        case ThresholdFunction::lambda: return lambda;
        case ThresholdFunction::theta: return theta;
        case ThresholdFunction::phi: return phi;
    }
    return lambda;
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct EntryBest {
    double value = kNegInf;
    std::uint64_t key = 0;
    IndexSet B;

    void offer(double v, std::uint64_t k, const IndexSet* set = nullptr) {
        if (v > value || (v == value && k < key)) {
            value = v;
            key = k;
            if (set) B = *set;
        }
    }
};

struct TableBest {
    std::vector<EntryBest> lam, th, ph;
    explicit TableBest(std::size_t K = 0) : lam(K), th(K), ph(K) {}

    void merge(const TableBest& other) {
        for (std::size_t t = 0; t < lam.size(); ++t) {
            lam[t].offer(other.lam[t].value, other.lam[t].key, &other.lam[t].B);
            th[t].offer(other.th[t].value, other.th[t].key, &other.th[t].B);
            ph[t].offer(other.ph[t].value, other.ph[t].key, &other.ph[t].B);
        }
    }
};

// Evaluates lambda/theta/phi ratios of one coefficient vector at every grid point.
class Kernel {
public:
    Kernel(const BasisSystem& basis, const std::vector<double>& points) : basis_(basis), points_(points) {}

    void run(const Vector& c, std::uint64_t key, TableBest& best) {
        const QuasiNorm& space = basis_.space();
        const Matrix& X = basis_.vectors();
        const int n = basis_.size();
        const std::size_t K = points_.size();
        acc_.noalias() = X * c;
        const double fn = space.norm(acc_);
        if (!(fn > 0.0)) return;

        supp_.clear();
        for (int i = 0; i < n; ++i) {
            if (c[i] != 0.0) supp_.push_back(i);
        }
        const int k = static_cast<int>(supp_.size());
        auto global_set = [&](std::uint64_t local) {
            IndexSet out;
            for (std::uint64_t r = local; r != 0; r &= r - 1) out.push_back(supp_[static_cast<std::size_t>(std::countr_zero(r))]);
            return out;
        };
        auto threshold_mask = [&](double a) {
            std::uint64_t mask = 0;
            for (int j = 0; j < k; ++j) {
                if (std::abs(c[supp_[static_cast<std::size_t>(j)]]) >= a) mask |= std::uint64_t{1} << j;
            }
            return mask;
        };
        auto lambda_ratio = [&](std::uint64_t mask) {
            if (mask == 0) return 0.0;
            double mn = std::numeric_limits<double>::infinity();
            for (std::uint64_t r = mask; r != 0; r &= r - 1) {
                mn = std::min(mn, std::abs(c[supp_[static_cast<std::size_t>(std::countr_zero(r))]]));
            }
            flat_.setZero(n);
            for (std::uint64_t r = mask; r != 0; r &= r - 1) {
                const int j = supp_[static_cast<std::size_t>(std::countr_zero(r))];
                flat_[j] = c[j] > 0 ? mn : -mn;
            }
            acc_.noalias() = X * flat_;
            return space.norm(acc_) / fn;
        };

        if (k <= 14) {
            const std::size_t subsets = std::size_t{1} << k;
            val_.assign(subsets, 0.0);
            minmag_.assign(subsets, std::numeric_limits<double>::infinity());
            acc_.setZero(X.rows());
            std::uint64_t g = 0;
            for (std::uint64_t i = 1; i < subsets; ++i) {
                const int bit = std::countr_zero(i);
                g ^= std::uint64_t{1} << bit;
                const int j = supp_[static_cast<std::size_t>(bit)];
                if ((g >> bit) & 1U) {
                    acc_ += c[j] * X.col(j);
                } else {
                    acc_ -= c[j] * X.col(j);
                }
                val_[g] = space.norm(acc_) / fn;
            }
            for (std::uint64_t mask = 1; mask < subsets; ++mask) {
                const int low = std::countr_zero(mask);
                minmag_[mask] = std::min(minmag_[mask & (mask - 1)], std::abs(c[supp_[static_cast<std::size_t>(low)]]));
            }
            // level_best[t]: best val over B whose smallest magnitude first clears a_t.
            level_best_.assign(K, kNegInf);
            level_arg_.assign(K, 0);
            for (std::uint64_t mask = 1; mask < subsets; ++mask) {
                std::size_t t0 = K;
                for (std::size_t t = 0; t < K; ++t) {
                    if (minmag_[mask] >= points_[t]) {
                        t0 = t;
                        break;
                    }
                }
                if (t0 < K && val_[mask] > level_best_[t0]) {
                    level_best_[t0] = val_[mask];
                    level_arg_[t0] = mask;
                }
            }
            double run_best = 0.0;
            std::uint64_t run_arg = 0;
            std::uint64_t cached_mask = ~std::uint64_t{0};
            double cached_lambda = 0.0;
            for (std::size_t t = 0; t < K; ++t) {
                if (level_best_[t] > run_best) {
                    run_best = level_best_[t];
                    run_arg = level_arg_[t];
                }
                const std::uint64_t A = threshold_mask(points_[t]);
                if (A != cached_mask) {
                    cached_lambda = lambda_ratio(A);
                    cached_mask = A;
                }
                const IndexSet Aset = global_set(A);
                best.th[t].offer(val_[A], key, &Aset);
                best.lam[t].offer(cached_lambda, key, &Aset);
                if (run_best > best.ph[t].value || (run_best == best.ph[t].value && key < best.ph[t].key)) {
                    const IndexSet Bset = global_set(run_arg);
                    best.ph[t].offer(run_best, key, &Bset);
                }
            }
            return;
        }

        // Wide supports: phi's inner sup runs over the nested threshold sets
        // and a few seeded subsets of them.
        Rng rng(mix_seed(key, 0x7468));
        double run_best = 0.0;
        IndexSet run_arg;
        for (std::size_t t = 0; t < K; ++t) {
            const IndexSet A = coef::threshold_set(c, points_[t]);
            const double th = A.empty() ? 0.0 : space.norm(X * coef::restrict_to(c, A)) / fn;
            const double lam = A.empty() ? 0.0 : space.norm(X * coef::flatten_on(c, A)) / fn;
            best.th[t].offer(th, key, &A);
            best.lam[t].offer(lam, key, &A);
            if (th > run_best) {
                run_best = th;
                run_arg = A;
            }
            for (int draw = 0; draw < 32 && !A.empty(); ++draw) {
                IndexSet B;
                for (int j : A) {
                    if (rng.uniform() < 0.5) B.push_back(j);
                }
                if (B.empty()) continue;
                const double v = space.norm(X * coef::restrict_to(c, B)) / fn;
                if (v > run_best) {
                    run_best = v;
                    run_arg = B;
                }
            }
            best.ph[t].offer(run_best, key, &run_arg);
        }
    }

private:
    const BasisSystem& basis_;
    const std::vector<double>& points_;
    Vector acc_, flat_;
    std::vector<int> supp_;
    std::vector<double> val_, minmag_, level_best_;
    std::vector<std::uint64_t> level_arg_;
};

std::uint64_t power(std::uint64_t base, int e) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

// Coefficient vector number `index` of V^n, coordinate 0 most significant.
void decode_grid_vector(std::uint64_t index, const std::vector<double>& values, Vector& c) {
    const auto L = static_cast<std::uint64_t>(values.size());
    for (Eigen::Index i = c.size() - 1; i >= 0; --i) {
        c[i] = values[index % L];
        index /= L;
    }
}

bool first_nonzero_negative(const Vector& c) {
    for (Eigen::Index i = 0; i < c.size(); ++i) {
        if (c[i] != 0.0) return c[i] < 0.0;
    }
    return false;
}

void check_oracle_caps(const BasisSystem& basis, int levels, const GridOracleLimits& limits) {
    if (levels < 0) throw UsageError("grid oracle: levels must be non-negative");
    if (basis.size() > limits.dim_cap) {
        throw CapacityError("oracle_dim_cap", "exhaustive grid oracle needs n <= " + std::to_string(limits.dim_cap) +
                                                  ", got " + std::to_string(basis.size()));
    }
    if (std::pow(2.0 * levels + 3.0, basis.size()) > limits.work_cap) {
        throw CapacityError("grid_work_cap", "exhaustive grid oracle: |V|^n exceeds the work cap");
    }
    if (levels > limits.levels_cap) {
        throw CapacityError("levels_cap", "exhaustive grid oracle needs levels <= " +
                                              std::to_string(limits.levels_cap) + ", got " + std::to_string(levels));
    }
}

// Runs the kernel over every grid vector; blocks are fixed by the two leading
// coordinates so the reduction order never depends on the thread count.
TableBest enumerate_grid(const BasisSystem& basis, const std::vector<double>& points, const std::vector<double>& values) {
    const int n = basis.size();
    const std::size_t K = points.size();
    const auto L = static_cast<std::uint64_t>(values.size());
    const int lead = std::min(n, 2);
    const std::uint64_t blocks = power(L, lead);
    const std::uint64_t per_block = power(L, n - lead);
    std::vector<TableBest> parts(blocks, TableBest(K));
    parallel_for(blocks, [&](std::size_t b) {
        Kernel kernel(basis, points);
        TableBest local(K);
        Vector c(n);
        for (std::uint64_t i = 0; i < per_block; ++i) {
            const std::uint64_t index = b * per_block + i;
            decode_grid_vector(index, values, c);
            if (first_nonzero_negative(c)) continue;
            kernel.run(c, index, local);
        }
        parts[b] = std::move(local);
    });
    TableBest total(K);
    for (const auto& p : parts) total.merge(p);
    return total;
}

FunctionTable build_table(ThresholdFunction f, const ThresholdGrid& grid, const std::vector<EntryBest>& best,
                          const std::function<Vector(std::uint64_t)>& key_to_coef, bool exhaustive) {
    FunctionTable table;
    table.func = f;
    table.grid = grid;
    for (std::size_t t = 0; t < best.size(); ++t) {
        EstimateValue e;
        e.mode = EstimateMode::lower_bound;
        e.exhaustive_grid = exhaustive;
        e.value = best[t].value == kNegInf ? 0.0 : best[t].value;
        if (best[t].value != kNegInf) {
            e.witness.coef = key_to_coef(best[t].key);
            e.witness.B = best[t].B;
        }
        e.witness.a = grid.points()[t];
        table.raw.push_back(std::move(e));
    }
    return monotone_envelope(std::move(table));
}

ThresholdTables assemble(const ThresholdGrid& grid, const TableBest& best,
                         const std::function<Vector(std::uint64_t)>& key_to_coef, bool exhaustive) {
    return ThresholdTables{build_table(ThresholdFunction::lambda, grid, best.lam, key_to_coef, exhaustive),
                           build_table(ThresholdFunction::theta, grid, best.th, key_to_coef, exhaustive),
                           build_table(ThresholdFunction::phi, grid, best.ph, key_to_coef, exhaustive)};
}

}  // namespace

ThresholdTables exact_grid_oracle(const BasisSystem& basis, const ThresholdGrid& grid, int levels,
                                  const GridOracleLimits& limits) {
    check_oracle_caps(basis, levels, limits);
    if (levels < grid.K() + 1) {
        throw UsageError("grid oracle: levels must be at least K + 1 (K=" + std::to_string(grid.K()) + ")");
    }
    const auto values = grid_values(grid.s(), levels);
    const TableBest best = enumerate_grid(basis, grid.points(), values);
    const int n = basis.size();
    return assemble(grid, best, [&](std::uint64_t key) {
        Vector c(n);
        decode_grid_vector(key, values, c);
        return c;
    }, true);
}

FunctionTable exact_grid_oracle(const BasisSystem& basis, ThresholdFunction f, const ThresholdGrid& grid, int levels,
                                const GridOracleLimits& limits) {
    return exact_grid_oracle(basis, grid, levels, limits).get(f);
}

ThresholdTables probe_estimate(const BasisSystem& basis, const ThresholdGrid& grid, const ProbeFamily& probes) {
    if (probes.empty()) throw UsageError("probe_estimate: empty probe family");
    const auto& list = probes.probes();
    const std::size_t K = grid.points().size();
    constexpr std::size_t kChunk = 64;
    const std::size_t chunks = (list.size() + kChunk - 1) / kChunk;
    std::vector<TableBest> parts(chunks, TableBest(K));
    parallel_for(chunks, [&](std::size_t ch) {
        Kernel kernel(basis, grid.points());
        TableBest local(K);
        for (std::size_t i = ch * kChunk; i < std::min(list.size(), (ch + 1) * kChunk); ++i) {
            if (list[i].size() != basis.size()) throw UsageError("probe_estimate: probe dimension mismatch");
            kernel.run(list[i], i, local);
        }
        parts[ch] = std::move(local);
    });
    TableBest total(K);
    for (const auto& p : parts) total.merge(p);
    return assemble(grid, total, [&](std::uint64_t key) { return list[key]; }, false);
}

FunctionTable probe_estimate(const BasisSystem& basis, ThresholdFunction f, const ThresholdGrid& grid,
                             const ProbeFamily& probes) {
    return probe_estimate(basis, grid, probes).get(f);
}

FunctionTable monotone_envelope(FunctionTable table) {
    table.envelope.assign(table.raw.size(), 0.0);
    double running = kNegInf;
    for (std::size_t k = 0; k < table.raw.size(); ++k) {
        running = std::max(running, table.raw[k].value);
        table.envelope[k] = running;
    }
    return table;
}

EstimateValue succ_from_lambda(const FunctionTable& lambda_table) {
    if (lambda_table.func != ThresholdFunction::lambda) throw UsageError("succ_from_lambda: table is not lambda");
    if (lambda_table.raw.empty()) throw UsageError("succ_from_lambda: empty table");
    EstimateValue e = lambda_table.raw.front();
    e.value = lambda_table.envelope.front();
    e.mode = EstimateMode::lower_bound;
    return e;
}

double reevaluate(const BasisSystem& basis, ThresholdFunction f, const Witness& w) {
    const QuasiNorm& space = basis.space();
    const double fn = space.norm(synthesize(basis, w.coef));
    const IndexSet A = coef::threshold_set(w.coef, w.a);
    switch (f) {
        case ThresholdFunction::lambda: return space.norm(synthesize(basis, coef::flatten_on(w.coef, A))) / fn;
        case ThresholdFunction::theta: return space.norm(synthesize(basis, coef::restrict_to(w.coef, A))) / fn;
        case ThresholdFunction::phi: {
            if (!std::includes(A.begin(), A.end(), w.B.begin(), w.B.end())) {
                throw UsageError("phi witness: set is not contained in the threshold set");
            }
            return space.norm(synthesize(basis, coef::restrict_to(w.coef, w.B))) / fn;
        }
    }
    return 0.0;
}

EstimateValue compute_c_u(const BasisSystem& basis, double s, int levels, const GridOracleLimits& limits) {
    check_oracle_caps(basis, levels, limits);
    if (!(s > 1.0)) throw UsageError("compute_c_u: grid ratio must exceed 1");
    const int n = basis.size();
    const QuasiNorm& space = basis.space();
    const Matrix& X = basis.vectors();
    const auto values = grid_values(s, levels);
    const auto L = static_cast<std::uint64_t>(values.size());
    const std::size_t subsets = std::size_t{1} << n;

    // numer[A]: best ||sum a_n x_n|| over grid vectors with support exactly A.
    const int lead = std::min(n, 2);
    const std::uint64_t blocks = power(L, lead);
    const std::uint64_t per_block = power(L, n - lead);
    std::vector<std::vector<EntryBest>> parts(blocks);
    parallel_for(blocks, [&](std::size_t b) {
        std::vector<EntryBest> local(subsets);
        Vector c(n), acc(X.rows());
        for (std::uint64_t i = 0; i < per_block; ++i) {
            const std::uint64_t index = b * per_block + i;
            decode_grid_vector(index, values, c);
            if (first_nonzero_negative(c)) continue;
            std::size_t mask = 0;
            for (int j = 0; j < n; ++j) {
                if (c[j] != 0.0) mask |= std::size_t{1} << j;
            }
            if (mask == 0) continue;
            acc.noalias() = X * c;
            local[mask].offer(space.norm(acc), index);
        }
        parts[b] = std::move(local);
    });
    std::vector<EntryBest> numer(subsets);
    for (const auto& p : parts) {
        for (std::size_t m = 0; m < subsets; ++m) numer[m].offer(p[m].value, p[m].key);
    }
    // Grid vectors supported inside A also count for A.
    for (std::size_t mask = 1; mask < subsets; ++mask) {
        for (std::size_t r = mask; r != 0; r &= r - 1) {
            const std::size_t sub = mask & ~(r & (~r + 1));
            if (sub != 0) numer[mask].offer(numer[sub].value, numer[sub].key);
        }
    }
    double best = kNegInf;
    std::size_t best_mask = 0;
    std::vector<int> best_signs;
    for (std::size_t mask = 1; mask < subsets; ++mask) {
        const IndexSet A = [&] {
            IndexSet out;
            for (std::size_t r = mask; r != 0; r &= r - 1) out.push_back(std::countr_zero(r));
            return out;
        }();
        const int k = static_cast<int>(A.size());
        double denom = std::numeric_limits<double>::infinity();
        std::vector<int> arg;
        for (std::uint64_t sg = 0; sg < (std::uint64_t{1} << (k - 1)); ++sg) {
            SignedSet set{A, std::vector<int>(static_cast<std::size_t>(k), 1)};
            for (int i = 1; i < k; ++i) {
                if ((sg >> (i - 1)) & 1U) set.signs[static_cast<std::size_t>(i)] = -1;
            }
            const double v = space.norm(indicator(basis, set));
            if (v < denom) {
                denom = v;
                arg = set.signs;
            }
        }
        const double r = numer[mask].value / denom;
        if (r > best) {
            best = r;
            best_mask = mask;
            best_signs = arg;
        }
    }
    EstimateValue e;
    e.mode = EstimateMode::lower_bound;
    e.exhaustive_grid = true;
    for (std::size_t r = best_mask; r != 0; r &= r - 1) e.witness.A.push_back(std::countr_zero(r));
    e.witness.signs = best_signs;
    e.witness.coef = Vector(n);
    decode_grid_vector(numer[best_mask].key, values, e.witness.coef);
    e.value = reevaluate_c_u(basis, e.witness);
    return e;
}

double reevaluate_c_u(const BasisSystem& basis, const Witness& w) {
    for (Eigen::Index i = 0; i < w.coef.size(); ++i) {
        if (w.coef[i] != 0.0 && !std::binary_search(w.A.begin(), w.A.end(), static_cast<int>(i))) {
            throw UsageError("C_u witness: coefficients leave the set A");
        }
    }
    const QuasiNorm& space = basis.space();
    return space.norm(synthesize(basis, w.coef)) / space.norm(indicator(basis, SignedSet{w.A, w.signs}));
}

}  // namespace greedylab
