#include "greedylab/parameters.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>

#include "greedylab/errors.hpp"
#include "greedylab/parallel.hpp"
#include "greedylab/rng.hpp"

namespace greedylab {

std::string to_string(EstimateMode mode) {
    switch (mode) {
        case EstimateMode::exact: return "exact";
        case EstimateMode::lower_bound: return "lower_bound";
        case EstimateMode::upper_bound: return "upper_bound";
    }
    return "unknown";
}

bool ParamTable::exact() const {
    return std::all_of(entries.begin(), entries.end(),
                       [](const EstimateValue& e) { return e.mode == EstimateMode::exact; });
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kPosInf = std::numeric_limits<double>::infinity();

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

IndexSet mask_to_set(std::uint64_t mask) {
    IndexSet out;
    while (mask != 0) {
        out.push_back(std::countr_zero(mask));
        mask &= mask - 1;
    }
    return out;
}

IndexSet random_subset(Rng& rng, int n, int k) {
    std::vector<int> pool(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
    for (int i = 0; i < k; ++i) {
        const auto j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - i)));
        std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
    }
    IndexSet out(pool.begin(), pool.begin() + k);
    std::sort(out.begin(), out.end());
    return out;
}

double indicator_norm(const BasisSystem& basis, const IndexSet& A) {
    return basis.space().norm(indicator(basis, A));
}

Vector ambient_of(const BasisSystem& basis, const Witness& w) {
    return w.ambient.size() > 0 ? w.ambient : synthesize(basis, w.coef);
}

// Champion with deterministic tie-breaking on a totally ordered key.
template <typename Key>
struct Champion {
    double value = kNegInf;
    Key key{};
    bool set = false;

    bool offer_max(double v, const Key& k) {
        if (!set || v > value || (v == value && k < key)) {
            value = v;
            key = k;
            set = true;
            return true;
        }
        return false;
    }
    bool offer_min(double v, const Key& k) {
        if (!set || v < value || (v == value && k < key)) {
            value = v;
            key = k;
            set = true;
            return true;
        }
        return false;
    }
};

// Running maximum over m of per-cardinality champions.
std::vector<EstimateValue> running_max(std::vector<EstimateValue> per_size) {
    for (std::size_t k = 1; k < per_size.size(); ++k) {
        if (per_size[k - 1].value > per_size[k].value) {
            const int m = per_size[k].witness.m;
            per_size[k].value = per_size[k - 1].value;
            per_size[k].witness = per_size[k - 1].witness;
            per_size[k].witness.m = m;
        }
    }
    return per_size;
}

}  // namespace

int resolve_m_max(const BasisSystem& basis, int m_max) {
    if (m_max < 0 || m_max > basis.size()) {
        throw UsageError("m_max must lie in [0, " + std::to_string(basis.size()) + "], got " +
                         std::to_string(m_max));
    }
    return m_max == 0 ? basis.size() : m_max;
}

SubsetNormExtremes subset_norm_extremes(const BasisSystem& basis, int m_max, const EnumerationLimits& limits) {
    m_max = resolve_m_max(basis, m_max);
    const int n = basis.size();
    bool enumerable = n <= limits.subset_dim_cap;
    for (int m = 1; m <= m_max && enumerable; ++m) {
        if (binomial(n, m) > static_cast<double>(limits.subset_cap)) enumerable = false;
    }
    if (!enumerable && limits.require_exact) {
        throw CapacityError("subset_cap", "exact subset enumeration for n=" + std::to_string(n) +
                                              " exceeds subset_cap/subset_dim_cap");
    }

    SubsetNormExtremes out;
    out.exact = enumerable;
    const auto slots = static_cast<std::size_t>(m_max + 1);
    const QuasiNorm& space = basis.space();
    const Matrix& X = basis.vectors();

    if (enumerable) {
        const int low = std::min(n, 14);
        const std::uint64_t blocks = std::uint64_t{1} << (n - low);
        struct Partial {
            std::vector<Champion<std::uint64_t>> hi, lo;
        };
        std::vector<Partial> parts(blocks);
        parallel_for(blocks, [&](std::size_t h) {
            Partial part{std::vector<Champion<std::uint64_t>>(slots), std::vector<Champion<std::uint64_t>>(slots)};
            const int hsize = std::popcount(static_cast<std::uint64_t>(h));
            if (hsize <= m_max) {
                Vector acc = Vector::Zero(n);
                for (int j = 0; j < n - low; ++j) {
                    if ((h >> j) & 1U) acc += X.col(low + j);
                }
                std::uint64_t g = 0;
                for (std::uint64_t i = 0; i < (std::uint64_t{1} << low); ++i) {
                    if (i > 0) {
                        const int bit = std::countr_zero(i);
                        g ^= std::uint64_t{1} << bit;
                        if ((g >> bit) & 1U) {
                            acc += X.col(bit);
                        } else {
                            acc -= X.col(bit);
                        }
                    }
                    const int k = hsize + std::popcount(g);
                    if (k == 0 || k > m_max) continue;
                    const double v = space.norm(acc);
                    const std::uint64_t mask = (static_cast<std::uint64_t>(h) << low) | g;
                    part.hi[static_cast<std::size_t>(k)].offer_max(v, mask);
                    part.lo[static_cast<std::size_t>(k)].offer_min(v, mask);
                }
            }
            parts[h] = std::move(part);
        });
        std::vector<Champion<std::uint64_t>> hi(slots), lo(slots);
        for (const auto& part : parts) {
            for (std::size_t k = 1; k < slots; ++k) {
                if (part.hi[k].set) hi[k].offer_max(part.hi[k].value, part.hi[k].key);
                if (part.lo[k].set) lo[k].offer_min(part.lo[k].value, part.lo[k].key);
            }
        }
        for (std::size_t k = 1; k < slots; ++k) {
            out.max_set.push_back(mask_to_set(hi[k].key));
            out.min_set.push_back(mask_to_set(lo[k].key));
        }
    } else {
        Rng rng(mix_seed(limits.seed, 0x73756273));
        for (int m = 1; m <= m_max; ++m) {
            Champion<IndexSet> hi, lo;
            auto offer = [&](const IndexSet& A) {
                const double v = indicator_norm(basis, A);
                hi.offer_max(v, A);
                lo.offer_min(v, A);
            };
            IndexSet head(static_cast<std::size_t>(m)), tail(static_cast<std::size_t>(m));
            for (int i = 0; i < m; ++i) {
                head[static_cast<std::size_t>(i)] = i;
                tail[static_cast<std::size_t>(i)] = n - m + i;
            }
            offer(head);
            offer(tail);
            for (std::uint64_t t = 0; t < limits.sample_count; ++t) offer(random_subset(rng, n, m));
            out.max_set.push_back(hi.key);
            out.min_set.push_back(lo.key);
        }
    }
    for (std::size_t k = 0; k + 1 < slots; ++k) {
        out.max_value.push_back(indicator_norm(basis, out.max_set[k]));
        out.min_value.push_back(indicator_norm(basis, out.min_set[k]));
    }
    return out;
}

ParamTable fundamental_function(const BasisSystem& basis, int m_max, const EnumerationLimits& limits) {
    const auto ext = subset_norm_extremes(basis, m_max, limits);
    std::vector<EstimateValue> per_size;
    for (std::size_t k = 0; k < ext.max_value.size(); ++k) {
        EstimateValue e;
        e.value = ext.max_value[k];
        e.mode = ext.exact ? EstimateMode::exact : EstimateMode::lower_bound;
        e.witness.A = ext.max_set[k];
        e.witness.m = static_cast<int>(k + 1);
        per_size.push_back(std::move(e));
    }
    return ParamTable{std::string(param_id::fundamental), running_max(std::move(per_size))};
}

ParamTable democracy_parameter(const BasisSystem& basis, int m_max, const EnumerationLimits& limits) {
    const auto ext = subset_norm_extremes(basis, m_max, limits);
    std::vector<EstimateValue> per_size;
    for (std::size_t k = 0; k < ext.max_value.size(); ++k) {
        EstimateValue e;
        e.value = ext.max_value[k] / ext.min_value[k];
        e.mode = ext.exact ? EstimateMode::exact : EstimateMode::lower_bound;
        e.witness.A = ext.max_set[k];
        e.witness.B = ext.min_set[k];
        e.witness.m = static_cast<int>(k + 1);
        per_size.push_back(std::move(e));
    }
    return ParamTable{std::string(param_id::democracy), running_max(std::move(per_size))};
}

EstimateValue succ_constant(const BasisSystem& basis, int subset_cap, const EnumerationLimits& limits) {
    if (subset_cap < 1) throw UsageError("succ_constant: subset_cap must be positive");
    const int n = basis.size();
    const int cap = std::min(subset_cap, n);
    const QuasiNorm& space = basis.space();
    const Matrix& X = basis.vectors();
    EstimateValue result;
    result.witness.m = -1;

    auto finish = [&](IndexSet A, std::vector<int> signs, IndexSet B, EstimateMode mode) {
        result.witness.A = std::move(A);
        result.witness.signs = std::move(signs);
        result.witness.B = std::move(B);
        result.mode = mode;
        result.value = reevaluate(basis, param_id::succ, result.witness);
        return result;
    };

    if (n <= limits.succ_dim_cap) {
        std::uint64_t states = 1;
        for (int i = 0; i < n; ++i) states *= 3;
        std::vector<std::uint64_t> pow3(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) pow3[static_cast<std::size_t>(i)] = i == 0 ? 1 : pow3[static_cast<std::size_t>(i - 1)] * 3;
        std::vector<double> norm_of(states, 0.0);
        std::vector<std::uint8_t> size_of(states, 0);
        constexpr std::uint64_t kChunk = 4096;
        const std::uint64_t chunks = (states + kChunk - 1) / kChunk;
        parallel_for(chunks, [&](std::size_t ch) {
            Vector c(n);
            Vector acc(X.rows());
            for (std::uint64_t s = ch * kChunk; s < std::min(states, (ch + 1) * kChunk); ++s) {
                std::uint64_t t = s;
                int k = 0;
                for (int i = 0; i < n; ++i) {
                    const auto d = t % 3;
                    t /= 3;
                    c[i] = d == 1 ? 1.0 : (d == 2 ? -1.0 : 0.0);
                    k += d != 0;
                }
                size_of[s] = static_cast<std::uint8_t>(k);
                if (k == 0 || k > cap) continue;
                acc.noalias() = X * c;
                norm_of[s] = space.norm(acc);
            }
        });
        // best_sub[s]: max of ||1_{eps,B}|| over nonempty signed B contained in s.
        std::vector<double> best_sub(states, kNegInf);
        std::vector<std::uint64_t> arg_sub(states, 0);
        for (std::uint64_t s = 1; s < states; ++s) {
            if (size_of[s] > cap) continue;
            double best = norm_of[s];
            std::uint64_t arg = s;
            std::uint64_t t = s;
            for (int i = 0; i < n; ++i, t /= 3) {
                const auto d = t % 3;
                if (d == 0) continue;
                const std::uint64_t sub = s - d * pow3[static_cast<std::size_t>(i)];
                if (sub != 0 && best_sub[sub] > best) {
                    best = best_sub[sub];
                    arg = arg_sub[sub];
                }
            }
            best_sub[s] = best;
            arg_sub[s] = arg;
        }
        double best_ratio = kNegInf;
        std::uint64_t best_state = 0;
        for (std::uint64_t s = 1; s < states; ++s) {
            if (size_of[s] > cap) continue;
            std::uint64_t t = s;
            while (t % 3 == 0) t /= 3;
            if (t % 3 != 1) continue;  // first nonzero sign is +1; -eps gives the same ratio
            const double r = best_sub[s] / norm_of[s];
            if (r > best_ratio) {
                best_ratio = r;
                best_state = s;
            }
        }
        auto decode = [&](std::uint64_t s, IndexSet& idx, std::vector<int>* signs) {
            for (int i = 0; i < n; ++i, s /= 3) {
                const auto d = s % 3;
                if (d == 0) continue;
                idx.push_back(i);
                if (signs) signs->push_back(d == 1 ? 1 : -1);
            }
        };
        IndexSet A, B;
        std::vector<int> signs;
        decode(best_state, A, &signs);
        decode(arg_sub[best_state], B, nullptr);
        return finish(std::move(A), std::move(signs), std::move(B),
                      cap == n ? EstimateMode::exact : EstimateMode::lower_bound);
    }

    if (limits.require_exact) {
        throw CapacityError("succ_dim_cap", "exact signed-set enumeration needs n <= " +
                                                std::to_string(limits.succ_dim_cap) + ", got " + std::to_string(n));
    }
    Rng rng(mix_seed(limits.seed, 0x73756363));
    const int sample_cap = std::min(cap, 12);
    double best_ratio = kNegInf;
    IndexSet best_A, best_B;
    std::vector<int> best_signs;
    auto examine = [&](const IndexSet& A, const std::vector<int>& signs) {
        const int k = static_cast<int>(A.size());
        Vector acc = Vector::Zero(X.rows());
        for (int i = 0; i < k; ++i) acc += signs[static_cast<std::size_t>(i)] * X.col(A[static_cast<std::size_t>(i)]);
        const double denom = space.norm(acc);
        acc.setZero();
        std::uint64_t g = 0;
        for (std::uint64_t i = 1; i < (std::uint64_t{1} << k); ++i) {
            const int bit = std::countr_zero(i);
            g ^= std::uint64_t{1} << bit;
            const double sign = ((g >> bit) & 1U) ? 1.0 : -1.0;
            acc += sign * signs[static_cast<std::size_t>(bit)] * X.col(A[static_cast<std::size_t>(bit)]);
            const double r = space.norm(acc) / denom;
            if (r > best_ratio) {
                best_ratio = r;
                best_A = A;
                best_signs = signs;
                best_B.clear();
                for (int j = 0; j < k; ++j) {
                    if ((g >> j) & 1U) best_B.push_back(A[static_cast<std::size_t>(j)]);
                }
            }
        }
    };
    for (int k = 1; k <= sample_cap; ++k) {
        IndexSet head(static_cast<std::size_t>(k));
        std::vector<int> plus(static_cast<std::size_t>(k), 1), alt(static_cast<std::size_t>(k), 1);
        for (int i = 0; i < k; ++i) {
            head[static_cast<std::size_t>(i)] = i;
            if (i % 2 == 1) alt[static_cast<std::size_t>(i)] = -1;
        }
        examine(head, plus);
        examine(head, alt);
    }
    for (std::uint64_t t = 0; t < limits.sample_count; ++t) {
        const int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(sample_cap)));
        IndexSet A = random_subset(rng, n, k);
        std::vector<int> signs(static_cast<std::size_t>(k), 1);
        for (int i = 1; i < k; ++i) signs[static_cast<std::size_t>(i)] = rng.sign() > 0 ? 1 : -1;
        examine(A, signs);
    }
    return finish(std::move(best_A), std::move(best_signs), std::move(best_B), EstimateMode::lower_bound);
}

ParamTable unconditionality_constants(const BasisSystem& basis, int m_max, const ProbeFamily& probes,
                                      const EnumerationLimits& limits) {
    m_max = resolve_m_max(basis, m_max);
    const int n = basis.size();
    const QuasiNorm& space = basis.space();
    const Matrix& X = basis.vectors();
    const auto slots = static_cast<std::size_t>(m_max + 1);

    // A diagonal basis of a solid quasi-norm: every S_A is a contraction and S_{0} fixes x_0.
    if (basis.is_diagonal() && space.is_lattice()) {
        std::vector<EstimateValue> ones(static_cast<std::size_t>(m_max));
        for (int k = 1; k <= m_max; ++k) {
            auto& e = ones[static_cast<std::size_t>(k - 1)];
            e.mode = EstimateMode::exact;
            e.witness.A = {0};
            e.witness.ambient = X.col(0);
            e.witness.m = k;
            e.value = reevaluate(basis, param_id::unconditionality, e.witness);
        }
        return ParamTable{std::string(param_id::unconditionality), std::move(ones)};
    }

    std::vector<Vector> vertices;
    bool exact = space.is_polyhedral() && n <= limits.vertex_cap;
    std::string failed_cap = "vertex_cap";
    if (exact) {
        const QuasiNorm* lattice = &space;
        while (lattice->kind() == SpaceKind::linear_image) lattice = &lattice->base();
        const double vertex_count = lattice->p() == 1.0 ? 2.0 * n : std::ldexp(1.0, n);
        if (vertex_count * std::ldexp(1.0, n) > static_cast<double>(limits.vertex_work_cap)) {
            exact = false;
            failed_cap = "vertex_work_cap";
        } else {
            vertices = unit_ball_vertices(space, limits.vertex_cap);
        }
    }
    if (!exact && limits.require_exact) {
        throw CapacityError(failed_cap, "exact unconditionality constants need a polyhedral space with n <= " +
                                            std::to_string(limits.vertex_cap) + " within the vertex work cap");
    }

    std::vector<EstimateValue> per_size(static_cast<std::size_t>(m_max));
    if (exact) {
        using Key = std::pair<std::size_t, std::uint64_t>;
        std::vector<std::vector<Champion<Key>>> parts(vertices.size());
        parallel_for(vertices.size(), [&](std::size_t vi) {
            std::vector<Champion<Key>> best(slots);
            const Vector& v = vertices[vi];
            const Vector cv = basis.duals() * v;
            const double vnorm = space.norm(v);
            Vector acc = Vector::Zero(X.rows());
            std::uint64_t g = 0;
            for (std::uint64_t i = 1; i < (std::uint64_t{1} << n); ++i) {
                const int bit = std::countr_zero(i);
                g ^= std::uint64_t{1} << bit;
                if ((g >> bit) & 1U) {
                    acc += cv[bit] * X.col(bit);
                } else {
                    acc -= cv[bit] * X.col(bit);
                }
                const int k = std::popcount(g);
                if (k > m_max) continue;
                best[static_cast<std::size_t>(k)].offer_max(space.norm(acc) / vnorm, Key{vi, g});
            }
            parts[vi] = std::move(best);
        });
        std::vector<Champion<Key>> best(slots);
        for (const auto& part : parts) {
            for (std::size_t k = 1; k < slots; ++k) {
                if (part[k].set) best[k].offer_max(part[k].value, part[k].key);
            }
        }
        for (std::size_t k = 1; k < slots; ++k) {
            auto& e = per_size[k - 1];
            e.mode = EstimateMode::exact;
            e.witness.A = mask_to_set(best[k].key.second);
            e.witness.ambient = vertices[best[k].key.first];
            e.witness.m = static_cast<int>(k);
            e.value = reevaluate(basis, param_id::unconditionality, e.witness);
        }
        return ParamTable{std::string(param_id::unconditionality), running_max(std::move(per_size))};
    }

    if (probes.empty()) throw UsageError("unconditionality_constants: empty probe family");
    const auto& list = probes.probes();
    using Key = IndexSet;
    std::vector<std::vector<Champion<Key>>> parts(list.size());
    parallel_for(list.size(), [&](std::size_t pi) {
        std::vector<Champion<Key>> best(slots);
        const Vector& c = list[pi];
        const Vector f = X * c;
        const double fn = space.norm(f);
        if (fn > 0.0) {
            IndexSet supp;
            for (int i = 0; i < n; ++i) {
                if (c[i] != 0.0) supp.push_back(i);
            }
            const int k = static_cast<int>(supp.size());
            auto offer = [&](const IndexSet& A, double v) {
                const auto size = A.size();
                if (size == 0 || size > static_cast<std::size_t>(m_max)) return;
                best[size].offer_max(v, A);
            };
            if (k <= 14) {
                Vector acc = Vector::Zero(X.rows());
                std::uint64_t g = 0;
                for (std::uint64_t i = 1; i < (std::uint64_t{1} << k); ++i) {
                    const int bit = std::countr_zero(i);
                    g ^= std::uint64_t{1} << bit;
                    const int j = supp[static_cast<std::size_t>(bit)];
                    if ((g >> bit) & 1U) {
                        acc += c[j] * X.col(j);
                    } else {
                        acc -= c[j] * X.col(j);
                    }
                    if (std::popcount(g) > m_max) continue;
                    IndexSet A;
                    for (std::uint64_t r = g; r != 0; r &= r - 1) A.push_back(supp[static_cast<std::size_t>(std::countr_zero(r))]);
                    offer(A, space.norm(acc) / fn);
                }
            } else {
                Rng rng(mix_seed(limits.seed, 0x6b6d0000 + pi));
                for (std::uint64_t t = 0; t < 1024; ++t) {
                    const int size = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(std::min(k, m_max))));
                    IndexSet local = random_subset(rng, k, size);
                    IndexSet A;
                    for (int j : local) A.push_back(supp[static_cast<std::size_t>(j)]);
                    offer(A, space.norm(X * coef::restrict_to(c, A)) / fn);
                }
            }
        }
        parts[pi] = std::move(best);
    });
    std::vector<Champion<std::size_t>> best(slots);
    std::vector<IndexSet> best_set(slots);
    for (std::size_t pi = 0; pi < parts.size(); ++pi) {
        for (std::size_t k = 1; k < slots; ++k) {
            if (parts[pi][k].set && best[k].offer_max(parts[pi][k].value, pi)) best_set[k] = parts[pi][k].key;
        }
    }
    for (std::size_t k = 1; k < slots; ++k) {
        auto& e = per_size[k - 1];
        e.mode = EstimateMode::lower_bound;
        e.witness.m = static_cast<int>(k);
        if (!best[k].set) {
            // No probe has support of this size; S_A = Id on the span of x_0 bounds below by 1.
            e.witness.coef = Vector::Zero(n);
            e.witness.coef[0] = 1.0;
            e.witness.A = {0};
        } else {
            e.witness.coef = list[best[k].key];
            e.witness.A = best_set[k];
        }
        e.value = reevaluate(basis, param_id::unconditionality, e.witness);
    }
    return ParamTable{std::string(param_id::unconditionality), running_max(std::move(per_size))};
}

namespace {

EstimateValue greedy_probe_sup(const BasisSystem& basis, const ProbeFamily& probes, bool truncation) {
    if (probes.empty()) throw UsageError("greedy constant estimate: empty probe family");
    const auto id = truncation ? param_id::truncation_qg : param_id::quasi_greedy;
    const int n = basis.size();
    const QuasiNorm& space = basis.space();
    const Matrix& X = basis.vectors();
    const auto& list = probes.probes();
    struct Local {
        double value = kNegInf;
        int m = 0;
        IndexSet A;
    };
    std::vector<Local> parts(list.size());
    parallel_for(list.size(), [&](std::size_t pi) {
        Local best;
        const Vector& c = list[pi];
        const double fn = space.norm(X * c);
        if (fn > 0.0) {
            const int support = static_cast<int>((c.array() != 0.0).count());
            for (int m = 1; m <= support; ++m) {
                const auto sets = n <= 12 ? coef::all_greedy_sets(c, m)
                                          : std::vector<IndexSet>{coef::greedy_set(c, m).as_set()};
                for (const auto& A : sets) {
                    const Vector part = truncation ? coef::flatten_on(c, A) : coef::restrict_to(c, A);
                    const double v = space.norm(X * part) / fn;
                    if (v > best.value) best = Local{v, m, A};
                }
            }
        }
        parts[pi] = std::move(best);
    });
    std::size_t arg = list.size();
    double best = kNegInf;
    for (std::size_t pi = 0; pi < parts.size(); ++pi) {
        if (parts[pi].value > best) {
            best = parts[pi].value;
            arg = pi;
        }
    }
    if (arg == list.size()) throw UsageError("greedy constant estimate: all probes vanish");
    EstimateValue e;
    e.mode = EstimateMode::lower_bound;
    e.witness.coef = list[arg];
    e.witness.m = parts[arg].m;
    e.witness.A = parts[arg].A;
    e.value = reevaluate(basis, id, e.witness);
    return e;
}

}  // namespace

EstimateValue quasi_greedy_constant(const BasisSystem& basis, const ProbeFamily& probes) {
    return greedy_probe_sup(basis, probes, false);
}

EstimateValue truncation_qg_constant(const BasisSystem& basis, const ProbeFamily& probes) {
    return greedy_probe_sup(basis, probes, true);
}

double reevaluate(const BasisSystem& basis, std::string_view param, const Witness& w) {
    const QuasiNorm& space = basis.space();
    if (param == param_id::fundamental) return indicator_norm(basis, w.A);
    if (param == param_id::democracy) return indicator_norm(basis, w.A) / indicator_norm(basis, w.B);
    if (param == param_id::succ) {
        if (w.signs.size() != w.A.size()) throw UsageError("succ witness: signs do not match A");
        std::map<int, int> sign_of;
        for (std::size_t i = 0; i < w.A.size(); ++i) sign_of[w.A[i]] = w.signs[i];
        SignedSet B;
        for (int j : w.B) {
            const auto it = sign_of.find(j);
            if (it == sign_of.end()) throw UsageError("succ witness: B is not contained in A");
            B.indices.push_back(j);
            B.signs.push_back(it->second);
        }
        return space.norm(indicator(basis, B)) / space.norm(indicator(basis, SignedSet{w.A, w.signs}));
    }
    if (param == param_id::unconditionality) {
        const Vector f = ambient_of(basis, w);
        return space.norm(project(basis, f, w.A)) / space.norm(f);
    }
    if (param == param_id::quasi_greedy || param == param_id::truncation_qg) {
        const Vector part = param == param_id::quasi_greedy ? coef::restrict_to(w.coef, w.A) : coef::flatten_on(w.coef, w.A);
        return space.norm(synthesize(basis, part)) / space.norm(synthesize(basis, w.coef));
    }
    throw UsageError("reevaluate: unknown parameter '" + std::string(param) + "'");
}

std::vector<Vector> witness_probes(const BasisSystem& basis, const ParamTable& table) {
    std::vector<Vector> out;
    for (const auto& e : table.entries) {
        if (e.witness.coef.size() > 0) {
            out.push_back(e.witness.coef);
        } else if (e.witness.ambient.size() > 0) {
            out.push_back(coefficients(basis, e.witness.ambient));
        }
    }
    return out;
}

}  // namespace greedylab
