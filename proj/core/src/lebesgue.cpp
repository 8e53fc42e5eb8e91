#include "greedylab/lebesgue.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "greedylab/errors.hpp"
#include "greedylab/lp.hpp"
#include "greedylab/parallel.hpp"
#include "greedylab/rng.hpp"

namespace greedylab {

std::string to_string(SigmaMethod method) {
    switch (method) {
        case SigmaMethod::tail_norm: return "tail_norm";
        case SigmaMethod::polyhedral_lp: return "polyhedral_lp";
        case SigmaMethod::convex_descent: return "convex_descent";
        case SigmaMethod::concave_vertex: return "concave_vertex";
        case SigmaMethod::multistart_descent: return "multistart_descent";
    }
    return "unknown";
}

SigmaMethod sigma_method(const BasisSystem& basis) {
    const QuasiNorm& space = basis.space();
    if (space.is_lattice() && basis.is_diagonal()) return SigmaMethod::tail_norm;
    if (space.is_polyhedral()) return SigmaMethod::polyhedral_lp;
    const QuasiNorm* lattice = &space;
    while (lattice->kind() == SpaceKind::linear_image) lattice = &lattice->base();
    if (lattice->kind() == SpaceKind::lp && lattice->p() > 1.0 && std::isfinite(lattice->p())) {
        return SigmaMethod::convex_descent;
    }
    if (lattice->kind() == SpaceKind::lp && lattice->p() < 1.0) return SigmaMethod::concave_vertex;
    return SigmaMethod::multistart_descent;
}

namespace {

constexpr double kGolden = 0.6180339887498949;

std::vector<IndexSet> combinations(int n, int m) {
    std::vector<IndexSet> out;
    IndexSet cur(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) cur[static_cast<std::size_t>(i)] = i;
    while (true) {
        out.push_back(cur);
        int i = m - 1;
        while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - m + i) --i;
        if (i < 0) break;
        ++cur[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < m; ++j) cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Minimises t -> ||r - t col|| on [-R, R]; `scan` adds a coarse grid pass
// for non-convex quasi-norms.
double line_minimise(const QuasiNorm& space, const Vector& r, const Vector& col, double R, bool scan, Vector& work) {
    auto h = [&](double t) {
        work.noalias() = r - t * col;
        return space.norm(work);
    };
    double lo = -R, hi = R;
    if (scan) {
        constexpr int kSteps = 32;
        double best_t = 0.0, best_v = h(0.0);
        for (int i = 0; i <= kSteps; ++i) {
            const double t = -R + 2.0 * R * i / kSteps;
            const double v = h(t);
            if (v < best_v) {
                best_v = v;
                best_t = t;
            }
        }
        lo = std::max(-R, best_t - 2.0 * R / kSteps);
        hi = std::min(R, best_t + 2.0 * R / kSteps);
    }
    double x1 = hi - kGolden * (hi - lo), x2 = lo + kGolden * (hi - lo);
    double f1 = h(x1), f2 = h(x2);
    for (int it = 0; it < 200 && (hi - lo) > 1e-14 * std::max(1.0, R); ++it) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kGolden * (hi - lo);
            f1 = h(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kGolden * (hi - lo);
            f2 = h(x2);
        }
    }
    return f1 <= f2 ? x1 : x2;
}

// Cyclic coordinate descent from b; returns the final error.
double descend(const QuasiNorm& space, const Matrix& XB, const Vector& f, Vector& b, bool scan, double tolerance) {
    const double radius_factor = std::pow(2.0, 1.0 / space.p_convexity());
    Vector r = f - XB * b;
    Vector work(r.size());
    double cur = space.norm(r);
    std::vector<double> col_norm(static_cast<std::size_t>(XB.cols()));
    for (Eigen::Index j = 0; j < XB.cols(); ++j) col_norm[static_cast<std::size_t>(j)] = space.norm(XB.col(j).eval());
    for (int sweep = 0; sweep < 500 && cur > 0.0; ++sweep) {
        const double prev = cur;
        for (Eigen::Index j = 0; j < XB.cols(); ++j) {
            const double R = radius_factor * cur / col_norm[static_cast<std::size_t>(j)];
            if (!(R > 0.0)) continue;
            const Vector col = XB.col(j);
            const double t = line_minimise(space, r, col, R, scan, work);
            work.noalias() = r - t * col;
            const double v = space.norm(work);
            if (v < cur) {
                b[j] += t;
                r = work;
                cur = v;
            }
        }
        if (prev - cur <= tolerance * prev) break;
    }
    return cur;
}

struct SupportFit {
    double error = std::numeric_limits<double>::infinity();
    Vector b;
};

class SigmaSolver {
public:
    SigmaSolver(const BasisSystem& basis, const SigmaLimits& limits)
        : basis_(basis), limits_(limits), method_(sigma_method(basis)) {
        if (method_ == SigmaMethod::polyhedral_lp || method_ == SigmaMethod::concave_vertex) {
            const QuasiNorm* s = &basis.space();
            T_ = Matrix::Identity(basis.size(), basis.size());
            while (s->kind() == SpaceKind::linear_image) {
                T_ = s->inverse_change() * T_;
                s = &s->base();
            }
            lattice_p_ = s->p();
        }
    }

    SigmaMethod method() const { return method_; }
    // Concave-vertex enumeration falls back to multistart descent past row_subset_cap.
    bool vertex_feasible(int m) const { return binomial(basis_.size(), m) <= static_cast<double>(limits_.row_subset_cap); }
    bool descends(int m) const {
        return method_ == SigmaMethod::convex_descent || method_ == SigmaMethod::multistart_descent ||
               (method_ == SigmaMethod::concave_vertex && !vertex_feasible(m));
    }
    EstimateMode mode(int m) const {
        const bool heuristic = method_ == SigmaMethod::multistart_descent ||
                               (method_ == SigmaMethod::concave_vertex && !vertex_feasible(m));
        return heuristic ? EstimateMode::upper_bound : EstimateMode::exact;
    }

    SupportFit fit(const Vector& f, const Vector& c, const IndexSet& B) const {
        const QuasiNorm& space = basis_.space();
        const Matrix& X = basis_.vectors();
        const auto k = static_cast<Eigen::Index>(B.size());
        SupportFit out;
        out.b.resize(k);
        for (Eigen::Index j = 0; j < k; ++j) out.b[j] = c[B[static_cast<std::size_t>(j)]];
        Matrix XB(X.rows(), k);
        for (Eigen::Index j = 0; j < k; ++j) XB.col(j) = X.col(B[static_cast<std::size_t>(j)]);
        const double projection_error = space.norm((f - XB * out.b).eval());
        switch (method_) {
            case SigmaMethod::tail_norm: {
                out.error = projection_error;
                return out;
            }
            case SigmaMethod::polyhedral_lp: {
                const PolyhedralFit lp = polyhedral_fit(T_ * XB, T_ * f, lattice_p_);
                const double lp_error = space.norm((f - XB * lp.b).eval());
                if (lp_error < projection_error) {
                    out.b = lp.b;
                    out.error = lp_error;
                } else {
                    out.error = projection_error;
                }
                return out;
            }
            case SigmaMethod::convex_descent: {
                out.error = descend(space, XB, f, out.b, false, limits_.tolerance);
                return out;
            }
            case SigmaMethod::concave_vertex:
                if (vertex_feasible(static_cast<int>(k))) {
                    out.error = projection_error;
                    vertex_fit(f, XB, out);
                    return out;
                }
                [[fallthrough]];
            case SigmaMethod::multistart_descent: {
                const Vector b0 = out.b;
                out.error = descend(space, XB, f, out.b, true, limits_.tolerance);
                Rng rng(mix_seed(limits_.seed, static_cast<std::uint64_t>(k) * 1000003ULL + (k > 0 ? B.front() : 0)));
                const double scale = std::max(1.0, b0.size() > 0 ? b0.cwiseAbs().maxCoeff() : 1.0);
                for (int start = 1; start < limits_.starts; ++start) {
                    Vector b = start == 1 ? Vector::Zero(k).eval() : b0;
                    if (start > 1) {
                        for (Eigen::Index j = 0; j < k; ++j) b[j] += rng.uniform(-scale, scale);
                    }
                    const double e = descend(space, XB, f, b, true, limits_.tolerance);
                    if (e < out.error) {
                        out.error = e;
                        out.b = b;
                    }
                }
                return out;
            }
        }
        return out;
    }

    // Runs descent on B until a sweep no longer improves.
    double polish(const Vector& f, const IndexSet& B, Vector& b) const {
        Matrix XB(basis_.vectors().rows(), static_cast<Eigen::Index>(B.size()));
        for (std::size_t j = 0; j < B.size(); ++j) XB.col(static_cast<Eigen::Index>(j)) = basis_.vectors().col(B[j]);
        return descend(basis_.space(), XB, f, b, method_ != SigmaMethod::convex_descent, 0.0);
    }

private:
    // sum |r_i|^p is concave on every cell where the signs of r = T(f - XB b)
    // are fixed, so its minimum sits where k residual coordinates vanish.
    void vertex_fit(const Vector& f, const Matrix& XB, SupportFit& out) const {
        const auto k = static_cast<int>(XB.cols());
        const Matrix A = T_ * XB;
        const Vector y = T_ * f;
        for (const auto& rows : combinations(static_cast<int>(A.rows()), k)) {
            Matrix AI(k, k);
            Vector yI(k);
            for (int i = 0; i < k; ++i) {
                AI.row(i) = A.row(rows[static_cast<std::size_t>(i)]);
                yI[i] = y[rows[static_cast<std::size_t>(i)]];
            }
            const Eigen::FullPivLU<Matrix> lu(AI);
            if (!lu.isInvertible()) continue;
            const Vector b = lu.solve(yI);
            const double e = basis_.space().norm((f - XB * b).eval());
            if (e < out.error) {
                out.error = e;
                out.b = b;
            }
        }
    }

    const BasisSystem& basis_;
    SigmaLimits limits_;
    SigmaMethod method_;
    Matrix T_;
    double lattice_p_ = 1.0;
};

BestApproxResult solve_sigma(const BasisSystem& basis, const SigmaSolver& solver, const Vector& f, int m,
                             const SigmaLimits& limits, bool parallel) {
    const int n = basis.size();
    BestApproxResult result;
    result.m = m;
    result.mode = solver.mode(m);
    if (m == 0) {
        result.error = basis.space().norm(f);
        result.coefficients = Vector::Zero(0);
        return result;
    }
    if (binomial(n, m) > static_cast<double>(limits.support_cap)) {
        throw CapacityError("support_cap", "sigma_m: C(" + std::to_string(n) + "," + std::to_string(m) +
                                               ") supports exceed support_cap " + std::to_string(limits.support_cap));
    }
    const Vector c = basis.duals() * f;
    const SpaceKind kind = basis.space().kind();
    if (solver.method() == SigmaMethod::tail_norm &&
        (kind == SpaceKind::lp || kind == SpaceKind::lorentz || kind == SpaceKind::weak_lp)) {
        // Rearrangement-invariant lattice: removing the m largest coordinates
        // leaves the pointwise smallest rearrangement.
        const auto order = coef::greedy_order(f);
        result.support.assign(order.begin(), order.begin() + m);
        std::sort(result.support.begin(), result.support.end());
        result.coefficients.resize(m);
        Vector rest = f;
        for (int j = 0; j < m; ++j) {
            const int idx = result.support[static_cast<std::size_t>(j)];
            result.coefficients[j] = c[idx];
            rest[idx] = 0.0;
        }
        result.error = basis.space().norm(rest);
        return result;
    }
    if (solver.descends(m)) {
        // Descent paths depend on the scale of f, so solve on a canonical representative.
        const double norm = basis.space().norm(f);
        if (norm > 0.0 && std::isfinite(norm)) {
            Eigen::Index lead = 0;
            while (f[lead] == 0.0) ++lead;
            const double scale = f[lead] < 0.0 ? -norm : norm;
            const Vector g = f / scale;
            if (g != f) {
                result = solve_sigma(basis, solver, g, m, limits, parallel);
                result.coefficients *= scale;
                result.error *= norm;
                return result;
            }
        }
    }
    const auto supports = combinations(n, m);
    std::vector<SupportFit> fits(supports.size());
    if (parallel) {
        parallel_for(supports.size(), [&](std::size_t i) { fits[i] = solver.fit(f, c, supports[i]); });
    } else {
        for (std::size_t i = 0; i < supports.size(); ++i) fits[i] = solver.fit(f, c, supports[i]);
    }
    std::size_t arg = 0;
    for (std::size_t i = 1; i < fits.size(); ++i) {
        if (fits[i].error < fits[arg].error) arg = i;
    }
    result.support = supports[arg];
    result.coefficients = fits[arg].b;
    result.error = fits[arg].error;
    if (solver.descends(m)) {
        result.error = std::min(result.error, solver.polish(f, result.support, result.coefficients));
    }
    return result;
}

}  // namespace

BestApproxResult sigma_m(const BasisSystem& basis, const Vector& f, int m, const SigmaLimits& limits) {
    if (f.size() != basis.size()) throw UsageError("sigma_m: vector dimension mismatch");
    if (!f.allFinite()) throw UsageError("sigma_m: non-finite entry");
    if (m < 0 || m > basis.size()) throw UsageError("sigma_m: m must lie in [0, n]");
    const SigmaSolver solver(basis, limits);
    return solve_sigma(basis, solver, f, m, limits, true);
}

double approximation_error(const BasisSystem& basis, const Vector& f, const BestApproxResult& result) {
    Vector g = f;
    for (std::size_t j = 0; j < result.support.size(); ++j) {
        g -= result.coefficients[static_cast<Eigen::Index>(j)] * basis.vectors().col(result.support[j]);
    }
    return basis.space().norm(g);
}

LebesgueTable lebesgue_constants(const BasisSystem& basis, const ProbeFamily& probes, int m_max,
                                 const LebesgueOptions& options) {
    if (probes.empty()) throw UsageError("lebesgue_constants: empty probe family");
    const int n = basis.size();
    if (m_max < 0 || m_max > n) throw UsageError("lebesgue_constants: m_max must lie in [0, n]");
    if (m_max == 0) m_max = n;
    const SigmaSolver solver(basis, options.sigma);
    const QuasiNorm& space = basis.space();
    const Matrix& X = basis.vectors();

    std::vector<std::size_t> chosen;
    const auto& list = probes.probes();
    const std::size_t cap = solver.method() == SigmaMethod::tail_norm ? 0 : options.costly_probe_cap;
    if (cap == 0 || list.size() <= cap) {
        for (std::size_t i = 0; i < list.size(); ++i) chosen.push_back(i);
    } else {
        for (std::size_t i = 0; i < cap; ++i) chosen.push_back(i * list.size() / cap);
    }

    struct Slot {
        double ratio = 0.0;
        IndexSet A;
        BestApproxResult sigma;
        bool set = false;
    };
    const auto M = static_cast<std::size_t>(m_max);
    std::vector<std::vector<Slot>> parts(chosen.size());
    parallel_for(chosen.size(), [&](std::size_t idx) {
        std::vector<Slot> local(M);
        const Vector& c = list[chosen[idx]];
        const Vector f = X * c;
        const int support = static_cast<int>((c.array() != 0.0).count());
        for (int m = 1; m <= std::min(m_max, support - 1); ++m) {
            const BestApproxResult sigma = solve_sigma(basis, solver, f, m, options.sigma, false);
            if (!(sigma.error > 0.0)) continue;
            const auto sets = n <= 12 ? coef::all_greedy_sets(c, m)
                                      : std::vector<IndexSet>{coef::greedy_set(c, m).as_set()};
            for (const auto& A : sets) {
                Vector rest = c;
                for (int j : A) rest[j] = 0.0;
                const double ratio = space.norm((X * rest).eval()) / sigma.error;
                auto& slot = local[static_cast<std::size_t>(m - 1)];
                if (!slot.set || ratio > slot.ratio) slot = Slot{ratio, A, sigma, true};
            }
        }
        parts[idx] = std::move(local);
    });

    LebesgueTable out;
    out.table.param_id = "lebesgue";
    for (std::size_t k = 0; k < M; ++k) {
        std::size_t arg = chosen.size();
        double best = -1.0;
        for (std::size_t idx = 0; idx < chosen.size(); ++idx) {
            if (parts[idx][k].set && parts[idx][k].ratio > best) {
                best = parts[idx][k].ratio;
                arg = idx;
            }
        }
        EstimateValue e;
        e.mode = EstimateMode::lower_bound;
        e.witness.m = static_cast<int>(k + 1);
        if (arg < chosen.size()) {
            const Slot& slot = parts[arg][k];
            e.witness.coef = list[chosen[arg]];
            e.witness.A = slot.A;
            e.witness.B = slot.sigma.support;
            e.witness.approx = slot.sigma.coefficients;
        }
        e.value = reevaluate_lebesgue(basis, e.witness);
        out.table.entries.push_back(std::move(e));
        out.sigma_mode.push_back(solver.mode(static_cast<int>(k + 1)));
    }
    return out;
}

EstimateValue greedy_constant(const LebesgueTable& table) {
    if (table.table.entries.empty()) throw UsageError("greedy_constant: empty table");
    const auto& entries = table.table.entries;
    const auto it = std::max_element(entries.begin(), entries.end(),
                                     [](const EstimateValue& a, const EstimateValue& b) { return a.value < b.value; });
    return *it;
}

EstimateValue greedy_constant(const BasisSystem& basis, const ProbeFamily& probes, int m_max,
                              const LebesgueOptions& options) {
    return greedy_constant(lebesgue_constants(basis, probes, m_max, options));
}

double reevaluate_lebesgue(const BasisSystem& basis, const Witness& w) {
    if (w.coef.size() == 0) return 1.0;
    const Vector f = synthesize(basis, w.coef);
    Vector rest = w.coef;
    for (int j : w.A) rest[j] = 0.0;
    BestApproxResult approx;
    approx.support = w.B;
    approx.coefficients = w.approx;
    return basis.space().norm(synthesize(basis, rest)) / approximation_error(basis, f, approx);
}

}  // namespace greedylab
