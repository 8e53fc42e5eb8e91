#include "greedylab/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "greedylab/errors.hpp"

namespace greedylab {
namespace {

void check_set(const IndexSet& A, int n) {
    for (int i : A) {
        if (i < 0 || i >= n) {
            throw UsageError("index " + std::to_string(i) + " out of range for basis of size " + std::to_string(n));
        }
    }
}

void check_m(int m, int n) {
    if (m < 0 || m > n) {
        throw UsageError("cardinality m = " + std::to_string(m) + " outside [0, " + std::to_string(n) + "]");
    }
}

// C(n, k) saturating at `cap + 1`.
std::size_t bounded_binomial(int n, int k, std::size_t cap) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    double r = 1.0;
    for (int i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > static_cast<double>(cap)) return cap + 1;
    }
    return static_cast<std::size_t>(std::llround(r));
}

}  // namespace

IndexSet GreedySelection::as_set() const {
    IndexSet out = indices;
    std::sort(out.begin(), out.end());
    return out;
}

namespace coef {

std::vector<int> greedy_order(const Vector& c) {
    std::vector<int> order(static_cast<std::size_t>(c.size()));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return std::abs(c[a]) > std::abs(c[b]); });
    return order;
}

GreedySelection greedy_set(const Vector& c, int m) {
    check_m(m, static_cast<int>(c.size()));
    auto order = greedy_order(c);
    order.resize(static_cast<std::size_t>(m));
    return GreedySelection{std::move(order)};
}

std::vector<IndexSet> all_greedy_sets(const Vector& c, int m, std::size_t limit) {
    const int n = static_cast<int>(c.size());
    check_m(m, n);
    if (m == 0 || m == n) {
        IndexSet all;
        if (m == n) {
            all.resize(static_cast<std::size_t>(n));
            std::iota(all.begin(), all.end(), 0);
        }
        return {all};
    }
    const auto order = greedy_order(c);
    const double cut = std::abs(c[order[static_cast<std::size_t>(m - 1)]]);
    IndexSet strict, tied;
    for (int i = 0; i < n; ++i) {
        const double v = std::abs(c[i]);
        if (v > cut) strict.push_back(i);
        else if (v == cut) tied.push_back(i);
    }
    const int need = m - static_cast<int>(strict.size());
    const std::size_t count = bounded_binomial(static_cast<int>(tied.size()), need, limit);
    if (count > limit) return {greedy_set(c, m).as_set()};
    std::vector<IndexSet> out;
    out.reserve(count);
    // lexicographic combinations of the tied group
    std::vector<int> pick(static_cast<std::size_t>(need));
    std::iota(pick.begin(), pick.end(), 0);
    const int t = static_cast<int>(tied.size());
    while (true) {
        IndexSet A = strict;
        for (int k : pick) A.push_back(tied[static_cast<std::size_t>(k)]);
        std::sort(A.begin(), A.end());
        out.push_back(std::move(A));
        int i = need - 1;
        while (i >= 0 && pick[static_cast<std::size_t>(i)] == t - need + i) --i;
        if (i < 0) break;
        ++pick[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < need; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

Vector restrict_to(const Vector& c, const IndexSet& A) {
    Vector out = Vector::Zero(c.size());
    for (int i : A) out[i] = c[i];
    return out;
}

Vector flatten_on(const Vector& c, const IndexSet& A) {
    Vector out = Vector::Zero(c.size());
    if (A.empty()) return out;
    double mn = std::abs(c[A.front()]);
    for (int i : A) mn = std::min(mn, std::abs(c[i]));
    if (mn == 0.0) return out;
    for (int i : A) out[i] = c[i] > 0.0 ? mn : -mn;
    return out;
}

IndexSet threshold_set(const Vector& c, double a) {
    if (!(a >= 0.0)) throw UsageError("threshold must be non-negative");
    IndexSet out;
    for (int i = 0; i < static_cast<int>(c.size()); ++i) {
        if (std::abs(c[i]) >= a) out.push_back(i);
    }
    return out;
}

}  // namespace coef

Vector synthesize(const BasisSystem& basis, const Vector& c) { return basis.vectors() * c; }

Vector indicator(const BasisSystem& basis, const SignedSet& set) {
    if (set.indices.size() != set.signs.size()) throw UsageError("signed set: signs must match indices");
    check_set(set.indices, basis.size());
    Vector c = Vector::Zero(basis.size());
    for (std::size_t k = 0; k < set.indices.size(); ++k) {
        if (set.signs[k] != 1 && set.signs[k] != -1) throw UsageError("signed set: signs must be +1 or -1");
        c[set.indices[k]] = set.signs[k];
    }
    return synthesize(basis, c);
}

Vector indicator(const BasisSystem& basis, const IndexSet& A) {
    check_set(A, basis.size());
    Vector c = Vector::Zero(basis.size());
    for (int i : A) c[i] = 1.0;
    return synthesize(basis, c);
}

GreedySelection greedy_set(const BasisSystem& basis, const Vector& f, int m) {
    check_m(m, basis.size());
    return coef::greedy_set(coefficients(basis, f), m);
}

Vector project(const BasisSystem& basis, const Vector& f, const IndexSet& A) {
    check_set(A, basis.size());
    return synthesize(basis, coef::restrict_to(coefficients(basis, f), A));
}

Vector greedy_operator(const BasisSystem& basis, const Vector& f, int m) {
    const Vector c = coefficients(basis, f);
    return synthesize(basis, coef::restrict_to(c, coef::greedy_set(c, m).as_set()));
}

Vector restricted_truncation(const BasisSystem& basis, const Vector& f, const IndexSet& A) {
    check_set(A, basis.size());
    return synthesize(basis, coef::flatten_on(coefficients(basis, f), A));
}

Vector restricted_truncation_m(const BasisSystem& basis, const Vector& f, int m) {
    const Vector c = coefficients(basis, f);
    return synthesize(basis, coef::flatten_on(c, coef::greedy_set(c, m).as_set()));
}

Vector truncation_operator(const BasisSystem& basis, const Vector& f, int m) {
    const Vector c = coefficients(basis, f);
    const IndexSet A = coef::greedy_set(c, m).as_set();
    const Vector r = synthesize(basis, coef::flatten_on(c, A));
    const Vector g = synthesize(basis, coef::restrict_to(c, A));
    return r + f - g;
}

IndexSet threshold_set(const BasisSystem& basis, const Vector& f, double a) {
    return coef::threshold_set(coefficients(basis, f), a);
}

Vector thresholding_greedy(const BasisSystem& basis, const Vector& f, double a) {
    const Vector c = coefficients(basis, f);
    return synthesize(basis, coef::restrict_to(c, coef::threshold_set(c, a)));
}

Vector thresholding_truncation(const BasisSystem& basis, const Vector& f, double a) {
    const Vector c = coefficients(basis, f);
    return synthesize(basis, coef::flatten_on(c, coef::threshold_set(c, a)));
}

}  // namespace greedylab
