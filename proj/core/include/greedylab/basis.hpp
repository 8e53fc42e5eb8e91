#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "greedylab/space.hpp"

namespace greedylab {

// A square biorthogonal system (x_j, x_j^*) over a quasi-normed R^n.
// Column j of vectors() is x_j in ambient coordinates; row j of duals() is
// the coordinate functional x_j^*. Immutable after construction.
class BasisSystem {
public:
    static constexpr double kBiorthogonalityTol = 1e-10;
    static constexpr double kConditionWarning = 1e8;

    // Throws UsageError on shape mismatch, zero columns, a singular system or
    // duals that are not biorthogonal to 1e-10. When duals are omitted they are
    // computed by inversion.
    BasisSystem(QuasiNorm space, Matrix vectors, std::optional<Matrix> duals = std::nullopt,
                std::vector<std::string> labels = {});

    const QuasiNorm& space() const noexcept { return space_; }
    const Matrix& vectors() const noexcept { return vectors_; }
    const Matrix& duals() const noexcept { return duals_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    int size() const noexcept { return static_cast<int>(vectors_.cols()); }

    // d = max_j ||x_j||,  c = max_j ||x_j^*|| (operator norm of the functional).
    double max_vector_norm() const noexcept { return d_; }
    double max_dual_norm() const noexcept { return c_; }
    bool dual_norm_exact() const noexcept { return c_exact_; }

    double condition_number() const noexcept { return condition_; }
    double biorthogonality_residual() const noexcept { return residual_; }
    const std::vector<std::string>& warnings() const noexcept { return warnings_; }

    // True when every x_j is a positive multiple of e_j.
    bool is_diagonal() const noexcept { return diagonal_; }

private:
    QuasiNorm space_;
    Matrix vectors_;
    Matrix duals_;
    std::vector<std::string> labels_;
    double c_ = 0.0;
    double d_ = 0.0;
    bool c_exact_ = false;
    double condition_ = 1.0;
    double residual_ = 0.0;
    bool diagonal_ = false;
    std::vector<std::string> warnings_;
};

enum class Property { unconditional, democratic, greedy, conditional, non_democratic };

std::string to_string(Property p);

struct CatalogEntry {
    std::string id;
    BasisSystem basis;
    std::set<Property> known_properties;

    bool has(Property p) const { return known_properties.count(p) != 0; }
};

// (x_n^*(f))_n. Throws UsageError on dimension mismatch.
Vector coefficients(const BasisSystem& basis, const Vector& f);

// Operator norm of a linear functional (given as a coordinate row) on the
// space. `exact` reports whether a closed form or vertex oracle was used.
double functional_norm(const QuasiNorm& space, const Vector& row, bool* exact = nullptr);

// unit vector bases of lp, p in {1/2, 1, 2}; the summing basis in lp(inf);
// the canonical basis of (sum l2^k)_{l1} with block sizes 1,2,..,K (+ remainder)
// totalling dim; a seeded perturbation of the unit basis of lp(inf).
std::vector<CatalogEntry> make_catalog(int dim, std::uint64_t seed = 0);

// Resolves ids of the form
//   lp:<p>:<dim>            unit vector basis of lp (p may be "inf")
//   weak:<p>:<dim>          unit vector basis of weak-lp
//   lorentz:<p>:<q>:<dim>   unit vector basis of l_{p,q}
//   summing:<dim>           summing basis of lp(inf)
//   l2blocks:<p>:<b1+b2+..> canonical basis of (sum l2^{b_k})_{lp}
//   perturbed:<dim>[:seed]  identity plus small seeded upper triangle in lp(inf)
// Throws UsageError on unknown ids.
CatalogEntry resolve_basis(std::string_view id, std::uint64_t seed = 0);

std::vector<int> catalog_block_sizes(int dim);

BasisSystem summing_basis(int dim);

// Custom bases: {"space": {...}, "vectors": [[row], ...], "duals": [[row], ...]}.
// Matrices are given row by row; column j of "vectors" is x_j.
QuasiNorm space_from_json_text(std::string_view json_text);
BasisSystem basis_from_json_text(std::string_view json_text);
BasisSystem load_basis_file(const std::string& path);
std::string space_to_json_text(const QuasiNorm& space);

}  // namespace greedylab
