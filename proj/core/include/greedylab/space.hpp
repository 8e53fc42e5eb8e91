#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace greedylab {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

enum class SpaceKind { lp, lorentz, weak_lp, l2_blocks, linear_image };

std::string to_string(SpaceKind kind);

// Finite-dimensional quasi-norm on R^n.
//
// Every descriptor stores the exponent p_c in (0,1] for which
//   ||f + g||^p_c <= ||f||^p_c + ||g||^p_c
// holds. Defaults are derived per kind:
//   lp(p)            min(1, p)
//   lorentz(p, q)    min(1, q) if q <= p;  pq/(p+q) if p < q <= 1
//   weak_lp(p)       p/(p+1)
//   l2_blocks(r, ..) min(1, r)
//   linear_image     inherited from the base space
// Lorentz spaces with q > max(p, 1) have no default; the caller must pass
// the exponent explicitly.
class QuasiNorm {
public:
    static QuasiNorm lp(double p, int dim);
    static QuasiNorm lorentz(double p, double q, int dim,
                             std::optional<double> p_convexity = std::nullopt);
    static QuasiNorm weak_lp(double p, int dim);
    static QuasiNorm l2_blocks(double outer_p, std::vector<int> block_sizes);
    static QuasiNorm linear_image(const QuasiNorm& base, const Matrix& change_of_basis);

    // Overrides the stored exponent. Must lie in (0, 1] and, when a default
    // exists, must not exceed it.
    QuasiNorm with_p_convexity(double p_convexity) const;

    SpaceKind kind() const noexcept { return kind_; }
    int dimension() const noexcept { return dim_; }
    double p_convexity() const noexcept { return p_convexity_; }
    double p() const noexcept { return p_; }
    double q() const noexcept { return q_; }
    const std::vector<int>& block_sizes() const noexcept { return blocks_; }
    const QuasiNorm& base() const;
    const Matrix& change_of_basis() const noexcept { return change_; }
    const Matrix& inverse_change() const noexcept { return inverse_; }

    bool is_banach() const noexcept { return p_convexity_ >= 1.0; }
    // Lp(1), Lp(inf) and linear images of those.
    bool is_polyhedral() const noexcept;
    // Norm is monotone in |coordinates| (coordinate suppression never grows it).
    bool is_lattice() const noexcept { return kind_ != SpaceKind::linear_image; }

    // Hot path: no validation beyond a debug-mode size check.
    double norm(std::span<const double> f) const;
    double norm(const Vector& f) const { return norm(std::span<const double>(f.data(), f.size())); }

    std::string describe() const;

private:
    QuasiNorm() = default;

    SpaceKind kind_ = SpaceKind::lp;
    int dim_ = 0;
    double p_ = 1.0;
    double q_ = 1.0;
    double p_convexity_ = 1.0;
    double default_p_convexity_ = 1.0;  // 0 when no default is known
    std::vector<int> blocks_;
    std::shared_ptr<const QuasiNorm> base_;
    Matrix change_;
    Matrix inverse_;
};

// Validating evaluation: dimension and finiteness are checked.
double eval_norm(const QuasiNorm& space, const Vector& f);

// (sum_n a_n^q n^{q/p - 1})^{1/q} on the non-increasing rearrangement a of |f|;
// sup_n a_n n^{1/p} when q is infinite.
double lorentz_sequence_norm(const Vector& f, double p, double q);

// |f| sorted descending. Ties keep original index order.
Vector rearrange_nonincreasing(const Vector& f);

// All extreme points of the closed unit ball (polyhedral kinds only).
std::vector<Vector> unit_ball_vertices(const QuasiNorm& space, int dimension_cap = 16);

}  // namespace greedylab
