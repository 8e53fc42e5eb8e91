#include "greedylab/space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "greedylab/errors.hpp"

namespace greedylab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double lp_norm(std::span<const double> f, double p) {
    if (p == 1.0) {
        double s = 0.0;
        for (double x : f) s += std::abs(x);
        return s;
    }
    if (p == 2.0) {
        double s = 0.0;
        for (double x : f) s += x * x;
        return std::sqrt(s);
    }
    if (std::isinf(p)) {
        double m = 0.0;
        for (double x : f) m = std::max(m, std::abs(x));
        return m;
    }
    double s = 0.0;
    for (double x : f) {
        if (x != 0.0) s += std::pow(std::abs(x), p);
    }
    return std::pow(s, 1.0 / p);
}

double lorentz_norm(std::span<const double> f, double p, double q) {
    thread_local std::vector<double> a;
    a.assign(f.begin(), f.end());
    for (double& x : a) x = std::abs(x);
    std::sort(a.begin(), a.end(), std::greater<>());
    if (std::isinf(q)) {
        double m = 0.0;
        for (std::size_t n = 0; n < a.size() && a[n] > 0.0; ++n) {
            m = std::max(m, a[n] * std::pow(static_cast<double>(n + 1), 1.0 / p));
        }
        return m;
    }
    const double w = q / p - 1.0;
    double s = 0.0;
    for (std::size_t n = 0; n < a.size() && a[n] > 0.0; ++n) {
        const double an = q == 1.0 ? a[n] : std::pow(a[n], q);
        s += w == 0.0 ? an : an * std::pow(static_cast<double>(n + 1), w);
    }
    return q == 1.0 ? s : std::pow(s, 1.0 / q);
}

double blocks_norm(std::span<const double> f, double outer_p, const std::vector<int>& blocks) {
    thread_local std::vector<double> parts;
    parts.clear();
    std::size_t i = 0;
    for (int b : blocks) {
        parts.push_back(lp_norm(f.subspan(i, static_cast<std::size_t>(b)), 2.0));
        i += static_cast<std::size_t>(b);
    }
    return lp_norm(parts, outer_p);
}

void require(bool ok, const std::string& msg) {
    if (!ok) throw UsageError(msg);
}

}  // namespace

std::string to_string(SpaceKind kind) {
    switch (kind) {
        case SpaceKind::lp: return "lp";
        case SpaceKind::lorentz: return "lorentz";
        case SpaceKind::weak_lp: return "weak_lp";
        case SpaceKind::l2_blocks: return "l2blocks";
        case SpaceKind::linear_image: return "linear_image";
    }
    return "unknown";
}

QuasiNorm QuasiNorm::lp(double p, int dim) {
    require(dim >= 1, "lp: dimension must be positive");
    require(p > 0.0 && !std::isnan(p), "lp: p must be positive");
    QuasiNorm s;
    s.kind_ = SpaceKind::lp;
    s.dim_ = dim;
    s.p_ = p;
    s.default_p_convexity_ = s.p_convexity_ = std::min(1.0, p);
    return s;
}

QuasiNorm QuasiNorm::lorentz(double p, double q, int dim, std::optional<double> p_convexity) {
    require(dim >= 1, "lorentz: dimension must be positive");
    require(p > 0.0 && std::isfinite(p), "lorentz: p must be positive and finite");
    require(q > 0.0 && !std::isnan(q), "lorentz: q must be positive");
    QuasiNorm s;
    s.kind_ = SpaceKind::lorentz;
    s.dim_ = dim;
    s.p_ = p;
    s.q_ = q;
    if (std::isinf(q)) {
        s.default_p_convexity_ = p / (p + 1.0);
    } else if (q <= p) {
        s.default_p_convexity_ = std::min(1.0, q);
    } else if (q <= 1.0) {
        s.default_p_convexity_ = p * q / (p + q);
    } else {
        s.default_p_convexity_ = 0.0;
    }
    s.p_convexity_ = s.default_p_convexity_;
    if (p_convexity) return s.with_p_convexity(*p_convexity);
    require(s.p_convexity_ > 0.0,
            "lorentz: no known concavity exponent for q > max(p, 1); pass p_convexity explicitly");
    return s;
}

QuasiNorm QuasiNorm::weak_lp(double p, int dim) {
    require(dim >= 1, "weak_lp: dimension must be positive");
    require(p > 0.0 && std::isfinite(p), "weak_lp: p must be positive and finite");
    QuasiNorm s;
    s.kind_ = SpaceKind::weak_lp;
    s.dim_ = dim;
    s.p_ = p;
    s.q_ = kInf;
    s.default_p_convexity_ = s.p_convexity_ = p / (p + 1.0);
    return s;
}

QuasiNorm QuasiNorm::l2_blocks(double outer_p, std::vector<int> block_sizes) {
    require(outer_p > 0.0 && !std::isnan(outer_p), "l2blocks: outer p must be positive");
    require(!block_sizes.empty(), "l2blocks: at least one block required");
    for (int b : block_sizes) require(b >= 1, "l2blocks: block sizes must be positive");
    QuasiNorm s;
    s.kind_ = SpaceKind::l2_blocks;
    s.dim_ = std::accumulate(block_sizes.begin(), block_sizes.end(), 0);
    s.p_ = outer_p;
    s.q_ = 2.0;
    s.blocks_ = std::move(block_sizes);
    s.default_p_convexity_ = s.p_convexity_ = std::min(1.0, outer_p);
    return s;
}

QuasiNorm QuasiNorm::linear_image(const QuasiNorm& base, const Matrix& change_of_basis) {
    require(change_of_basis.rows() == base.dimension() && change_of_basis.cols() == base.dimension(),
            "linear_image: change of basis must be square of the base dimension");
    require(change_of_basis.allFinite(), "linear_image: non-finite matrix entry");
    Eigen::FullPivLU<Matrix> lu(change_of_basis);
    require(lu.isInvertible(), "linear_image: change of basis is not invertible");
    QuasiNorm s;
    s.kind_ = SpaceKind::linear_image;
    s.dim_ = base.dimension();
    s.p_ = base.p_;
    s.q_ = base.q_;
    s.base_ = std::make_shared<const QuasiNorm>(base);
    s.change_ = change_of_basis;
    s.inverse_ = lu.inverse();
    s.default_p_convexity_ = base.default_p_convexity_;
    s.p_convexity_ = base.p_convexity_;
    return s;
}

QuasiNorm QuasiNorm::with_p_convexity(double p_convexity) const {
    require(p_convexity > 0.0 && p_convexity <= 1.0, "p_convexity must lie in (0, 1]");
    if (default_p_convexity_ > 0.0) {
        require(p_convexity <= default_p_convexity_ + 1e-15,
                "p_convexity exceeds the exponent this quasi-norm is known to satisfy");
    }
    QuasiNorm s = *this;
    s.p_convexity_ = p_convexity;
    return s;
}

const QuasiNorm& QuasiNorm::base() const {
    if (!base_) throw UsageError("space has no base (not a linear image)");
    return *base_;
}

bool QuasiNorm::is_polyhedral() const noexcept {
    switch (kind_) {
        case SpaceKind::lp: return p_ == 1.0 || std::isinf(p_);
        case SpaceKind::linear_image: return base_->is_polyhedral();
        default: return false;
    }
}

double QuasiNorm::norm(std::span<const double> f) const {
    switch (kind_) {
        case SpaceKind::lp: return lp_norm(f, p_);
        case SpaceKind::lorentz:
        case SpaceKind::weak_lp: return lorentz_norm(f, p_, q_);
        case SpaceKind::l2_blocks: return blocks_norm(f, p_, blocks_);
        case SpaceKind::linear_image: {
            thread_local Vector pre;
            pre.noalias() = inverse_ * Eigen::Map<const Vector>(f.data(), static_cast<Eigen::Index>(f.size()));
            return base_->norm(pre);
        }
    }
    return 0.0;
}

std::string QuasiNorm::describe() const {
    std::ostringstream os;
    os.precision(17);
    switch (kind_) {
        case SpaceKind::lp: os << "lp(p=" << p_ << ", n=" << dim_ << ")"; break;
        case SpaceKind::lorentz: os << "lorentz(p=" << p_ << ", q=" << q_ << ", n=" << dim_ << ")"; break;
        case SpaceKind::weak_lp: os << "weak_lp(p=" << p_ << ", n=" << dim_ << ")"; break;
        case SpaceKind::l2_blocks: {
            os << "l2blocks(outer_p=" << p_ << ", blocks=";
            for (std::size_t i = 0; i < blocks_.size(); ++i) os << (i ? "+" : "") << blocks_[i];
            os << ")";
            break;
        }
        case SpaceKind::linear_image: os << "linear_image(" << base_->describe() << ")"; break;
    }
    return os.str();
}

double lorentz_sequence_norm(const Vector& f, double p, double q) {
    if (!(p > 0.0) || !(q > 0.0)) throw UsageError("lorentz_sequence_norm: exponents must be positive");
    return lorentz_norm(std::span<const double>(f.data(), static_cast<std::size_t>(f.size())), p, q);
}

double eval_norm(const QuasiNorm& space, const Vector& f) {
    if (f.size() != space.dimension()) {
        throw UsageError("eval_norm: vector length " + std::to_string(f.size()) +
                         " does not match space dimension " + std::to_string(space.dimension()));
    }
    if (!f.allFinite()) throw UsageError("eval_norm: non-finite entry");
    return space.norm(f);
}

Vector rearrange_nonincreasing(const Vector& f) {
    std::vector<Eigen::Index> order(static_cast<std::size_t>(f.size()));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return std::abs(f[a]) > std::abs(f[b]); });
    Vector out(f.size());
    for (std::size_t i = 0; i < order.size(); ++i) out[static_cast<Eigen::Index>(i)] = std::abs(f[order[i]]);
    return out;
}

std::vector<Vector> unit_ball_vertices(const QuasiNorm& space, int dimension_cap) {
    if (!space.is_polyhedral()) {
        throw UnsupportedOracle("unit_ball_vertices: " + space.describe() + " is not polyhedral");
    }
    const int n = space.dimension();
    if (n > dimension_cap) {
        throw CapacityError("vertex_cap", "unit_ball_vertices: dimension " + std::to_string(n) +
                                              " exceeds vertex cap " + std::to_string(dimension_cap));
    }
    if (space.kind() == SpaceKind::linear_image) {
        auto base = unit_ball_vertices(space.base(), dimension_cap);
        for (auto& v : base) v = space.change_of_basis() * v;
        return base;
    }
    std::vector<Vector> out;
    if (space.p() == 1.0) {
        out.reserve(2 * static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            for (double sign : {1.0, -1.0}) {
                Vector v = Vector::Zero(n);
                v[i] = sign;
                out.push_back(std::move(v));
            }
        }
        return out;
    }
    const std::uint64_t count = std::uint64_t{1} << n;
    out.reserve(count);
    for (std::uint64_t mask = 0; mask < count; ++mask) {
        Vector v(n);
        for (int i = 0; i < n; ++i) v[i] = (mask >> (n - 1 - i)) & 1U ? -1.0 : 1.0;
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace greedylab
