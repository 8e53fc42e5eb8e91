#include "greedylab/lp.hpp"

#include <cmath>
#include <limits>

#include "greedylab/errors.hpp"

namespace greedylab {

LpResult solve_lp_feasible_origin(const Matrix& A, const Vector& h, const Vector& c, int max_pivots) {
    const Eigen::Index rows = A.rows(), cols = A.cols();
    if (h.size() != rows || c.size() != cols) throw UsageError("lp: shape mismatch");
    if ((h.array() < 0.0).any()) throw UsageError("lp: origin must be feasible (h >= 0)");
    constexpr double eps = 1e-12;

    // Tableau [A I | h] with the objective row [c 0 | 0] kept as reduced costs.
    const Eigen::Index width = cols + rows;
    Matrix T = Matrix::Zero(rows + 1, width + 1);
    T.topLeftCorner(rows, cols) = A;
    T.block(0, cols, rows, rows).setIdentity();
    T.col(width).head(rows) = h;
    T.row(rows).head(cols) = c.transpose();
    std::vector<Eigen::Index> basic(static_cast<std::size_t>(rows));
    for (Eigen::Index i = 0; i < rows; ++i) basic[static_cast<std::size_t>(i)] = cols + i;

    LpResult result;
    for (int pivot = 0; pivot < max_pivots; ++pivot) {
        Eigen::Index enter = -1;
        for (Eigen::Index j = 0; j < width; ++j) {
            if (T(rows, j) < -eps) {
                enter = j;
                break;
            }
        }
        if (enter < 0) {
            result.optimal = true;
            break;
        }
        Eigen::Index leave = -1;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < rows; ++i) {
            if (T(i, enter) <= eps) continue;
            const double ratio = T(i, width) / T(i, enter);
            if (ratio < best_ratio - eps ||
                (std::abs(ratio - best_ratio) <= eps && leave >= 0 &&
                 basic[static_cast<std::size_t>(i)] < basic[static_cast<std::size_t>(leave)])) {
                best_ratio = ratio;
                leave = i;
            }
        }
        if (leave < 0) return result;  // unbounded
        T.row(leave) /= T(leave, enter);
        for (Eigen::Index i = 0; i <= rows; ++i) {
            if (i != leave && T(i, enter) != 0.0) T.row(i) -= T(i, enter) * T.row(leave);
        }
        basic[static_cast<std::size_t>(leave)] = enter;
    }
    if (!result.optimal) return result;
    result.x = Vector::Zero(cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const auto b = basic[static_cast<std::size_t>(i)];
        if (b < cols) result.x[b] = T(i, width);
    }
    result.objective = c.dot(result.x);
    return result;
}

PolyhedralFit polyhedral_fit(const Matrix& Y, const Vector& g, double p) {
    const Eigen::Index n = Y.rows(), k = Y.cols();
    if (g.size() != n) throw UsageError("polyhedral_fit: shape mismatch");
    PolyhedralFit fit;
    if (k == 0) {
        fit.b = Vector::Zero(0);
        fit.error = std::isinf(p) ? g.cwiseAbs().maxCoeff() : g.cwiseAbs().sum();
        return fit;
    }
    // Variables b = b+ - b-, plus an error variable (inf) or n of them (1),
    // each shifted by its value at b = 0 and split into +/- parts so that the
    // origin is feasible.
    Matrix A;
    Vector h, c;
    if (std::isinf(p)) {
        const double t0 = g.cwiseAbs().maxCoeff();
        A = Matrix::Zero(2 * n, 2 * k + 2);
        h.resize(2 * n);
        for (Eigen::Index i = 0; i < n; ++i) {
            A.block(i, 0, 1, k) = Y.row(i);
            A.block(i, k, 1, k) = -Y.row(i);
            A(i, 2 * k) = -1.0;
            A(i, 2 * k + 1) = 1.0;
            h[i] = g[i] + t0;
            A.block(n + i, 0, 1, k) = -Y.row(i);
            A.block(n + i, k, 1, k) = Y.row(i);
            A(n + i, 2 * k) = -1.0;
            A(n + i, 2 * k + 1) = 1.0;
            h[n + i] = t0 - g[i];
        }
        c = Vector::Zero(2 * k + 2);
        c[2 * k] = 1.0;
        c[2 * k + 1] = -1.0;
    } else if (p == 1.0) {
        A = Matrix::Zero(2 * n, 2 * k + 2 * n);
        h.resize(2 * n);
        for (Eigen::Index i = 0; i < n; ++i) {
            A.block(i, 0, 1, k) = Y.row(i);
            A.block(i, k, 1, k) = -Y.row(i);
            A(i, 2 * k + i) = -1.0;
            A(i, 2 * k + n + i) = 1.0;
            h[i] = g[i] + std::abs(g[i]);
            A.block(n + i, 0, 1, k) = -Y.row(i);
            A.block(n + i, k, 1, k) = Y.row(i);
            A(n + i, 2 * k + i) = -1.0;
            A(n + i, 2 * k + n + i) = 1.0;
            h[n + i] = std::abs(g[i]) - g[i];
        }
        c = Vector::Zero(2 * k + 2 * n);
        c.segment(2 * k, n).setOnes();
        c.segment(2 * k + n, n).setConstant(-1.0);
    } else {
        throw UsageError("polyhedral_fit: p must be 1 or inf");
    }
    h = h.cwiseMax(0.0);
    const LpResult lp = solve_lp_feasible_origin(A, h, c);
    fit.b = Vector::Zero(k);
    if (lp.optimal) fit.b = lp.x.head(k) - lp.x.segment(k, k);
    const Vector r = g - Y * fit.b;
    fit.error = std::isinf(p) ? r.cwiseAbs().maxCoeff() : r.cwiseAbs().sum();
    return fit;
}

}  // namespace greedylab
