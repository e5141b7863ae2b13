#pragma once

#include "graphsamp/types.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace graphsamp::detail {

inline constexpr double kRankTol = 1e-10;

inline bool full_column_rank(const Matrix& M) {
    if (M.cols() == 0) return true;
    if (M.rows() < M.cols()) return false;
    Eigen::JacobiSVD<Matrix> svd(M);
    const Vector& sv = svd.singularValues();
    const double top = sv(0);
    return top > 0.0 && sv(sv.size() - 1) >= kRankTol * top;
}

/// Pseudo-inverse of a symmetric matrix; eigenvalues below kRankTol * max|eig| are dropped.
inline Matrix pinv_symmetric(const Matrix& A) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(A);
    const Vector& ev = es.eigenvalues();
    const double top = ev.cwiseAbs().maxCoeff();
    Vector inv = Vector::Zero(ev.size());
    for (Index i = 0; i < ev.size(); ++i)
        if (std::abs(ev(i)) > kRankTol * top) inv(i) = 1.0 / ev(i);
    return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
}

/// Running argmax over candidates visited in increasing index order. A later
/// candidate replaces the incumbent only if it is better by more than the tie
/// tolerance, so ties resolve to the lowest index.
class ArgMax {
public:
    ArgMax(double abs_tol, double rel_tol) : abs_tol_(abs_tol), rel_tol_(rel_tol) {}

    void offer(Index index, double value) {
        if (best_ < 0) {
            best_ = index;
            value_ = value;
            return;
        }
        if (std::isinf(value) && std::isinf(value_) && value == value_) return;
        const double tol = abs_tol_ + rel_tol_ * std::max(std::abs(value), std::abs(value_));
        if (value > value_ + tol) {
            best_ = index;
            value_ = value;
        }
    }

    Index index() const { return best_; }
    double value() const { return value_; }

private:
    double abs_tol_;
    double rel_tol_;
    Index best_ = -1;
    double value_ = 0.0;
};

}  // namespace graphsamp::detail
