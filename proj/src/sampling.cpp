#include "graphsamp/sampling.hpp"

#include "graphsamp/error.hpp"
#include "graphsamp/graph.hpp"
#include "linalg.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>

namespace graphsamp {

namespace detail {

double ScaledPower::to_frequency(double eigenvalue) const {
    if (std::isinf(eigenvalue)) return kInfinity;
    return scale * std::pow(std::max(eigenvalue, 0.0), 1.0 / k);
}

ScaledPower scaled_power(const Matrix& L, int k) {
    if (k < 1) throw InvalidArgument("cutoff estimate: power k must be >= 1");
    double scale = L.size() ? L.cwiseAbs().rowwise().sum().maxCoeff() : 1.0;
    if (scale == 0.0) scale = 1.0;
    const Matrix base = L / scale;
    Matrix p = base;
    for (int i = 1; i < k; ++i) p = p * base;
    // Remove asymmetric rounding from the products.
    p = 0.5 * (p + p.transpose()).eval();
    return {std::move(p), scale, k};
}

double smallest_after_deletion(const Vector& lambda, const Vector& w) {
    const Index n = lambda.size();
    if (n <= 1) return kInfinity;
    // A repeated smallest eigenvalue survives any single deletion (interlacing).
    if (lambda(1) == lambda(0)) return lambda(0);

    double result = kInfinity;
    Index first = -1;
    for (Index i = 0; i < n; ++i) {
        if (w(i) == 0.0) {
            // Eigenvector vanishes at the deleted node: its eigenvalue carries over.
            result = std::min(result, lambda(i));
        } else if (first < 0) {
            first = i;
        }
    }
    if (first < 0) return result;

    Index next = -1;
    for (Index i = first + 1; i < n; ++i)
        if (w(i) != 0.0 && lambda(i) > lambda(first)) {
            next = i;
            break;
        }
    if (next < 0) return result;

    // Secular function is increasing on (lambda_first, lambda_next), from -inf to +inf.
    auto secular = [&](double mu) {
        double f = 0.0;
        for (Index i = 0; i < n; ++i)
            if (w(i) != 0.0) f += w(i) / (lambda(i) - mu);
        return f;
    };
    double lo = lambda(first);
    double hi = lambda(next);
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (secular(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return std::min(result, 0.5 * (lo + hi));
}

}  // namespace detail

namespace {

void require_square_match(const Matrix& L, Index n, const char* what) {
    if (L.rows() != L.cols() || L.rows() != n)
        throw InvalidArgument(std::string(what) + ": matrix size " + std::to_string(L.rows()) +
                              " does not match sample set ambient size " + std::to_string(n));
}

void require_connected(const Matrix& L, const char* what) {
    if (!is_connected_laplacian(L))
        throw NumericalError(std::string(what) + ": graph is disconnected");
}

double smallest_eigenvalue(const Matrix& A) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(A, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("eigensolver did not converge");
    return es.eigenvalues()(0);
}

}  // namespace

CutoffEstimate omega_estimate(const Matrix& L, const SampleSet& S, int k) {
    require_square_match(L, S.ambient(), "omega_estimate");
    require_connected(L, "omega_estimate");
    const detail::ScaledPower p = detail::scaled_power(L, k);
    if (S.is_full()) return {kInfinity, k};
    const IndexList rest = S.complement();
    return {p.to_frequency(smallest_eigenvalue(p.power(rest, rest))), k};
}

bool is_uniqueness_set(const Spectrum& s, const SampleSet& S, Index r) {
    if (S.ambient() != s.size())
        throw InvalidArgument("uniqueness test: sample set and spectrum sizes differ");
    if (r < 0 || r > s.size()) throw InvalidArgument("uniqueness test: rank out of range");
    return detail::full_column_rank(s.vectors(S.members(), Eigen::seqN(0, r)));
}

double exact_cutoff(const Spectrum& s, const SampleSet& S) {
    if (S.ambient() != s.size())
        throw InvalidArgument("exact_cutoff: sample set and spectrum sizes differ");
    for (Index r = 1; r <= s.size(); ++r)
        if (!is_uniqueness_set(s, S, r)) return s.values(r - 1);
    return kInfinity;
}

CutoffSelection greedy_select_max_cutoff(const Matrix& L, Index m, int k) {
    const Index n = L.rows();
    if (L.cols() != n) throw InvalidArgument("greedy_select_max_cutoff: matrix is not square");
    if (m < 1 || m > n)
        throw InvalidArgument("greedy_select_max_cutoff: budget " + std::to_string(m) +
                              " outside [1, " + std::to_string(n) + "]");
    require_connected(L, "greedy_select_max_cutoff");

    const detail::ScaledPower p = detail::scaled_power(L, k);
    CutoffSelection out;
    out.k = k;
    std::vector<char> chosen(static_cast<std::size_t>(n), 0);

    for (Index step = 0; step < m; ++step) {
        IndexList rest;
        for (Index v = 0; v < n; ++v)
            if (!chosen[static_cast<std::size_t>(v)]) rest.push_back(v);

        Eigen::SelfAdjointEigenSolver<Matrix> es(p.power(rest, rest));
        if (es.info() != Eigen::Success)
            throw NumericalError("greedy_select_max_cutoff: eigensolver did not converge");
        const Vector& lambda = es.eigenvalues();
        const Matrix& Q = es.eigenvectors();

        detail::ArgMax best(1e-14, 1e-12);
        for (Index pos = 0; pos < static_cast<Index>(rest.size()); ++pos) {
            const Vector w = Q.row(pos).transpose().array().square();
            best.offer(pos, detail::smallest_after_deletion(lambda, w));
        }
        const Index v = rest[static_cast<std::size_t>(best.index())];
        chosen[static_cast<std::size_t>(v)] = 1;
        out.order.push_back(v);
        out.cutoffs.push_back(p.to_frequency(best.value()));
    }
    return out;
}

Vector bl_reconstruct(const Spectrum& s, const SampleSet& S, const Vector& f_S, Index r) {
    if (S.ambient() != s.size())
        throw InvalidArgument("bl_reconstruct: sample set and spectrum sizes differ");
    if (f_S.size() != S.size())
        throw InvalidArgument("bl_reconstruct: expected " + std::to_string(S.size()) +
                              " samples, got " + std::to_string(f_S.size()));
    if (r < 1 || r > s.size())
        throw InvalidArgument("bl_reconstruct: rank " + std::to_string(r) + " outside [1, " +
                              std::to_string(s.size()) + "]");
    if (S.size() < r || !is_uniqueness_set(s, S, r))
        throw NumericalError("bl_reconstruct: not a uniqueness set for this bandwidth (|S|=" +
                             std::to_string(S.size()) + ", r=" + std::to_string(r) + ")");

    const Matrix U_SR = s.vectors(S.members(), Eigen::seqN(0, r));
    Eigen::JacobiSVD<Matrix> svd(U_SR, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vector coeffs = svd.solve(f_S);
    return s.vectors.leftCols(r) * coeffs;
}

}  // namespace graphsamp
