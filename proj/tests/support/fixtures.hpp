#pragma once

// Graph fixtures and brute-force oracles shared by the unit and acceptance
// suites. Oracles here use direct dense formulas (explicit inverses,
// determinants, enumeration) and never call into the routines they check.

#include "graphsamp/graph.hpp"
#include "graphsamp/sample_set.hpp"
#include "graphsamp/types.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace graphsamp::testing {

inline Graph path3() {
    const std::vector<Edge> e{{0, 1, 1.0}, {1, 2, 1.0}};
    return Graph::from_edges(3, e);
}

inline Graph single_edge() {
    const std::vector<Edge> e{{0, 1, 1.0}};
    return Graph::from_edges(2, e);
}

/// Connected graph: random spanning tree plus Erdos-Renyi extras, weights in (0.1, 1].
inline Graph random_connected(Index n, std::uint64_t seed, double extra_p = 0.4) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> weight(0.1, 1.0);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    Matrix W = Matrix::Zero(n, n);
    for (Index v = 1; v < n; ++v) {
        std::uniform_int_distribution<Index> parent(0, v - 1);
        const Index u = parent(gen);
        W(u, v) = W(v, u) = weight(gen);
    }
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j)
            if (W(i, j) == 0.0 && coin(gen) < extra_p) W(i, j) = W(j, i) = weight(gen);
    std::vector<Edge> edges;
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j)
            if (W(i, j) != 0.0) edges.push_back({i, j, W(i, j)});
    return Graph::from_edges(n, edges);
}

/// Size of the random graph family member `index`: n in [4, 10].
inline Index family_size(int index) { return 4 + index % 7; }

/// Every subset of {0..n-1} as a bitmask in [0, 2^n).
inline SampleSet subset_from_mask(Index n, std::uint32_t mask) {
    IndexList m;
    for (Index v = 0; v < n; ++v)
        if (mask & (1u << v)) m.push_back(v);
    return SampleSet(n, std::move(m));
}

/// L by definition: degree on the diagonal, -w off it.
inline Matrix laplacian_oracle(const Graph& g) {
    const Index n = g.size();
    Matrix L = Matrix::Zero(n, n);
    for (const Edge& e : g.edges()) {
        L(e.i, e.i) += e.weight;
        L(e.j, e.j) += e.weight;
        L(e.i, e.j) -= e.weight;
        L(e.j, e.i) -= e.weight;
    }
    return L;
}

/// (L + delta I)^{-1} by LU inversion.
inline Matrix covariance_oracle(const Matrix& L, double delta) {
    const Index n = L.rows();
    return (L + delta * Matrix::Identity(n, n)).inverse();
}

/// Schur complement K_{S^c} - K_{S^c S} K_S^{-1} K_{S S^c} with an LU inverse.
inline Matrix schur_oracle(const Matrix& K, const SampleSet& S) {
    const IndexList rest = S.complement();
    const IndexList& obs = S.members();
    if (obs.empty()) return K(rest, rest);
    return K(rest, rest) - K(rest, obs) * K(obs, obs).inverse() * K(obs, rest);
}

inline double lambda_min(const Matrix& A) {
    return Eigen::SelfAdjointEigenSolver<Matrix>(A, Eigen::EigenvaluesOnly).eigenvalues()(0);
}

inline double lambda_max(const Matrix& A) {
    const auto ev = Eigen::SelfAdjointEigenSolver<Matrix>(A, Eigen::EigenvaluesOnly).eigenvalues();
    return ev(ev.size() - 1);
}

/// Omega_k straight from the definition: repeated products, no rescaling.
inline double omega_oracle(const Matrix& L, const SampleSet& S, int k) {
    if (S.is_full()) return std::numeric_limits<double>::infinity();
    Matrix P = L;
    for (int i = 1; i < k; ++i) P = P * L;
    const IndexList rest = S.complement();
    const Matrix block = P(rest, rest);
    return std::pow(std::max(lambda_min(0.5 * (block + block.transpose())), 0.0), 1.0 / k);
}

inline double rel_frobenius(const Matrix& a, const Matrix& b) {
    const double denom = std::max(b.norm(), 1e-300);
    return (a - b).norm() / denom;
}

}  // namespace graphsamp::testing
