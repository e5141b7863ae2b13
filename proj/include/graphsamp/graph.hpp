#pragma once

#include "graphsamp/types.hpp"

#include <optional>
#include <span>

namespace graphsamp {

struct Edge {
    Index i;
    Index j;
    double weight;
};

/**
 * Weighted undirected graph with a dense adjacency matrix.
 *
 * Immutable after construction. The adjacency is symmetric with a zero
 * diagonal, absent edges are exact zeros and degrees are row sums.
 */
class Graph {
public:
    /// Validates and builds the graph. Throws InvalidArgument on self-loops,
    /// nonpositive or non-finite weights, out-of-range indices and duplicate pairs.
    static Graph from_edges(Index n, std::span<const Edge> edges);

    Index size() const { return adjacency_.rows(); }
    const Matrix& adjacency() const { return adjacency_; }
    const Vector& degrees() const { return degrees_; }

    /// Edges with i < j, in row-major order of the adjacency.
    std::vector<Edge> edges() const;
    Index edge_count() const;

private:
    Graph(Matrix adjacency, Vector degrees)
        : adjacency_(std::move(adjacency)), degrees_(std::move(degrees)) {}

    Matrix adjacency_;
    Vector degrees_;
};

inline Graph build_from_edges(Index n, std::span<const Edge> edges) {
    return Graph::from_edges(n, edges);
}

enum class LaplacianKind { Combinatorial, SymmetricNormalized };

/// L = D - W, or D^{-1/2} L D^{-1/2} for the normalized form.
/// The normalized form requires every degree to be positive.
Matrix laplacian(const Graph& g, LaplacianKind kind = LaplacianKind::Combinatorial);

bool is_connected(const Graph& g);

/// Connectivity read off the off-diagonal nonzeros of a Laplacian-like matrix.
bool is_connected_laplacian(const Matrix& L);

/// Row-per-point feature matrix.
using FeatureMatrix = Matrix;

/// Gaussian bandwidth for K-NN weights; an empty optional means "auto",
/// the mean distance from each point to its K-th nearest neighbour.
using Bandwidth = std::optional<double>;

/**
 * Union-symmetrized K-nearest-neighbour graph with Gaussian weights
 * w_ij = exp(-|x_i - x_j|^2 / sigma^2).
 *
 * Neighbour ties are broken by lower row index.
 */
Graph knn_graph(const FeatureMatrix& X, Index k, Bandwidth sigma = std::nullopt);

/// The sigma knn_graph would use for Bandwidth::auto on X.
double auto_bandwidth(const FeatureMatrix& X, Index k);

}  // namespace graphsamp
