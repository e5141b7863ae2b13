#include "graphsamp/graph.hpp"

#include "graphsamp/error.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <sstream>
#include <string>

namespace graphsamp {

namespace {

std::string describe(const Edge& e) {
    std::ostringstream os;
    os << "(" << e.i << ", " << e.j << ", " << e.weight << ")";
    return os.str();
}

bool connected_from_adjacency(const Matrix& A) {
    const Index n = A.rows();
    if (n <= 1) return true;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::deque<Index> queue{0};
    seen[0] = 1;
    Index visited = 1;
    while (!queue.empty()) {
        const Index u = queue.front();
        queue.pop_front();
        for (Index v = 0; v < n; ++v) {
            if (v == u || seen[static_cast<std::size_t>(v)] || A(u, v) == 0.0) continue;
            seen[static_cast<std::size_t>(v)] = 1;
            ++visited;
            queue.push_back(v);
        }
    }
    return visited == n;
}

// Squared distances from row i to every row, brute force.
Vector squared_distances(const FeatureMatrix& X, Index i) {
    Vector d(X.rows());
    for (Index j = 0; j < X.rows(); ++j) d(j) = (X.row(i) - X.row(j)).squaredNorm();
    return d;
}

// Indices of the k nearest rows to i (excluding i), nearest first; ties by index.
IndexList nearest(const Vector& dist, Index i, Index k) {
    IndexList order;
    order.reserve(static_cast<std::size_t>(dist.size() - 1));
    for (Index j = 0; j < dist.size(); ++j)
        if (j != i) order.push_back(j);
    auto closer = [&](Index a, Index b) {
        return dist(a) < dist(b) || (dist(a) == dist(b) && a < b);
    };
    std::partial_sort(order.begin(), order.begin() + k, order.end(), closer);
    order.resize(static_cast<std::size_t>(k));
    return order;
}

void validate_features(const FeatureMatrix& X, Index k) {
    if (X.rows() < 2) throw InvalidArgument("knn_graph: need at least 2 points");
    if (!X.allFinite()) throw InvalidArgument("knn_graph: non-finite feature value");
    if (k < 1 || k >= X.rows())
        throw InvalidArgument("knn_graph: K must satisfy 1 <= K < N (K=" + std::to_string(k) +
                              ", N=" + std::to_string(X.rows()) + ")");
}

}  // namespace

Graph Graph::from_edges(Index n, std::span<const Edge> edges) {
    if (n < 0) throw InvalidArgument("graph: negative node count");
    Matrix W = Matrix::Zero(n, n);
    for (const Edge& e : edges) {
        if (e.i < 0 || e.j < 0 || e.i >= n || e.j >= n)
            throw InvalidArgument("graph: out-of-range index in edge " + describe(e));
        if (e.i == e.j) throw InvalidArgument("graph: self-loop in edge " + describe(e));
        if (!(e.weight > 0.0) || !std::isfinite(e.weight))
            throw InvalidArgument("graph: nonpositive weight in edge " + describe(e));
        if (W(e.i, e.j) != 0.0) throw InvalidArgument("graph: duplicate edge " + describe(e));
        W(e.i, e.j) = e.weight;
        W(e.j, e.i) = e.weight;
    }
    Vector d = W.rowwise().sum();
    return Graph(std::move(W), std::move(d));
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    for (Index i = 0; i < size(); ++i)
        for (Index j = i + 1; j < size(); ++j)
            if (adjacency_(i, j) != 0.0) out.push_back({i, j, adjacency_(i, j)});
    return out;
}

Index Graph::edge_count() const {
    return static_cast<Index>((adjacency_.array() != 0.0).count() / 2);
}

Matrix laplacian(const Graph& g, LaplacianKind kind) {
    Matrix L = -g.adjacency();
    L.diagonal() = g.degrees();
    if (kind == LaplacianKind::Combinatorial) return L;

    if ((g.degrees().array() <= 0.0).any())
        throw NumericalError("laplacian: isolated node, normalized Laplacian undefined");
    const Vector inv_sqrt = g.degrees().array().rsqrt();
    return inv_sqrt.asDiagonal() * L * inv_sqrt.asDiagonal();
}

bool is_connected(const Graph& g) { return connected_from_adjacency(g.adjacency()); }

bool is_connected_laplacian(const Matrix& L) {
    Matrix A = L;
    A.diagonal().setZero();
    return connected_from_adjacency(A);
}

double auto_bandwidth(const FeatureMatrix& X, Index k) {
    validate_features(X, k);
    double total = 0.0;
    for (Index i = 0; i < X.rows(); ++i) {
        const Vector dist = squared_distances(X, i);
        const IndexList nn = nearest(dist, i, k);
        total += std::sqrt(dist(nn.back()));
    }
    return total / static_cast<double>(X.rows());
}

Graph knn_graph(const FeatureMatrix& X, Index k, Bandwidth sigma) {
    validate_features(X, k);
    const Index n = X.rows();

    double s = 0.0;
    if (sigma) {
        if (!(*sigma > 0.0) || !std::isfinite(*sigma))
            throw InvalidArgument("knn_graph: sigma must be positive");
        s = *sigma;
    } else {
        s = auto_bandwidth(X, k);
        if (s == 0.0) throw InvalidArgument("knn_graph: degenerate features (auto sigma is zero)");
    }

    // Union symmetrization: keep the pair if either endpoint selects the other.
    Matrix selected = Matrix::Zero(n, n);
    Matrix dist2(n, n);
    for (Index i = 0; i < n; ++i) {
        dist2.row(i) = squared_distances(X, i).transpose();
        for (Index j : nearest(dist2.row(i).transpose(), i, k)) {
            selected(i, j) = 1.0;
            selected(j, i) = 1.0;
        }
    }

    std::vector<Edge> edges;
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j)
            if (selected(i, j) != 0.0) {
                const double w = std::exp(-dist2(i, j) / (s * s));
                if (!(w > 0.0))
                    throw NumericalError("knn_graph: weight underflows to zero for pair (" +
                                         std::to_string(i) + ", " + std::to_string(j) +
                                         "); increase sigma");
                edges.push_back({i, j, w});
            }
    return Graph::from_edges(n, edges);
}

}  // namespace graphsamp
