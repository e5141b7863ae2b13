#include "graphsamp/error.hpp"
#include "graphsamp/graph.hpp"
#include "support/fixtures.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

using namespace graphsamp;
using graphsamp::testing::path3;
using graphsamp::testing::random_connected;

TEST_CASE("build_from_edges: single edge") {
    const std::vector<Edge> e{{0, 1, 1.0}};
    const Graph g = build_from_edges(2, e);
    CHECK(g.adjacency() == (Matrix(2, 2) << 0, 1, 1, 0).finished());
    CHECK(g.degrees() == Vector::Ones(2));
}

TEST_CASE("build_from_edges: path P3 degrees") {
    const Graph g = path3();
    CHECK(g.degrees() == (Vector(3) << 1, 2, 1).finished());
    CHECK(g.edge_count() == 2);
}

TEST_CASE("build_from_edges: rejected edges name the problem") {
    auto message = [](Index n, std::vector<Edge> e) {
        try {
            (void)Graph::from_edges(n, e);
        } catch (const InvalidArgument& ex) {
            return std::string(ex.what());
        }
        return std::string();
    };
    CHECK(message(2, {{0, 0, 1.0}}).find("self-loop") != std::string::npos);
    CHECK(message(2, {{0, 1, 0.0}}).find("nonpositive") != std::string::npos);
    CHECK(message(2, {{0, 1, -2.0}}).find("nonpositive") != std::string::npos);
    CHECK(message(2, {{0, 2, 1.0}}).find("out-of-range") != std::string::npos);
    CHECK(message(3, {{0, 1, 1.0}, {1, 0, 2.0}}).find("duplicate") != std::string::npos);
    CHECK(message(3, {{0, 1, 1.0}, {1, 0, 2.0}}).find("(1, 0, 2)") != std::string::npos);
}

TEST_CASE("laplacian: combinatorial fixtures") {
    const Matrix L = laplacian(path3());
    CHECK(L == (Matrix(3, 3) << 1, -1, 0, -1, 2, -1, 0, -1, 1).finished());
    CHECK(laplacian(testing::single_edge()) == (Matrix(2, 2) << 1, -1, -1, 1).finished());
}

TEST_CASE("laplacian: symmetric normalized P3") {
    const Matrix N = laplacian(path3(), LaplacianKind::SymmetricNormalized);
    const double h = 1.0 / std::sqrt(2.0);
    const Matrix expected = (Matrix(3, 3) << 1, -h, 0, -h, 1, -h, 0, -h, 1).finished();
    CHECK((N - expected).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("laplacian: isolated node rejects normalized form") {
    const std::vector<Edge> e{{0, 1, 1.0}};
    const Graph g = Graph::from_edges(3, e);
    CHECK_THROWS_AS(laplacian(g, LaplacianKind::SymmetricNormalized), NumericalError);
    CHECK_NOTHROW(laplacian(g));
}

TEST_CASE("laplacian: null space and quadratic form on random graphs") {
    std::mt19937_64 gen(11);
    std::normal_distribution<double> normal;
    for (int trial = 0; trial < 20; ++trial) {
        const Graph g = random_connected(5 + trial % 8, 100 + trial);
        const Matrix L = laplacian(g);
        const double dmax = g.degrees().maxCoeff();
        const Vector ones = Vector::Ones(g.size());
        CHECK((L * ones).cwiseAbs().maxCoeff() <= 1e-12 * dmax);
        CHECK((ones.transpose() * L).cwiseAbs().maxCoeff() <= 1e-12 * dmax);

        Vector x(g.size());
        for (Index i = 0; i < x.size(); ++i) x(i) = normal(gen);
        double variation = 0.0;
        for (const Edge& e : g.edges()) variation += e.weight * std::pow(x(e.i) - x(e.j), 2);
        const double quad = x.dot(L * x);
        CHECK(std::abs(quad - variation) <= 1e-10 * std::abs(variation));
    }
}

TEST_CASE("is_connected") {
    CHECK(is_connected(path3()));
    const std::vector<Edge> e{{0, 1, 1.0}};
    CHECK_FALSE(is_connected(Graph::from_edges(3, e)));
    CHECK(is_connected(Graph::from_edges(1, {})));
    CHECK(is_connected_laplacian(laplacian(path3())));
    CHECK_FALSE(is_connected_laplacian(laplacian(Graph::from_edges(3, e))));
}

TEST_CASE("knn_graph: collinear points") {
    const FeatureMatrix X = (Matrix(3, 1) << 0.0, 1.0, 10.0).finished();
    const Graph g = knn_graph(X, 1, 1.0);
    const auto edges = g.edges();
    REQUIRE(edges.size() == 2);
    CHECK(edges[0].i == 0);
    CHECK(edges[0].j == 1);
    CHECK(edges[0].weight == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(edges[1].i == 1);
    CHECK(edges[1].j == 2);
    CHECK(edges[1].weight == doctest::Approx(std::exp(-81.0)).epsilon(1e-15));
}

TEST_CASE("knn_graph: duplicate points get unit weight") {
    const FeatureMatrix X = (Matrix(4, 2) << 0, 0, 0, 0, 5, 5, 9, 1).finished();
    const Graph g = knn_graph(X, 1, 1.0);
    CHECK(g.adjacency()(0, 1) == 1.0);
}

TEST_CASE("knn_graph: degenerate features and bad K") {
    const FeatureMatrix same = Matrix::Ones(4, 3);
    CHECK_THROWS_WITH_AS(knn_graph(same, 2), doctest::Contains("degenerate features"), InvalidArgument);
    const FeatureMatrix X = Matrix::Random(5, 2);
    CHECK_THROWS_AS(knn_graph(X, 0), InvalidArgument);
    CHECK_THROWS_AS(knn_graph(X, 5), InvalidArgument);
    CHECK_THROWS_AS(knn_graph(X, 2, -1.0), InvalidArgument);
}

TEST_CASE("knn_graph: auto sigma is the mean K-th neighbour distance") {
    const FeatureMatrix X = (Matrix(3, 1) << 0.0, 1.0, 10.0).finished();
    // K=1: nearest distances 1, 1, 9.
    CHECK(auto_bandwidth(X, 1) == doctest::Approx(11.0 / 3.0));
    const Graph g = knn_graph(X, 1);
    const double s = 11.0 / 3.0;
    CHECK(g.adjacency()(0, 1) == doctest::Approx(std::exp(-1.0 / (s * s))));
}

TEST_CASE("knn_graph: digit-sized input keeps K neighbours per node") {
    std::mt19937_64 gen(3);
    std::normal_distribution<double> normal;
    FeatureMatrix X(1000, 16);
    for (Index i = 0; i < X.rows(); ++i)
        for (Index j = 0; j < X.cols(); ++j) X(i, j) = normal(gen);
    const Graph g = knn_graph(X, 10);
    CHECK(g.size() == 1000);
    const auto neighbours = (g.adjacency().array() > 0.0).rowwise().count();
    CHECK(neighbours.minCoeff() >= 10);
}

TEST_CASE("knn_graph: equivariant under row permutation") {
    std::mt19937_64 gen(5);
    std::normal_distribution<double> normal;
    for (int trial = 0; trial < 5; ++trial) {
        FeatureMatrix X(40, 3);
        for (Index i = 0; i < X.rows(); ++i)
            for (Index j = 0; j < X.cols(); ++j) X(i, j) = normal(gen);
        std::vector<Index> perm(40);
        std::iota(perm.begin(), perm.end(), Index{0});
        std::shuffle(perm.begin(), perm.end(), gen);
        FeatureMatrix Y(40, 3);
        for (Index i = 0; i < 40; ++i) Y.row(i) = X.row(perm[static_cast<std::size_t>(i)]);

        const Matrix A = knn_graph(X, 4).adjacency();
        const Matrix B = knn_graph(Y, 4).adjacency();
        double worst = 0.0;
        for (Index i = 0; i < 40; ++i)
            for (Index j = 0; j < 40; ++j)
                worst = std::max(worst, std::abs(B(i, j) - A(perm[static_cast<std::size_t>(i)],
                                                             perm[static_cast<std::size_t>(j)])));
        CHECK(worst < 1e-14);
    }
}
