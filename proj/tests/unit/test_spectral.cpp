#include "graphsamp/error.hpp"
#include "graphsamp/graph.hpp"
#include "graphsamp/spectral.hpp"
#include "support/fixtures.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace graphsamp;
using graphsamp::testing::path3;
using graphsamp::testing::random_connected;

namespace {

Spectrum p3_spectrum() { return eigendecompose(laplacian(path3())); }

Vector random_vector(Index n, std::mt19937_64& gen) {
    std::normal_distribution<double> normal;
    Vector x(n);
    for (Index i = 0; i < n; ++i) x(i) = normal(gen);
    return x;
}

}  // namespace

TEST_CASE("eigendecompose: hand-computed spectra") {
    // det(L - t I) for P3 is -t (t - 1)(t - 3).
    const Spectrum s = p3_spectrum();
    CHECK(s.values(0) == 0.0);
    CHECK(s.values(1) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(s.values(2) == doctest::Approx(3.0).epsilon(1e-14));

    // Two nodes: trace 2, determinant 0.
    const Spectrum t = eigendecompose(laplacian(testing::single_edge()));
    CHECK(t.values(0) == 0.0);
    CHECK(t.values(1) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("eigendecompose: zero matrix gives zero spectrum with orthonormal basis") {
    const Spectrum s = eigendecompose(Matrix::Zero(3, 3));
    CHECK(s.values == Vector::Zero(3));
    CHECK((s.vectors.transpose() * s.vectors - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("eigendecompose: rejects asymmetric input") {
    Matrix A = laplacian(path3());
    A(0, 1) += 1e-6;
    CHECK_THROWS_AS(eigendecompose(A), InvalidArgument);
}

TEST_CASE("eigendecompose: orthonormality, reconstruction and connected-graph gap") {
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix L = laplacian(random_connected(4 + trial, 200 + trial));
        const Spectrum s = eigendecompose(L);
        const Index n = s.size();
        CHECK((s.vectors.transpose() * s.vectors - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-8);
        const Matrix back = s.vectors * s.values.asDiagonal() * s.vectors.transpose();
        CHECK(testing::rel_frobenius(back, L) < 1e-8);
        CHECK(s.values(0) == 0.0);
        CHECK(s.values(1) > 0.0);
        for (Index i = 1; i < n; ++i) CHECK(s.values(i) >= s.values(i - 1));
    }
}

TEST_CASE("gft: projections on P3") {
    const Spectrum s = p3_spectrum();
    const Vector c1 = gft(s, Vector::Ones(3));
    CHECK(std::abs(std::abs(c1(0)) - std::sqrt(3.0)) < 1e-12);
    CHECK(std::abs(c1(1)) < 1e-12);
    CHECK(std::abs(c1(2)) < 1e-12);

    const Vector c2 = gft(s, (Vector(3) << 1, 0, -1).finished());
    CHECK(std::abs(c2(0)) < 1e-12);
    CHECK(std::abs(std::abs(c2(1)) - std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(c2(2)) < 1e-12);

    CHECK(gft(s, Vector::Zero(3)) == Vector::Zero(3));
    CHECK_THROWS_AS(gft(s, Vector::Ones(4)), InvalidArgument);
    CHECK_THROWS_AS(igft(s, Vector::Ones(2)), InvalidArgument);
}

TEST_CASE("gft: inverse, Parseval and the spectral quadratic form") {
    std::mt19937_64 gen(17);
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix L = laplacian(random_connected(5 + trial % 6, 300 + trial));
        const Spectrum s = eigendecompose(L);
        const Vector f = random_vector(s.size(), gen);
        const Vector c = gft(s, f);
        CHECK((igft(s, c) - f).norm() <= 1e-10 * f.norm());
        CHECK(std::abs(c.norm() - f.norm()) <= 1e-10 * f.norm());
        const double direct = f.dot(L * f);
        const double spectral = (s.values.array() * c.array().square()).sum();
        CHECK(std::abs(direct - spectral) <= 1e-8 * std::abs(direct));
    }
}

TEST_CASE("bandwidth: P3 signals") {
    const Spectrum s = p3_spectrum();
    CHECK(bandwidth(s, Vector::Ones(3)) == 0.0);
    CHECK(bandwidth(s, (Vector(3) << 1, 0, -1).finished()) == doctest::Approx(1.0));
    CHECK(bandwidth(s, (Vector(3) << 1, 0, 0).finished()) == doctest::Approx(3.0));
    CHECK_THROWS_AS(bandwidth(s, Vector::Zero(3)), InvalidArgument);
}

TEST_CASE("pw_basis and synthesize on P3") {
    const Spectrum s = p3_spectrum();
    const BandlimitedBasis dc = pw_basis(s, 0.0);
    CHECK(dc.rank() == 1);
    CHECK(std::abs(std::abs(dc.columns(0, 0)) - 1.0 / std::sqrt(3.0)) < 1e-12);

    const BandlimitedBasis b = pw_basis(s, 2.0);
    REQUIRE(b.rank() == 2);
    CHECK_THROWS_AS(pw_basis(s, -0.5), InvalidArgument);
    CHECK_THROWS_AS(synthesize(b, Vector::Ones(3)), InvalidArgument);

    // sqrt(3) u1 + sqrt(2) u2 with u1 = 1/sqrt(3) (1,1,1), u2 = 1/sqrt(2) (1,0,-1).
    // Fix the eigenvector signs so the coefficients match that convention.
    Vector a(2);
    a << std::sqrt(3.0) * (b.columns(0, 0) > 0 ? 1 : -1), std::sqrt(2.0) * (b.columns(0, 1) > 0 ? 1 : -1);
    const Vector f = synthesize(b, a);
    CHECK((f - (Vector(3) << 2, 1, 0).finished()).norm() < 1e-12);
}

TEST_CASE("pw_basis keeps degenerate eigenspaces whole") {
    // Complete graph K4: eigenvalue 4 with multiplicity 3.
    std::vector<Edge> e;
    for (Index i = 0; i < 4; ++i)
        for (Index j = i + 1; j < 4; ++j) e.push_back({i, j, 1.0});
    const Spectrum s = eigendecompose(laplacian(Graph::from_edges(4, e)));
    CHECK(pw_basis(s, 4.0).rank() == 4);
    CHECK(pw_basis(s, 3.9).rank() == 1);

    // Compare spectral projectors, not eigenvectors, inside the eigenspace.
    const Matrix U = s.vectors.rightCols(3);
    const Matrix projector = U * U.transpose();
    const Matrix expected = Matrix::Identity(4, 4) - Matrix::Constant(4, 4, 0.25);
    CHECK((projector - expected).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("synthesized signals stay inside their band") {
    std::mt19937_64 gen(23);
    for (int trial = 0; trial < 20; ++trial) {
        const Spectrum s = eigendecompose(laplacian(random_connected(6 + trial % 5, 400 + trial)));
        const Index r = 1 + trial % (s.size() - 1);
        const BandlimitedBasis b = pw_basis(s, s.values(r - 1));
        const Vector f = synthesize(b, random_vector(b.rank(), gen));
        CHECK(bandwidth(s, f) <= s.values(r - 1));
        const Vector c = gft(s, f);
        CHECK(c.tail(s.size() - b.rank()).cwiseAbs().maxCoeff() <= 1e-9 * f.norm());
    }
}
