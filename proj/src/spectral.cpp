#include "graphsamp/spectral.hpp"

#include "graphsamp/error.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>

namespace graphsamp {

namespace {

void require_length(const Spectrum& s, Index len, const char* what) {
    if (len != s.size())
        throw InvalidArgument(std::string(what) + ": length " + std::to_string(len) +
                              " does not match spectrum size " + std::to_string(s.size()));
}

}  // namespace

Spectrum eigendecompose(const Matrix& L) {
    if (L.rows() != L.cols()) throw InvalidArgument("eigendecompose: matrix is not square");
    if (L.size() && ((L - L.transpose()).cwiseAbs().maxCoeff() > 1e-10))
        throw InvalidArgument("eigendecompose: matrix is not symmetric");
    if (L.size() == 0) return {};

    Eigen::SelfAdjointEigenSolver<Matrix> solver(L);
    if (solver.info() != Eigen::Success)
        throw NumericalError("eigendecompose: eigensolver did not converge");

    Spectrum s{solver.eigenvalues(), solver.eigenvectors()};
    const double floor = 1e-10 * s.values.cwiseAbs().maxCoeff();
    for (Index i = 0; i < s.size(); ++i)
        if (std::abs(s.values(i)) <= floor) s.values(i) = 0.0;
    return s;
}

Vector gft(const Spectrum& s, const Vector& f) {
    require_length(s, f.size(), "gft");
    return s.vectors.transpose() * f;
}

Vector igft(const Spectrum& s, const Vector& coeffs) {
    require_length(s, coeffs.size(), "igft");
    return s.vectors * coeffs;
}

double bandwidth(const Spectrum& s, const Vector& f, double tol) {
    const Vector c = gft(s, f);
    const double norm = f.norm();
    if (norm == 0.0) throw InvalidArgument("bandwidth: undefined for the zero signal");
    for (Index i = s.size() - 1; i >= 0; --i)
        if (std::abs(c(i)) > tol * norm) return s.values(i);
    // Unreachable for a nonzero signal and orthonormal U, kept for tol >= 1.
    return s.values(0);
}

Index count_below(const Spectrum& s, double omega) {
    return static_cast<Index>((s.values.array() < omega - kBoundarySlack).count());
}

BandlimitedBasis leading_basis(const Spectrum& s, Index r) {
    if (r < 1 || r > s.size())
        throw InvalidArgument("bandlimited basis: rank " + std::to_string(r) + " outside [1, " +
                              std::to_string(s.size()) + "]");
    return {s.vectors.leftCols(r), s.values.head(r)};
}

BandlimitedBasis pw_basis(const Spectrum& s, double omega) {
    if (s.size() == 0 || omega + kBoundarySlack < s.values(0))
        throw InvalidArgument("pw_basis: omega is below the smallest eigenvalue");
    const auto r = static_cast<Index>((s.values.array() <= omega + kBoundarySlack).count());
    return leading_basis(s, r);
}

Vector synthesize(const BandlimitedBasis& b, const Vector& coeffs) {
    if (coeffs.size() != b.rank())
        throw InvalidArgument("synthesize: expected " + std::to_string(b.rank()) +
                              " coefficients, got " + std::to_string(coeffs.size()));
    return b.columns * coeffs;
}

}  // namespace graphsamp
