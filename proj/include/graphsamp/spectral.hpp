#pragma once

#include "graphsamp/types.hpp"

namespace graphsamp {

/// Ascending eigenvalues of a symmetric matrix with paired orthonormal eigenvectors
/// (column i of `vectors` belongs to `values(i)`).
struct Spectrum {
    Vector values;
    Matrix vectors;

    Index size() const { return values.size(); }
    double max_value() const { return values.size() ? values(values.size() - 1) : 0.0; }
};

/// Dense symmetric eigendecomposition. Rejects input asymmetric beyond 1e-10
/// entrywise; eigenvalues within 1e-10 * max|lambda| of zero are set to exactly 0.
Spectrum eigendecompose(const Matrix& L);

/// Graph Fourier transform, U^T f.
Vector gft(const Spectrum& s, const Vector& f);
/// Inverse transform, U c.
Vector igft(const Spectrum& s, const Vector& coeffs);

inline constexpr double kDefaultBandwidthTol = 1e-9;

/// Largest eigenvalue whose GFT coefficient exceeds tol * |f|. Throws for f = 0.
double bandwidth(const Spectrum& s, const Vector& f, double tol = kDefaultBandwidthTol);

/// The first r eigenvectors spanning a Paley-Wiener space.
struct BandlimitedBasis {
    Matrix columns;      // n x r
    Vector frequencies;  // lambda_1..lambda_r

    Index rank() const { return columns.cols(); }
};

/// Slack added to omega so eigenspaces at the boundary are never split.
inline constexpr double kBoundarySlack = 1e-12;

/// Basis of every eigenvector with lambda <= omega (+ slack).
BandlimitedBasis pw_basis(const Spectrum& s, double omega);
/// Basis of the first r eigenvectors.
BandlimitedBasis leading_basis(const Spectrum& s, Index r);

Vector synthesize(const BandlimitedBasis& b, const Vector& coeffs);

/// Number of eigenvalues strictly below omega, with eigenvalues within
/// kBoundarySlack of omega counted as equal to it.
Index count_below(const Spectrum& s, double omega);

}  // namespace graphsamp
