#pragma once

#include "graphsamp/sample_set.hpp"
#include "graphsamp/spectral.hpp"
#include "graphsamp/types.hpp"

namespace graphsamp {

/// Cutoff-frequency estimate (lambda_min[(L^k) restricted to S^c])^{1/k};
/// +infinity when S covers every node.
struct CutoffEstimate {
    double value = 0.0;
    int k = 1;
};

inline constexpr int kDefaultPower = 4;

/// Throws NumericalError for a disconnected graph and InvalidArgument for k < 1.
CutoffEstimate omega_estimate(const Matrix& L, const SampleSet& S, int k = kDefaultPower);

/**
 * Exact cutoff frequency of S: the smallest lambda_r for which the rows S of
 * the first r eigenvectors lose column rank, i.e. the lowest bandwidth of a
 * nonzero signal vanishing on S. +infinity when S is every node.
 *
 * Dense SVD per rank, meant as a reference on small graphs.
 */
double exact_cutoff(const Spectrum& s, const SampleSet& S);

/// True when rows S of the first r eigenvectors have full column rank
/// (smallest singular value >= 1e-10 * largest).
bool is_uniqueness_set(const Spectrum& s, const SampleSet& S, Index r);

struct CutoffSelection {
    IndexList order;                // nodes in the order they were added
    std::vector<double> cutoffs;    // Omega_k after each addition
    int k = 1;

    SampleSet set(Index n) const { return SampleSet(n, order); }
    double cutoff() const { return cutoffs.empty() ? 0.0 : cutoffs.back(); }
};

/**
 * Greedy maximization of Omega_k(S): starting from the empty set, repeatedly
 * add the node whose inclusion gives the largest estimate. Ties go to the
 * lowest node index.
 *
 * Each step decomposes the current complement block of L^k once; the smallest
 * eigenvalue after deleting each candidate is then a root of the secular
 * equation sum_i q_vi^2 / (lambda_i - mu) = 0, found by bisection.
 */
CutoffSelection greedy_select_max_cutoff(const Matrix& L, Index m, int k = kDefaultPower);

/// Least-squares bandlimited reconstruction on all n nodes from samples f_S on S,
/// using the first r eigenvectors. Throws NumericalError if S is not a uniqueness
/// set for that rank.
Vector bl_reconstruct(const Spectrum& s, const SampleSet& S, const Vector& f_S, Index r);

namespace detail {

/// (L / scale)^k with scale = max absolute row sum of L, so the spectrum lies in [0, 1].
struct ScaledPower {
    Matrix power;
    double scale = 1.0;
    int k = 1;

    double to_frequency(double eigenvalue) const;
};

ScaledPower scaled_power(const Matrix& L, int k);

/// Smallest eigenvalue of a symmetric matrix after deleting row/column v, given
/// its ascending eigenvalues and the squared entries of row v of its eigenvectors.
double smallest_after_deletion(const Vector& eigenvalues, const Vector& weights);

}  // namespace detail

}  // namespace graphsamp
