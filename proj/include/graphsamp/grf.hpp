#pragma once

#include "graphsamp/sample_set.hpp"
#include "graphsamp/spectral.hpp"
#include "graphsamp/types.hpp"

#include <cstdint>

namespace graphsamp {

inline constexpr double kDefaultDelta = 0.01;

/**
 * Gaussian random field with precision L + delta I.
 *
 * The covariance K = U diag(1 / (lambda_i + delta)) U^T is built from the
 * Laplacian spectrum, which the model keeps for sampling and diagnostics.
 */
class GrfModel {
public:
    GrfModel(Spectrum spectrum, double delta);

    double delta() const { return delta_; }
    const Matrix& covariance() const { return K_; }
    const Spectrum& spectrum() const { return spectrum_; }
    /// sigma_i = 1 / (lambda_i + delta), paired with the spectrum's eigenvectors.
    Vector variances() const;
    Index size() const { return K_.rows(); }

private:
    Spectrum spectrum_;
    double delta_;
    Matrix K_;
};

/// Full-rank model from a Laplacian. Throws InvalidArgument for delta <= 0.
GrfModel covariance(const Matrix& L, double delta);
GrfModel covariance(const Spectrum& s, double delta);

/// Rank-r truncation K^ = U_R Sigma_R U_R^T of the full-rank covariance, kept in factored form.
class LowRankGrf {
public:
    LowRankGrf(Matrix basis, Vector variances, double delta);

    Index rank() const { return basis_.cols(); }
    Index size() const { return basis_.rows(); }
    double delta() const { return delta_; }
    const Matrix& basis() const { return basis_; }
    const Vector& variances() const { return variances_; }

    /// K^ as a dense n x n matrix.
    Matrix dense() const;

private:
    Matrix basis_;
    Vector variances_;
    double delta_;
};

/// First r spectral components. Throws InvalidArgument unless 1 <= r <= n.
LowRankGrf low_rank_covariance(const Spectrum& s, Index r, double delta);
/// Components with lambda_i < omega.
LowRankGrf low_rank_covariance_below(const Spectrum& s, double omega, double delta);

/// Conditional distribution of f on S^c given f_S. Entries follow S.complement() order.
struct Posterior {
    Vector mean;
    Matrix covariance;
};

/// Posterior mean K_{S^c S} (K_S)^+ f_S. Throws InvalidArgument for an empty S.
Vector map_estimate(const GrfModel& model, const SampleSet& S, const Vector& f_S);
Vector map_estimate(const LowRankGrf& model, const SampleSet& S, const Vector& f_S);

/// Full n-vector: observed values on S, posterior mean on S^c.
Vector map_fill(const GrfModel& model, const SampleSet& S, const Vector& f_S);
Vector map_fill(const LowRankGrf& model, const SampleSet& S, const Vector& f_S);

/// Schur complement K_{S^c} - K_{S^c S} (K_S)^+ K_{S S^c}.
Matrix predictive_covariance(const GrfModel& model, const SampleSet& S);
Matrix predictive_covariance(const LowRankGrf& model, const SampleSet& S);

Posterior posterior(const GrfModel& model, const SampleSet& S, const Vector& f_S);
Posterior posterior(const LowRankGrf& model, const SampleSet& S, const Vector& f_S);

/// f = U Sigma^{1/2} z with z standard normal from a generator seeded by `seed`.
Vector sample_signal(const GrfModel& model, std::uint64_t seed);
Vector sample_signal(const LowRankGrf& model, std::uint64_t seed);

}  // namespace graphsamp
