#include "graphsamp/grf.hpp"

#include "graphsamp/error.hpp"
#include "linalg.hpp"

#include <random>
#include <string>

namespace graphsamp {

namespace {

void require_delta(double delta) {
    if (!(delta > 0.0) || !std::isfinite(delta))
        throw InvalidArgument("grf: delta must be positive (precision L + delta I is singular)");
}

void require_observations(Index n, const SampleSet& S, const Vector* f_S, const char* what) {
    if (S.ambient() != n)
        throw InvalidArgument(std::string(what) + ": sample set ambient size " +
                              std::to_string(S.ambient()) + " does not match model size " +
                              std::to_string(n));
    if (S.is_empty()) throw InvalidArgument(std::string(what) + ": no observed nodes");
    if (f_S && f_S->size() != S.size())
        throw InvalidArgument(std::string(what) + ": expected " + std::to_string(S.size()) +
                              " observations, got " + std::to_string(f_S->size()));
}

Vector standard_normals(Index count, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector z(count);
    for (Index i = 0; i < count; ++i) z(i) = normal(gen);
    return z;
}

Vector splice(Index n, const SampleSet& S, const Vector& f_S, const Vector& mean) {
    Vector full(n);
    full(S.members()) = f_S;
    full(S.complement()) = mean;
    return full;
}

// Factors of the low-rank blocks: K^_S = B B^T, K^_{S^c S} = C B^T.
struct LowRankBlocks {
    Matrix B;
    Matrix C;
    Matrix pinv_B;       // B^+ with singular values below kRankTol * max dropped
    Matrix row_projector;  // B^+ B
};

LowRankBlocks low_rank_blocks(const LowRankGrf& model, const SampleSet& S) {
    const Vector root = model.variances().array().sqrt();
    LowRankBlocks out;
    out.B = model.basis()(S.members(), Eigen::all) * root.asDiagonal();
    out.C = model.basis()(S.complement(), Eigen::all) * root.asDiagonal();

    Eigen::JacobiSVD<Matrix> svd(out.B, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vector& sv = svd.singularValues();
    const double top = sv.size() ? sv(0) : 0.0;
    Vector inv = Vector::Zero(sv.size());
    for (Index i = 0; i < sv.size(); ++i)
        if (sv(i) > detail::kRankTol * top) inv(i) = 1.0 / sv(i);
    out.pinv_B = svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
    out.row_projector = out.pinv_B * out.B;
    return out;
}

}  // namespace

GrfModel::GrfModel(Spectrum spectrum, double delta) : spectrum_(std::move(spectrum)), delta_(delta) {
    require_delta(delta);
    if (spectrum_.size() && spectrum_.values(0) < -1e-10 * std::max(1.0, spectrum_.max_value()))
        throw InvalidArgument("grf: Laplacian is not positive semi-definite");
    K_ = spectrum_.vectors * variances().asDiagonal() * spectrum_.vectors.transpose();
    K_ = 0.5 * (K_ + K_.transpose()).eval();
}

Vector GrfModel::variances() const { return (spectrum_.values.array() + delta_).inverse(); }

GrfModel covariance(const Spectrum& s, double delta) { return GrfModel(s, delta); }

GrfModel covariance(const Matrix& L, double delta) {
    require_delta(delta);
    return GrfModel(eigendecompose(L), delta);
}

LowRankGrf::LowRankGrf(Matrix basis, Vector variances, double delta)
    : basis_(std::move(basis)), variances_(std::move(variances)), delta_(delta) {
    require_delta(delta);
    if (basis_.cols() < 1) throw InvalidArgument("low-rank grf: rank must be at least 1");
    if (variances_.size() != basis_.cols())
        throw InvalidArgument("low-rank grf: variance count does not match basis rank");
}

Matrix LowRankGrf::dense() const {
    return basis_ * variances_.asDiagonal() * basis_.transpose();
}

LowRankGrf low_rank_covariance(const Spectrum& s, Index r, double delta) {
    require_delta(delta);
    if (r < 1 || r > s.size())
        throw InvalidArgument("low_rank_covariance: rank " + std::to_string(r) +
                              " outside [1, " + std::to_string(s.size()) + "]");
    return LowRankGrf(s.vectors.leftCols(r), (s.values.head(r).array() + delta).inverse(), delta);
}

LowRankGrf low_rank_covariance_below(const Spectrum& s, double omega, double delta) {
    return low_rank_covariance(s, count_below(s, omega), delta);
}

Vector map_estimate(const GrfModel& model, const SampleSet& S, const Vector& f_S) {
    require_observations(model.size(), S, &f_S, "map_estimate");
    if (S.is_full()) return Vector(0);
    const IndexList& obs = S.members();
    const IndexList rest = S.complement();
    const Matrix& K = model.covariance();
    return K(rest, obs) * (detail::pinv_symmetric(K(obs, obs)) * f_S);
}

Vector map_estimate(const LowRankGrf& model, const SampleSet& S, const Vector& f_S) {
    require_observations(model.size(), S, &f_S, "map_estimate");
    if (S.is_full()) return Vector(0);
    // K^_{S^c S} (K^_S)^+ = C B^T (B B^T)^+ = C B^+.
    const LowRankBlocks b = low_rank_blocks(model, S);
    return b.C * (b.pinv_B * f_S);
}

Vector map_fill(const GrfModel& model, const SampleSet& S, const Vector& f_S) {
    return splice(model.size(), S, f_S, map_estimate(model, S, f_S));
}

Vector map_fill(const LowRankGrf& model, const SampleSet& S, const Vector& f_S) {
    return splice(model.size(), S, f_S, map_estimate(model, S, f_S));
}

Matrix predictive_covariance(const GrfModel& model, const SampleSet& S) {
    require_observations(model.size(), S, nullptr, "predictive_covariance");
    if (S.is_full()) return Matrix(0, 0);
    const IndexList& obs = S.members();
    const IndexList rest = S.complement();
    const Matrix& K = model.covariance();
    const Matrix cross = K(rest, obs);
    Matrix cov = K(rest, rest) - cross * detail::pinv_symmetric(K(obs, obs)) * cross.transpose();
    return 0.5 * (cov + cov.transpose());
}

Matrix predictive_covariance(const LowRankGrf& model, const SampleSet& S) {
    require_observations(model.size(), S, nullptr, "predictive_covariance");
    if (S.is_full()) return Matrix(0, 0);
    // C C^T - C B^T (B B^T)^+ B C^T = C (I - B^+ B) C^T.
    const LowRankBlocks b = low_rank_blocks(model, S);
    const Matrix residual = Matrix::Identity(model.rank(), model.rank()) - b.row_projector;
    Matrix cov = b.C * residual * b.C.transpose();
    return 0.5 * (cov + cov.transpose());
}

Posterior posterior(const GrfModel& model, const SampleSet& S, const Vector& f_S) {
    return {map_estimate(model, S, f_S), predictive_covariance(model, S)};
}

Posterior posterior(const LowRankGrf& model, const SampleSet& S, const Vector& f_S) {
    return {map_estimate(model, S, f_S), predictive_covariance(model, S)};
}

Vector sample_signal(const GrfModel& model, std::uint64_t seed) {
    const Vector z = standard_normals(model.size(), seed);
    return model.spectrum().vectors * (model.variances().array().sqrt() * z.array()).matrix();
}

Vector sample_signal(const LowRankGrf& model, std::uint64_t seed) {
    const Vector z = standard_normals(model.rank(), seed);
    return model.basis() * (model.variances().array().sqrt() * z.array()).matrix();
}

}  // namespace graphsamp
