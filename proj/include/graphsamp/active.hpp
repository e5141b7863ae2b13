#pragma once

#include "graphsamp/grf.hpp"
#include "graphsamp/sample_set.hpp"
#include "graphsamp/sampling.hpp"
#include "graphsamp/spectral.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace graphsamp {

// Selection criteria. MaxCutoff with k = 1 is E-optimal design: it minimizes
// the largest eigenvalue of the predictive covariance.
struct MaxCutoff {
    int k = kDefaultPower;
};
struct VOptimal {};
struct SigmaOptimal {};
struct RandomChoice {
    std::uint64_t seed = 0;
};
using Criterion = std::variant<MaxCutoff, VOptimal, SigmaOptimal, RandomChoice>;

/// "maxfreq", "vopt", "sigmaopt" or "random".
std::string criterion_name(const Criterion& c);

/// Result of a greedy design: nodes in selection order and the objective
/// after each addition.
struct GreedyPath {
    IndexList order;
    std::vector<double> objective;

    SampleSet set(Index n) const { return SampleSet(n, order); }
};

/// Greedy minimization of tr(K_{S^c|S}). Requires 0 <= m <= n; ties go to the lowest index.
GreedyPath v_optimal_select(const GrfModel& model, Index m);
/// Greedy minimization of the entry sum of K_{S^c|S}.
GreedyPath sigma_optimal_select(const GrfModel& model, Index m);
/// First m entries of a seeded uniform permutation of the nodes.
IndexList random_select(Index n, Index m, std::uint64_t seed);

/// Dispatches to the criterion; returns nodes in selection order, so prefixes
/// of a larger budget are the selections for smaller budgets.
IndexList select_nodes(const Criterion& c, const Matrix& L, const GrfModel& model, Index m);

/// Labels observed on a sample set, aligned with set().members().
class LabeledSet {
public:
    /// Entries are (node, class id); throws on duplicate nodes or labels outside [0, C).
    LabeledSet(Index n, std::vector<std::pair<Index, int>> entries, int num_classes);
    /// Labels read off a ground-truth vector at the nodes of S.
    static LabeledSet from_truth(const SampleSet& S, const std::vector<int>& truth, int num_classes);

    const SampleSet& set() const { return set_; }
    const std::vector<int>& labels() const { return labels_; }
    int num_classes() const { return num_classes_; }

    /// {0,1} one-vs-rest indicator of class c on the members.
    Vector indicator(int c) const;

private:
    SampleSet set_;
    std::vector<int> labels_;
    int num_classes_ = 0;
};

/// Rank used by bandlimited reconstruction when none is fixed: r = |S|, or
/// r = #{lambda_i < Omega_k(S)}, the bandwidth the sample set is guaranteed to recover.
enum class RankPolicy { SampleSize, Cutoff };

/// Bandlimited reconstruction with the first `rank` eigenvectors; without a
/// fixed rank the policy decides (|S| by default).
struct Bandlimited {
    std::optional<Index> rank;
    RankPolicy policy = RankPolicy::SampleSize;
    int k = kDefaultPower;
};

/// The rank `model` reconstructs with on sample set S (at least 1).
Index bandlimited_rank(const Spectrum& s, const Bandlimited& model, const SampleSet& S);

/// "sample_size" or "cutoff"; parse_rank_policy throws InvalidArgument on other names.
std::string rank_policy_name(RankPolicy p);
RankPolicy parse_rank_policy(std::string_view name);
/// MAP inference on the full-rank field with precision L + delta I.
struct MapFullRank {
    double delta = kDefaultDelta;
};
using LearningModel = std::variant<Bandlimited, MapFullRank>;

std::string model_name(const LearningModel& m);

/// Predicted class per node by one-vs-rest reconstruction and argmax; score
/// ties within 1e-10 go to the lowest class id.
std::vector<int> classify(const Spectrum& s, const Bandlimited& model, const LabeledSet& labeled);
std::vector<int> classify(const GrfModel& model, const LabeledSet& labeled);
std::vector<int> classify(const Spectrum& s, const LearningModel& model, const LabeledSet& labeled);

/// Fraction of nodes outside `exclude` where predicted == truth.
double accuracy(const std::vector<int>& predicted, const std::vector<int>& truth,
                const SampleSet& exclude);

}  // namespace graphsamp
