#include "graphsamp/active.hpp"

#include "graphsamp/error.hpp"
#include "linalg.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

namespace graphsamp {

namespace {

enum class Objective { Trace, EntrySum };

double objective_of(const Matrix& C, const IndexList& rest, Objective kind) {
    if (rest.empty()) return 0.0;
    const Matrix block = C(rest, rest);
    return kind == Objective::Trace ? block.trace() : block.sum();
}

// Greedy design on the conditional covariance. C holds K_{S^c|S} on the
// unselected rows/columns; adding node v is the rank-one Schur update
// C <- C - c c^T / C(v,v) with c = C(:, v).
GreedyPath greedy_design(const GrfModel& model, Index m, Objective kind, const char* what) {
    const Index n = model.size();
    if (m < 0 || m > n)
        throw InvalidArgument(std::string(what) + ": budget " + std::to_string(m) +
                              " must satisfy 0 <= m <= n (n=" + std::to_string(n) + ")");
    Matrix C = model.covariance();
    std::vector<char> chosen(static_cast<std::size_t>(n), 0);
    GreedyPath path;

    for (Index step = 0; step < m; ++step) {
        IndexList rest;
        for (Index v = 0; v < n; ++v)
            if (!chosen[static_cast<std::size_t>(v)]) rest.push_back(v);
        const double current = objective_of(C, rest, kind);

        // Maximize the reduction, i.e. minimize the objective after adding v.
        detail::ArgMax best(0.0, 1e-12);
        for (Index v : rest) {
            const Vector col = C(rest, v);
            const double reduction =
                kind == Objective::Trace ? col.squaredNorm() / C(v, v) : col.sum() * col.sum() / C(v, v);
            best.offer(v, -(current - reduction));
        }
        const Index v = best.index();
        const Vector c = C.col(v);
        C -= c * c.transpose() / c(v);
        chosen[static_cast<std::size_t>(v)] = 1;
        path.order.push_back(v);

        rest.erase(std::find(rest.begin(), rest.end(), v));
        path.objective.push_back(objective_of(C, rest, kind));
    }
    return path;
}

}  // namespace

std::string criterion_name(const Criterion& c) {
    struct {
        std::string operator()(const MaxCutoff&) const { return "maxfreq"; }
        std::string operator()(const VOptimal&) const { return "vopt"; }
        std::string operator()(const SigmaOptimal&) const { return "sigmaopt"; }
        std::string operator()(const RandomChoice&) const { return "random"; }
    } visitor;
    return std::visit(visitor, c);
}

GreedyPath v_optimal_select(const GrfModel& model, Index m) {
    return greedy_design(model, m, Objective::Trace, "v_optimal_select");
}

GreedyPath sigma_optimal_select(const GrfModel& model, Index m) {
    return greedy_design(model, m, Objective::EntrySum, "sigma_optimal_select");
}

IndexList random_select(Index n, Index m, std::uint64_t seed) {
    if (m < 0 || m > n)
        throw InvalidArgument("random_select: budget " + std::to_string(m) + " outside [0, " +
                              std::to_string(n) + "]");
    IndexList nodes(static_cast<std::size_t>(n));
    std::iota(nodes.begin(), nodes.end(), Index{0});
    // Explicit Fisher-Yates: std::shuffle's draw sequence is implementation-defined.
    std::mt19937_64 gen(seed);
    for (Index i = 0; i < m; ++i) {
        const auto span = static_cast<std::uint64_t>(n - i);
        const auto j = i + static_cast<Index>(gen() % span);
        std::swap(nodes[static_cast<std::size_t>(i)], nodes[static_cast<std::size_t>(j)]);
    }
    nodes.resize(static_cast<std::size_t>(m));
    return nodes;
}

IndexList select_nodes(const Criterion& c, const Matrix& L, const GrfModel& model, Index m) {
    if (m == 0) return {};
    if (const auto* mc = std::get_if<MaxCutoff>(&c)) return greedy_select_max_cutoff(L, m, mc->k).order;
    if (std::holds_alternative<VOptimal>(c)) return v_optimal_select(model, m).order;
    if (std::holds_alternative<SigmaOptimal>(c)) return sigma_optimal_select(model, m).order;
    return random_select(model.size(), m, std::get<RandomChoice>(c).seed);
}

LabeledSet::LabeledSet(Index n, std::vector<std::pair<Index, int>> entries, int num_classes)
    : num_classes_(num_classes) {
    if (num_classes < 1) throw InvalidArgument("labeled set: need at least one class");
    std::sort(entries.begin(), entries.end());
    IndexList nodes;
    for (const auto& [node, label] : entries) {
        if (label < 0 || label >= num_classes)
            throw InvalidArgument("labeled set: label " + std::to_string(label) + " of node " +
                                  std::to_string(node) + " outside [0, " +
                                  std::to_string(num_classes) + ")");
        nodes.push_back(node);
        labels_.push_back(label);
    }
    set_ = SampleSet(n, std::move(nodes));
}

LabeledSet LabeledSet::from_truth(const SampleSet& S, const std::vector<int>& truth, int num_classes) {
    if (static_cast<Index>(truth.size()) != S.ambient())
        throw InvalidArgument("labeled set: truth length does not match sample set");
    std::vector<std::pair<Index, int>> entries;
    for (Index v : S.members()) entries.emplace_back(v, truth[static_cast<std::size_t>(v)]);
    return LabeledSet(S.ambient(), std::move(entries), num_classes);
}

Vector LabeledSet::indicator(int c) const {
    Vector f(static_cast<Index>(labels_.size()));
    for (std::size_t i = 0; i < labels_.size(); ++i) f(static_cast<Index>(i)) = labels_[i] == c ? 1.0 : 0.0;
    return f;
}

std::string model_name(const LearningModel& m) {
    return std::holds_alternative<Bandlimited>(m) ? "bl" : "map";
}

namespace {

std::vector<int> argmax_rows(const Matrix& scores) {
    std::vector<int> out(static_cast<std::size_t>(scores.rows()));
    for (Index i = 0; i < scores.rows(); ++i) {
        detail::ArgMax best(1e-10, 0.0);
        for (Index c = 0; c < scores.cols(); ++c) best.offer(c, scores(i, c));
        out[static_cast<std::size_t>(i)] = static_cast<int>(best.index());
    }
    return out;
}

void require_labels(const LabeledSet& labeled, Index n) {
    if (labeled.set().is_empty()) throw InvalidArgument("classify: empty labeled set");
    if (labeled.set().ambient() != n)
        throw InvalidArgument("classify: labeled set does not match graph size");
}

}  // namespace

Index bandlimited_rank(const Spectrum& s, const Bandlimited& model, const SampleSet& S) {
    if (model.rank) return *model.rank;
    if (model.policy == RankPolicy::SampleSize) return S.size();
    const Matrix L = s.vectors * s.values.asDiagonal() * s.vectors.transpose();
    return std::max<Index>(1, count_below(s, omega_estimate(L, S, model.k).value));
}

std::string rank_policy_name(RankPolicy p) { return p == RankPolicy::Cutoff ? "cutoff" : "sample_size"; }

RankPolicy parse_rank_policy(std::string_view name) {
    if (name == "sample_size") return RankPolicy::SampleSize;
    if (name == "cutoff") return RankPolicy::Cutoff;
    throw InvalidArgument("unknown bandlimited rank policy '" + std::string(name) + "'");
}

std::vector<int> classify(const Spectrum& s, const Bandlimited& model, const LabeledSet& labeled) {
    require_labels(labeled, s.size());
    const Index r = bandlimited_rank(s, model, labeled.set());
    Matrix scores(s.size(), labeled.num_classes());
    for (int c = 0; c < labeled.num_classes(); ++c)
        scores.col(c) = bl_reconstruct(s, labeled.set(), labeled.indicator(c), r);
    return argmax_rows(scores);
}

std::vector<int> classify(const GrfModel& model, const LabeledSet& labeled) {
    require_labels(labeled, model.size());
    Matrix scores(model.size(), labeled.num_classes());
    for (int c = 0; c < labeled.num_classes(); ++c)
        scores.col(c) = map_fill(model, labeled.set(), labeled.indicator(c));
    return argmax_rows(scores);
}

std::vector<int> classify(const Spectrum& s, const LearningModel& model, const LabeledSet& labeled) {
    if (const auto* bl = std::get_if<Bandlimited>(&model)) return classify(s, *bl, labeled);
    return classify(GrfModel(s, std::get<MapFullRank>(model).delta), labeled);
}

double accuracy(const std::vector<int>& predicted, const std::vector<int>& truth,
                const SampleSet& exclude) {
    if (predicted.size() != truth.size())
        throw InvalidArgument("accuracy: predicted and truth lengths differ");
    if (static_cast<Index>(truth.size()) != exclude.ambient())
        throw InvalidArgument("accuracy: exclusion set does not match vector length");
    const IndexList rest = exclude.complement();
    if (rest.empty()) throw InvalidArgument("accuracy: no unlabeled nodes to score");
    Index correct = 0;
    for (Index v : rest)
        if (predicted[static_cast<std::size_t>(v)] == truth[static_cast<std::size_t>(v)]) ++correct;
    return static_cast<double>(correct) / static_cast<double>(rest.size());
}

}  // namespace graphsamp
