#include "graphsamp/active.hpp"
#include "graphsamp/error.hpp"
#include "graphsamp/graph.hpp"
#include "support/fixtures.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

using namespace graphsamp;
using graphsamp::testing::covariance_oracle;
using graphsamp::testing::path3;
using graphsamp::testing::random_connected;
using graphsamp::testing::schur_oracle;

namespace {

const Matrix kP3 = laplacian(path3());

bool contains(const IndexList& xs, Index v) { return std::find(xs.begin(), xs.end(), v) != xs.end(); }

double trace_after(const Matrix& K, const IndexList& chosen) {
    const SampleSet S(K.rows(), chosen);
    return S.is_full() ? 0.0 : schur_oracle(K, S).trace();
}

double sum_after(const Matrix& K, const IndexList& chosen) {
    const SampleSet S(K.rows(), chosen);
    return S.is_full() ? 0.0 : schur_oracle(K, S).sum();
}

std::vector<int> random_labels(Index n, int classes, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_int_distribution<int> pick(0, classes - 1);
    std::vector<int> y(static_cast<std::size_t>(n));
    for (auto& v : y) v = pick(gen);
    return y;
}

}  // namespace

TEST_CASE("criterion and model names") {
    CHECK(criterion_name(MaxCutoff{}) == "maxfreq");
    CHECK(criterion_name(VOptimal{}) == "vopt");
    CHECK(criterion_name(SigmaOptimal{}) == "sigmaopt");
    CHECK(criterion_name(RandomChoice{3}) == "random");
    CHECK(model_name(Bandlimited{}) == "bl");
    CHECK(model_name(MapFullRank{}) == "map");
}

TEST_CASE("greedy designs: P3 fixtures") {
    const GrfModel model = covariance(kP3, 1.0);
    // Every trace reduction is 3/4; the tie goes to the lowest index.
    const GreedyPath v = v_optimal_select(model, 1);
    CHECK(v.order == IndexList{0});
    CHECK(v.objective[0] == doctest::Approx(1.0));
    // Entry-sum reductions are 8/5, 2, 8/5.
    const GreedyPath s = sigma_optimal_select(model, 1);
    CHECK(s.order == IndexList{1});
    CHECK(s.objective[0] == doctest::Approx(1.0));

    const GrfModel pair = covariance(laplacian(testing::single_edge()), 0.5);
    CHECK(v_optimal_select(pair, 1).order == IndexList{0});
    CHECK(sigma_optimal_select(pair, 1).order == IndexList{0});

    const GreedyPath all = v_optimal_select(model, 3);
    CHECK(all.set(3) == SampleSet::all(3));
    CHECK(all.objective.back() == 0.0);
    CHECK(v_optimal_select(model, 0).order.empty());
    CHECK_THROWS_AS(v_optimal_select(model, 4), InvalidArgument);
    CHECK_THROWS_AS(sigma_optimal_select(model, -1), InvalidArgument);
}

TEST_CASE("greedy designs: prefix objectives and per-step optimality by enumeration") {
    for (int g = 0; g < 12; ++g) {
        const Index n = 4 + g % 5;
        const Matrix L = laplacian(random_connected(n, 2000 + g));
        const double delta = g % 2 ? 0.01 : 1.0;
        const GrfModel model = covariance(L, delta);
        const Matrix K = covariance_oracle(L, delta);

        for (bool trace : {true, false}) {
            const GreedyPath path = trace ? v_optimal_select(model, n) : sigma_optimal_select(model, n);
            auto objective = [&](const IndexList& c) { return trace ? trace_after(K, c) : sum_after(K, c); };
            IndexList prefix;
            for (std::size_t step = 0; step < path.order.size(); ++step) {
                double best = kInfinity;
                for (Index v = 0; v < n; ++v) {
                    if (contains(prefix, v)) continue;
                    IndexList t = prefix;
                    t.push_back(v);
                    best = std::min(best, objective(t));
                }
                prefix.push_back(path.order[step]);
                const double got = objective(prefix);
                CHECK(std::abs(path.objective[step] - got) <= 1e-8 * std::max(1.0, std::abs(got)));
                CHECK(got <= best + 1e-8 * std::max(1.0, std::abs(best)));
            }
            if (trace)
                for (std::size_t i = 1; i < path.objective.size(); ++i)
                    CHECK(path.objective[i] <= path.objective[i - 1] + 1e-12);
        }
    }
}

TEST_CASE("MaxCutoff(1) greedy is greedy on the worst-case predictive variance") {
    for (int g = 0; g < 10; ++g) {
        const Index n = 5 + g % 5;
        const Matrix L = laplacian(random_connected(n, 2100 + g));
        const GrfModel model = covariance(L, 0.01);
        const Matrix K = covariance_oracle(L, 0.01);
        const IndexList fast = select_nodes(MaxCutoff{1}, L, model, n - 1);
        IndexList prefix;
        for (Index v : fast) {
            double best = kInfinity;
            for (Index u = 0; u < n; ++u) {
                if (contains(prefix, u)) continue;
                IndexList t = prefix;
                t.push_back(u);
                best = std::min(best, testing::lambda_max(schur_oracle(K, SampleSet(n, t))));
            }
            prefix.push_back(v);
            const double got = testing::lambda_max(schur_oracle(K, SampleSet(n, prefix)));
            CHECK(got <= best * (1.0 + 1e-8));
        }
    }
}

TEST_CASE("random_select: seeded permutation prefixes") {
    const IndexList a = random_select(50, 20, 9);
    CHECK(a == random_select(50, 20, 9));
    CHECK(a != random_select(50, 20, 10));
    CHECK(std::set<Index>(a.begin(), a.end()).size() == 20);
    for (Index v : a) CHECK((v >= 0 && v < 50));
    const IndexList b = random_select(50, 35, 9);
    CHECK(std::equal(a.begin(), a.end(), b.begin()));
    CHECK(random_select(5, 5, 1).size() == 5);
    CHECK_THROWS_AS(random_select(5, 6, 1), InvalidArgument);
}

TEST_CASE("select_nodes dispatches and keeps selection order") {
    const Matrix L = laplacian(random_connected(9, 2200));
    const GrfModel model = covariance(L, 0.01);
    CHECK(select_nodes(VOptimal{}, L, model, 4) == v_optimal_select(model, 4).order);
    CHECK(select_nodes(SigmaOptimal{}, L, model, 4) == sigma_optimal_select(model, 4).order);
    CHECK(select_nodes(MaxCutoff{4}, L, model, 4) == greedy_select_max_cutoff(L, 4, 4).order);
    CHECK(select_nodes(RandomChoice{77}, L, model, 4) == random_select(9, 4, 77));
    CHECK(select_nodes(MaxCutoff{2}, L, model, 0).empty());
}

TEST_CASE("LabeledSet validation") {
    const LabeledSet ok(4, {{3, 1}, {0, 0}}, 2);
    CHECK(ok.set().members() == IndexList{0, 3});
    CHECK(ok.labels() == std::vector<int>{0, 1});
    CHECK(ok.indicator(1) == (Vector(2) << 0, 1).finished());
    CHECK_THROWS_AS(LabeledSet(4, {{0, 2}}, 2), InvalidArgument);
    CHECK_THROWS_AS(LabeledSet(4, {{0, -1}}, 2), InvalidArgument);
    CHECK_THROWS_AS(LabeledSet(4, {{0, 0}, {0, 1}}, 2), InvalidArgument);
    CHECK_THROWS_AS(LabeledSet(4, {{4, 0}}, 2), InvalidArgument);
}

TEST_CASE("classify: P3 with a symmetric tie") {
    const Spectrum s = eigendecompose(kP3);
    const LabeledSet labeled(3, {{0, 0}, {2, 1}}, 2);
    // Scores at the middle node are 1/2 for both classes.
    const std::vector<int> expected{0, 0, 1};
    CHECK(classify(s, Bandlimited{}, labeled) == expected);
    CHECK(classify(covariance(s, 1.0), labeled) == expected);
    CHECK(classify(s, LearningModel{MapFullRank{0.01}}, labeled) == expected);
    CHECK_THROWS_AS(classify(s, Bandlimited{}, LabeledSet(3, {}, 2)), InvalidArgument);
}

TEST_CASE("accuracy") {
    const SampleSet S(5, {0});
    CHECK(accuracy({0, 1, 1, 0, 2}, {0, 1, 1, 0, 2}, S) == 1.0);
    CHECK(accuracy({0, 0, 0, 0, 0}, {0, 1, 1, 1, 1}, S) == 0.0);
    CHECK(accuracy({9, 1, 1, 0, 0}, {0, 1, 1, 0, 2}, S) == 0.75);
    CHECK_THROWS_AS(accuracy({0, 1}, {0, 1, 2}, S), InvalidArgument);
    CHECK_THROWS_AS(accuracy({0, 1, 1}, {0, 1, 1}, SampleSet::all(3)), InvalidArgument);
}

TEST_CASE("classify is equivariant under relabelling classes") {
    for (int g = 0; g < 8; ++g) {
        const Index n = 12;
        const Matrix L = laplacian(random_connected(n, 2300 + g));
        const Spectrum s = eigendecompose(L);
        const std::vector<int> truth = random_labels(n, 3, 50 + g);
        const SampleSet S(n, random_select(n, 6, 60 + g));
        const std::vector<int> perm{2, 0, 1};
        std::vector<int> relabelled(truth.size());
        for (std::size_t i = 0; i < truth.size(); ++i) relabelled[i] = perm[static_cast<std::size_t>(truth[i])];

        for (const LearningModel& model : {LearningModel{Bandlimited{}}, LearningModel{MapFullRank{0.01}}}) {
            std::vector<int> a;
            try {
                a = classify(s, model, LabeledSet::from_truth(S, truth, 3));
            } catch (const NumericalError&) {
                continue;  // sample set not a uniqueness set for rank |S|
            }
            const std::vector<int> b = classify(s, model, LabeledSet::from_truth(S, relabelled, 3));
            for (std::size_t i = 0; i < a.size(); ++i) CHECK(b[i] == perm[static_cast<std::size_t>(a[i])]);
        }
    }
}

TEST_CASE("full budget reproduces the labels for every criterion and model") {
    const Index n = 10;
    const Matrix L = laplacian(random_connected(n, 2400));
    const Spectrum s = eigendecompose(L);
    const GrfModel model = covariance(s, 0.01);
    const std::vector<int> truth = random_labels(n, 3, 70);
    for (const Criterion& c : {Criterion{MaxCutoff{4}}, Criterion{VOptimal{}}, Criterion{SigmaOptimal{}},
                               Criterion{RandomChoice{5}}}) {
        const SampleSet S(n, select_nodes(c, L, model, n));
        CHECK(S.is_full());
        for (const LearningModel& m : {LearningModel{Bandlimited{}}, LearningModel{MapFullRank{0.01}}})
            CHECK(classify(s, m, LabeledSet::from_truth(S, truth, 3)) == truth);
    }
}
