// graphsamp: command-line front end for graph sampling, GRF inference and
// the active-learning benchmarks.
//
// Exit codes: 0 success, 2 configuration/input error, 3 numerical failure,
// 4 I/O failure.

#include "graphsamp/active.hpp"
#include "graphsamp/error.hpp"
#include "graphsamp/experiment.hpp"
#include "graphsamp/graph.hpp"
#include "graphsamp/grf.hpp"
#include "graphsamp/io.hpp"
#include "graphsamp/sampling.hpp"
#include "graphsamp/spectral.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

namespace gs = graphsamp;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

struct Common {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string format = "csv";
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--config", c.config, "JSON experiment configuration");
    cmd->add_option("--seed", c.seed, "Master seed (overrides the configuration)");
    cmd->add_option("--out", c.out, "Output path (default: standard output)");
    cmd->add_option("--format", c.format, "Table format: csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
}

void with_output(const std::string& path, const std::function<void(std::ostream&)>& write) {
    if (path.empty()) {
        write(std::cout);
        std::cout.flush();
        return;
    }
    auto out = gs::io::open_output(path);
    write(out);
    out.flush();
    if (!out) throw gs::IoError("write to '" + path + "' failed");
}

gs::Criterion parse_criterion(const std::string& name, int k, std::uint64_t seed) {
    if (name == "maxfreq") return gs::MaxCutoff{k};
    if (name == "vopt") return gs::VOptimal{};
    if (name == "sigmaopt") return gs::SigmaOptimal{};
    return gs::RandomChoice{seed};
}

gs::ExperimentConfig bench_config(const Common& c) {
    if (c.config.empty()) throw gs::InvalidArgument("--config is required");
    auto cfg = gs::ExperimentConfig::load(c.config);
    if (c.seed) cfg.seed = *c.seed;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Graph signal sampling, GRF inference and active-learning benchmarks"};
    app.require_subcommand(1);

    // build-graph
    Common bg;
    std::string features;
    gs::Index knn = 10;
    std::string sigma = "auto";
    auto* build = app.add_subcommand("build-graph", "Build a K-NN graph from a feature file and write an edge list");
    add_common(build, bg);
    build->add_option("--features", features, "Comma-separated feature file");
    build->add_option("--knn", knn, "Neighbour count K");
    build->add_option("--sigma", sigma, "Gaussian bandwidth or 'auto'");

    // select / label-select
    Common sel;
    std::string graph_path;
    gs::Index budget = 0;
    int k_power = gs::kDefaultPower;
    std::string criterion = "maxfreq";
    double delta = gs::kDefaultDelta;
    auto* select = app.add_subcommand("select", "Greedy sampling set maximizing the cutoff estimate");
    add_common(select, sel);
    select->add_option("--graph", graph_path, "Edge-list file")->required();
    select->add_option("--budget", budget, "Number of nodes to select")->required();
    select->add_option("--k", k_power, "Power k of the cutoff estimate");
    select->add_option("--criterion", criterion, "Selection criterion")->check(CLI::IsMember({"maxfreq"}));

    auto* label_select = app.add_subcommand("label-select", "Choose nodes to label under an active-learning criterion");
    add_common(label_select, sel);
    label_select->add_option("--graph", graph_path, "Edge-list file")->required();
    label_select->add_option("--budget", budget, "Number of nodes to select")->required();
    label_select->add_option("--k", k_power, "Power k for maxfreq");
    label_select->add_option("--delta", delta, "GRF regularizer for vopt/sigmaopt");
    label_select->add_option("--criterion", criterion, "maxfreq, vopt, sigmaopt or random")
        ->check(CLI::IsMember({"maxfreq", "vopt", "sigmaopt", "random"}));

    // reconstruct / infer
    Common rec;
    std::string samples_path;
    gs::Index rank = 0;
    std::optional<double> omega;
    bool with_covariance = false;
    auto* reconstruct = app.add_subcommand("reconstruct", "Bandlimited least-squares reconstruction from samples");
    add_common(reconstruct, rec);
    reconstruct->add_option("--graph", graph_path, "Edge-list file")->required();
    reconstruct->add_option("--samples", samples_path, "File of 'node,value' lines")->required();
    auto* rank_opt = reconstruct->add_option("--rank", rank, "Number of leading eigenvectors");
    reconstruct->add_option("--omega", omega, "Bandwidth; rank = #{lambda_i < omega}")->excludes(rank_opt);

    auto* infer = app.add_subcommand("infer", "GRF posterior mean (and covariance) given samples");
    add_common(infer, rec);
    infer->add_option("--graph", graph_path, "Edge-list file")->required();
    infer->add_option("--samples", samples_path, "File of 'node,value' lines")->required();
    infer->add_option("--delta", delta, "GRF regularizer");
    infer->add_option("--rank", rank, "Low-rank truncation (0 = full rank)");
    infer->add_flag("--with-covariance", with_covariance, "Also emit the predictive covariance");

    // classify
    Common cls;
    std::string labels_path;
    std::string model = "bl";
    int classes = 0;
    auto* classify = app.add_subcommand("classify", "Predict a class per node from labelled nodes");
    add_common(classify, cls);
    classify->add_option("--graph", graph_path, "Edge-list file")->required();
    classify->add_option("--labels", labels_path, "File of 'node,class' lines")->required();
    classify->add_option("--model", model, "bl or map")->check(CLI::IsMember({"bl", "map"}));
    classify->add_option("--delta", delta, "GRF regularizer for map");
    classify->add_option("--rank", rank, "Fixed bandlimited rank (0 = use --bl-rank)");
    std::string bl_rank = "sample_size";
    classify->add_option("--bl-rank", bl_rank, "Rank policy without --rank: sample_size or cutoff")
        ->check(CLI::IsMember({"sample_size", "cutoff"}));
    classify->add_option("--k", k_power, "Power k of the cutoff estimate for --bl-rank cutoff");
    classify->add_option("--classes", classes, "Class count (0 = largest label + 1)");

    // benchmarks
    Common bench;
    auto* bench_classify = app.add_subcommand("bench-classify", "Active classification benchmark");
    add_common(bench_classify, bench);
    auto* bench_regress = app.add_subcommand("bench-regress", "Random-signal regression benchmark");
    add_common(bench_regress, bench);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*build) {
            gs::FeatureMatrix X;
            gs::Bandwidth bw;
            if (!bg.config.empty()) {
                const auto cfg = gs::ExperimentConfig::load(bg.config);
                X = gs::load_dataset(cfg.dataset).features;
                knn = cfg.knn;
                bw = cfg.sigma;
            } else {
                if (features.empty()) throw gs::InvalidArgument("build-graph needs --features or --config");
                X = gs::io::read_features(features);
                if (sigma != "auto") bw = gs::io::parse_double(sigma);
            }
            const gs::Graph g = gs::knn_graph(X, knn, bw);
            with_output(bg.out, [&](std::ostream& os) { gs::io::write_edge_list(os, g); });
        } else if (*select || *label_select) {
            const gs::Graph g = gs::io::read_edge_list(graph_path);
            const gs::Matrix L = gs::laplacian(g);
            if (!gs::is_connected(g)) throw gs::NumericalError("graph is disconnected");
            const std::uint64_t seed = sel.seed.value_or(0);
            std::string summary;
            gs::IndexList order;
            if (criterion == "maxfreq") {
                const auto result = gs::greedy_select_max_cutoff(L, budget, k_power);
                order = result.order;
                summary = "omega_k=" + gs::io::format_double(result.cutoff());
            } else if (criterion == "vopt" || criterion == "sigmaopt") {
                const gs::GrfModel grf = gs::covariance(L, delta);
                const auto path = criterion == "vopt" ? gs::v_optimal_select(grf, budget)
                                                      : gs::sigma_optimal_select(grf, budget);
                order = path.order;
                const double last = path.objective.empty() ? 0.0 : path.objective.back();
                summary = (criterion == "vopt" ? "trace=" : "sum=") + gs::io::format_double(last);
            } else {
                order = gs::random_select(g.size(), budget, seed);
            }
            with_output(sel.out, [&](std::ostream& os) {
                for (gs::Index v : order) os << v << '\n';
                if (!summary.empty()) os << summary << '\n';
            });
        } else if (*reconstruct) {
            const gs::Graph g = gs::io::read_edge_list(graph_path);
            const gs::Spectrum s = gs::eigendecompose(gs::laplacian(g));
            const auto obs = gs::io::read_observations(samples_path, g.size());
            const gs::Index r = omega ? gs::count_below(s, *omega) : (rank > 0 ? rank : obs.set.size());
            const gs::Vector f = gs::bl_reconstruct(s, obs.set, obs.values, r);
            with_output(rec.out, [&](std::ostream& os) { gs::io::write_vector(os, f); });
        } else if (*infer) {
            const gs::Graph g = gs::io::read_edge_list(graph_path);
            const gs::Spectrum s = gs::eigendecompose(gs::laplacian(g));
            const auto obs = gs::io::read_observations(samples_path, g.size());
            gs::Vector mean;
            gs::Matrix cov;
            if (rank > 0) {
                const gs::LowRankGrf grf = gs::low_rank_covariance(s, rank, delta);
                mean = gs::map_fill(grf, obs.set, obs.values);
                if (with_covariance) cov = gs::predictive_covariance(grf, obs.set);
            } else {
                const gs::GrfModel grf = gs::covariance(s, delta);
                mean = gs::map_fill(grf, obs.set, obs.values);
                if (with_covariance) cov = gs::predictive_covariance(grf, obs.set);
            }
            with_output(rec.out, [&](std::ostream& os) {
                gs::io::write_vector(os, mean);
                if (with_covariance) {
                    os << '\n';
                    gs::io::write_matrix(os, cov);
                }
            });
        } else if (*classify) {
            const gs::Graph g = gs::io::read_edge_list(graph_path);
            const gs::Spectrum s = gs::eigendecompose(gs::laplacian(g));
            auto entries = gs::io::read_node_labels(labels_path);
            int c = classes;
            if (c == 0)
                for (const auto& e : entries) c = std::max(c, e.second + 1);
            const gs::LabeledSet labeled(g.size(), std::move(entries), std::max(c, 1));
            std::vector<int> predicted;
            if (model == "map") {
                predicted = gs::classify(gs::covariance(s, delta), labeled);
            } else {
                gs::Bandlimited bl;
                bl.policy = gs::parse_rank_policy(bl_rank);
                bl.k = k_power;
                if (rank > 0) bl.rank = rank;
                predicted = gs::classify(s, bl, labeled);
            }
            with_output(cls.out, [&](std::ostream& os) {
                for (int p : predicted) os << p << '\n';
            });
        } else if (*bench_classify || *bench_regress) {
            const auto cfg = bench_config(bench);
            std::cerr << "config fingerprint " << cfg.fingerprint() << '\n';
            const gs::ResultTable table = *bench_classify ? gs::run_classification(cfg) : gs::run_regression(cfg);
            const auto format = gs::parse_table_format(bench.format);
            if (bench.out.empty())
                gs::write_table(std::cout, table, format);
            else
                gs::emit(table, bench.out, format);
        }
    } catch (const gs::InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const gs::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const gs::IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kExitIo;
    }
    return 0;
}
