#include "graphsamp/experiment.hpp"

#include "graphsamp/error.hpp"
#include "graphsamp/grf.hpp"
#include "graphsamp/io.hpp"
#include "graphsamp/sampling.hpp"
#include "graphsamp/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <tuple>

namespace graphsamp {

namespace {

using nlohmann::json;

// Stream tags for derive_seed.
constexpr std::uint64_t kStreamData = 1;
constexpr std::uint64_t kStreamRandomCriterion = 2;
constexpr std::uint64_t kStreamSignal = 3;

[[noreturn]] void config_error(const std::string& field, const std::string& reason) {
    throw InvalidArgument("config: field '" + field + "' " + reason);
}

const json& field(const json& j, const std::string& name, const std::string& path = "") {
    const std::string full = path.empty() ? name : path + "." + name;
    if (!j.is_object() || !j.contains(name)) config_error(full, "is missing");
    return j.at(name);
}

template <typename T>
T get(const json& j, const std::string& name, const std::string& path = "") {
    const json& v = field(j, name, path);
    try {
        return v.get<T>();
    } catch (const json::exception&) {
        config_error(path.empty() ? name : path + "." + name, "has the wrong type");
    }
}

std::uint64_t get_seed(const json& j, const std::string& name, const std::string& path = "") {
    const json& v = field(j, name, path);
    if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<long long>() < 0))
        config_error(path.empty() ? name : path + "." + name, "must be a nonnegative integer");
    return v.get<std::uint64_t>();
}

Criterion make_criterion(const std::string& name, int k_power, std::uint64_t random_seed) {
    if (name == "maxfreq") return MaxCutoff{k_power};
    if (name == "vopt") return VOptimal{};
    if (name == "sigmaopt") return SigmaOptimal{};
    if (name == "random") return RandomChoice{random_seed};
    throw InvalidArgument("config: unknown criterion '" + name + "'");
}

bool depends_only_on_graph(const std::string& criterion) { return criterion != "random"; }

struct GraphContext {
    Dataset data;
    Matrix L;
    Spectrum spectrum;
    std::optional<GrfModel> model;
};

GraphContext build_context(Dataset data, const ExperimentConfig& cfg) {
    const Graph g = knn_graph(data.features, cfg.knn, cfg.sigma);
    if (!is_connected(g))
        throw NumericalError("experiment: K-NN graph is disconnected; increase knn (currently " +
                             std::to_string(cfg.knn) + ")");
    GraphContext ctx{std::move(data), laplacian(g), {}, std::nullopt};
    ctx.spectrum = eigendecompose(ctx.L);
    ctx.model.emplace(ctx.spectrum, cfg.delta);
    const Index max_budget = cfg.budgets.back();
    if (max_budget >= ctx.L.rows())
        throw InvalidArgument("config: budget " + std::to_string(max_budget) +
                              " must be smaller than the node count " + std::to_string(ctx.L.rows()));
    return ctx;
}

LearningModel make_model(const std::string& name, const ExperimentConfig& cfg) {
    if (name == "bl") return Bandlimited{std::nullopt, cfg.bl_rank, cfg.k_power};
    if (name == "map") return MapFullRank{cfg.delta};
    throw InvalidArgument("config: unknown model '" + name + "'");
}

SampleSet prefix(const IndexList& order, Index m, Index n) {
    return SampleSet(n, IndexList(order.begin(), order.begin() + m));
}

// Cells are indexed (criterion, model, budget, trial) so output order is fixed
// regardless of evaluation order.
struct Grid {
    const ExperimentConfig& cfg;
    std::map<std::tuple<std::size_t, std::size_t, std::size_t, int, std::string>, double> cells;

    void put(std::size_t c, std::size_t m, std::size_t b, int t, const std::string& metric, double v) {
        cells[{c, m, b, t, metric}] = v;
    }

    ResultTable table(const std::vector<std::string>& metrics) const {
        ResultTable out;
        for (std::size_t c = 0; c < cfg.criteria.size(); ++c)
            for (std::size_t m = 0; m < cfg.models.size(); ++m)
                for (std::size_t b = 0; b < cfg.budgets.size(); ++b)
                    for (int t = 0; t < cfg.trials; ++t)
                        for (const auto& metric : metrics)
                            out.rows.push_back({cfg.criteria[c], cfg.models[m], cfg.budgets[b], t, metric,
                                                cells.at({c, m, b, t, metric})});
        for (std::size_t c = 0; c < cfg.criteria.size(); ++c)
            for (std::size_t m = 0; m < cfg.models.size(); ++m)
                for (std::size_t b = 0; b < cfg.budgets.size(); ++b)
                    for (const auto& metric : metrics) {
                        double sum = 0.0;
                        for (int t = 0; t < cfg.trials; ++t) sum += cells.at({c, m, b, t, metric});
                        out.rows.push_back({cfg.criteria[c], cfg.models[m], cfg.budgets[b], -1,
                                            "mean_" + metric, sum / cfg.trials});
                    }
        return out;
    }
};

std::string csv_escape_free(const std::string& s) {
    if (s.find_first_of(",\n\"") != std::string::npos)
        throw InvalidArgument("result table: field '" + s + "' contains a separator");
    return s;
}

}  // namespace

// --------------------------------------------------------------------------
// Datasets

Dataset generate_blobs(const SyntheticSpec& spec, std::uint64_t seed) {
    if (spec.classes < 1) throw InvalidArgument("synthetic: classes must be >= 1");
    if (spec.per_class < 1) throw InvalidArgument("synthetic: per_class must be >= 1");
    if (spec.dimension < spec.classes)
        throw InvalidArgument("synthetic: dimension must be at least the class count");
    if (!(spec.separation >= 0.0)) throw InvalidArgument("synthetic: separation must be >= 0");

    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const Index n = spec.classes * spec.per_class;
    Dataset d{FeatureMatrix(n, spec.dimension), std::vector<int>(static_cast<std::size_t>(n)), spec.classes};
    for (Index i = 0; i < n; ++i) {
        const int c = static_cast<int>(i / spec.per_class);
        for (Index j = 0; j < spec.dimension; ++j) d.features(i, j) = normal(gen);
        d.features(i, c) += spec.separation;
        d.labels[static_cast<std::size_t>(i)] = c;
    }
    return d;
}

Dataset load_dataset(const std::filesystem::path& features, const std::filesystem::path& labels) {
    Dataset d{io::read_features(features), io::read_labels(labels), 0};
    if (static_cast<Index>(d.labels.size()) != d.features.rows())
        throw InvalidArgument("dataset: " + std::to_string(d.features.rows()) + " feature rows but " +
                              std::to_string(d.labels.size()) + " labels");
    if (d.features.rows() < 2) throw InvalidArgument("dataset: need at least 2 points");
    for (std::size_t i = 0; i < d.labels.size(); ++i)
        if (d.labels[i] < 0)
            throw InvalidArgument("dataset: negative class id on label line " + std::to_string(i + 1));
    d.num_classes = *std::max_element(d.labels.begin(), d.labels.end()) + 1;
    return d;
}

Dataset load_dataset(const DatasetSource& source) {
    if (const auto* s = std::get_if<SyntheticSpec>(&source)) return generate_blobs(*s, s->seed);
    const auto& f = std::get<FileSpec>(source);
    return load_dataset(f.features, f.labels);
}

// --------------------------------------------------------------------------
// Config

ExperimentConfig ExperimentConfig::from_json(const json& j) {
    ExperimentConfig c;
    const json& ds = field(j, "dataset");
    const auto kind = get<std::string>(ds, "kind", "dataset");
    if (kind == "synthetic") {
        SyntheticSpec s;
        s.classes = get<int>(ds, "classes", "dataset");
        s.per_class = get<Index>(ds, "per_class", "dataset");
        s.dimension = get<Index>(ds, "dimension", "dataset");
        s.separation = get<double>(ds, "separation", "dataset");
        s.seed = get_seed(ds, "seed", "dataset");
        s.resample_per_trial = get<bool>(ds, "resample_per_trial", "dataset");
        c.dataset = s;
    } else if (kind == "files") {
        c.dataset = FileSpec{get<std::string>(ds, "features", "dataset"), get<std::string>(ds, "labels", "dataset")};
    } else {
        config_error("dataset.kind", "must be 'synthetic' or 'files'");
    }

    c.knn = get<Index>(j, "knn");
    const json& sigma = field(j, "sigma");
    if (sigma.is_string() && sigma.get<std::string>() == "auto")
        c.sigma = std::nullopt;
    else if (sigma.is_number())
        c.sigma = sigma.get<double>();
    else
        config_error("sigma", "must be a number or \"auto\"");
    c.delta = get<double>(j, "delta");
    c.k_power = get<int>(j, "k_power");
    c.criteria = get<std::vector<std::string>>(j, "criteria");
    c.models = get<std::vector<std::string>>(j, "models");
    const auto bl_rank = get<std::string>(j, "bl_rank");
    try {
        c.bl_rank = parse_rank_policy(bl_rank);
    } catch (const InvalidArgument&) {
        config_error("bl_rank", "must be \"sample_size\" or \"cutoff\"");
    }
    c.budgets = get<std::vector<Index>>(j, "budgets");
    c.trials = get<int>(j, "trials");
    c.seed = get_seed(j, "seed");

    if (j.contains("signal")) {
        const json& sig = j.at("signal");
        const auto skind = get<std::string>(sig, "kind", "signal");
        if (skind == "full")
            c.signal = SignalSpec{};
        else if (skind == "low_rank")
            c.signal = SignalSpec{get<Index>(sig, "rank", "signal")};
        else
            config_error("signal.kind", "must be 'full' or 'low_rank'");
    }
    c.validate();
    return c;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
    auto in = io::open_input(path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw InvalidArgument("config: " + path.string() + ": " + e.what());
    }
    return from_json(j);
}

json ExperimentConfig::to_json() const {
    json j;
    if (const auto* s = std::get_if<SyntheticSpec>(&dataset)) {
        j["dataset"] = {{"kind", "synthetic"},         {"classes", s->classes},
                        {"per_class", s->per_class},   {"dimension", s->dimension},
                        {"separation", s->separation}, {"seed", s->seed},
                        {"resample_per_trial", s->resample_per_trial}};
    } else {
        const auto& f = std::get<FileSpec>(dataset);
        j["dataset"] = {{"kind", "files"}, {"features", f.features.string()}, {"labels", f.labels.string()}};
    }
    j["knn"] = knn;
    if (sigma)
        j["sigma"] = *sigma;
    else
        j["sigma"] = "auto";
    j["delta"] = delta;
    j["k_power"] = k_power;
    j["criteria"] = criteria;
    j["models"] = models;
    j["bl_rank"] = rank_policy_name(bl_rank);
    j["budgets"] = budgets;
    j["trials"] = trials;
    j["seed"] = seed;
    if (signal) {
        if (signal->low_rank)
            j["signal"] = {{"kind", "low_rank"}, {"rank", *signal->low_rank}};
        else
            j["signal"] = {{"kind", "full"}};
    }
    return j;
}

std::string ExperimentConfig::fingerprint() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : to_json().dump()) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void ExperimentConfig::validate() const {
    if (knn < 1) config_error("knn", "must be >= 1");
    if (sigma && !(*sigma > 0.0)) config_error("sigma", "must be positive");
    if (!(delta > 0.0)) config_error("delta", "must be positive");
    if (k_power < 1) config_error("k_power", "must be >= 1");
    if (criteria.empty()) config_error("criteria", "must not be empty");
    for (const auto& c : criteria) make_criterion(c, k_power, 0);
    if (models.empty()) config_error("models", "must not be empty");
    for (const auto& m : models) make_model(m, *this);
    if (budgets.empty()) config_error("budgets", "must not be empty");
    if (budgets.front() < 1) config_error("budgets", "must be positive");
    for (std::size_t i = 1; i < budgets.size(); ++i)
        if (budgets[i] <= budgets[i - 1]) config_error("budgets", "must be strictly increasing");
    if (trials < 1) config_error("trials", "must be >= 1");
    if (signal && signal->low_rank && *signal->low_rank < 1) config_error("signal.rank", "must be >= 1");
    if (const auto* f = std::get_if<FileSpec>(&dataset)) {
        if (!std::filesystem::exists(f->features))
            throw IoError("config: features file '" + f->features.string() + "' does not exist");
        if (!std::filesystem::exists(f->labels))
            throw IoError("config: labels file '" + f->labels.string() + "' does not exist");
    }
}

// --------------------------------------------------------------------------
// Result tables

bool ResultRow::operator==(const ResultRow& o) const {
    const bool same_value = value == o.value || (std::isnan(value) && std::isnan(o.value));
    return criterion == o.criterion && model == o.model && budget == o.budget && trial == o.trial &&
           metric == o.metric && same_value;
}

TableFormat parse_table_format(std::string_view name) {
    if (name == "csv") return TableFormat::Csv;
    if (name == "jsonl" || name == "json-lines") return TableFormat::JsonLines;
    throw InvalidArgument("unknown table format '" + std::string(name) + "' (expected csv or jsonl)");
}

void write_table(std::ostream& out, const ResultTable& table, TableFormat format) {
    if (format == TableFormat::Csv) {
        out << "criterion,model,budget,trial,metric,value\n";
        for (const auto& r : table.rows)
            out << csv_escape_free(r.criterion) << ',' << csv_escape_free(r.model) << ',' << r.budget << ','
                << r.trial << ',' << csv_escape_free(r.metric) << ',' << io::format_double(r.value) << '\n';
        return;
    }
    for (const auto& r : table.rows) {
        json j = {{"criterion", r.criterion}, {"model", r.model}, {"budget", r.budget},
                  {"trial", r.trial},         {"metric", r.metric}};
        if (std::isfinite(r.value))
            j["value"] = r.value;
        else
            j["value"] = io::format_double(r.value);
        out << j.dump() << '\n';
    }
}

ResultTable read_table(std::istream& in, TableFormat format) {
    ResultTable t;
    std::string line;
    std::size_t no = 0;
    while (std::getline(in, line)) {
        ++no;
        if (line.empty()) continue;
        const std::string where = "result table line " + std::to_string(no);
        if (format == TableFormat::Csv) {
            if (no == 1) {
                if (line != "criterion,model,budget,trial,metric,value") throw IoError(where + ": bad header");
                continue;
            }
            std::vector<std::string> f;
            std::stringstream ss(line);
            std::string cell;
            while (std::getline(ss, cell, ',')) f.push_back(cell);
            if (f.size() != 6) throw IoError(where + ": expected 6 fields");
            try {
                t.rows.push_back({f[0], f[1], std::stoll(f[2]), std::stoi(f[3]), f[4], io::parse_double(f[5])});
            } catch (const std::logic_error&) {
                throw IoError(where + ": malformed integer");
            }
        } else {
            try {
                const json j = json::parse(line);
                const json& v = j.at("value");
                t.rows.push_back({j.at("criterion").get<std::string>(), j.at("model").get<std::string>(),
                                  j.at("budget").get<Index>(), j.at("trial").get<int>(),
                                  j.at("metric").get<std::string>(),
                                  v.is_string() ? io::parse_double(v.get<std::string>()) : v.get<double>()});
            } catch (const json::exception& e) {
                throw IoError(where + ": " + e.what());
            }
        }
    }
    return t;
}

void emit(const ResultTable& table, const std::filesystem::path& path, TableFormat format) {
    auto out = io::open_output(path);
    write_table(out, table, format);
    out.flush();
    if (!out) throw IoError("write to '" + path.string() + "' failed");
}

// --------------------------------------------------------------------------
// Benchmarks

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t trial, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32),
                      static_cast<std::uint32_t>(stream)};
    std::uint32_t words[2];
    seq.generate(words, words + 2);
    return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

double snr_db(const Vector& truth, const Vector& estimate) {
    if (truth.size() != estimate.size()) throw InvalidArgument("snr_db: length mismatch");
    const double signal = truth.norm();
    const double error = (truth - estimate).norm();
    if (error <= 1e-12 * signal) return kInfinity;
    return 10.0 * std::log10((signal * signal) / (error * error));
}

ResultTable run_classification(const ExperimentConfig& cfg) {
    cfg.validate();
    const auto* synth = std::get_if<SyntheticSpec>(&cfg.dataset);
    const bool resample = synth && synth->resample_per_trial;
    const Index max_budget = cfg.budgets.back();

    std::optional<GraphContext> fixed;
    if (!resample) fixed = build_context(load_dataset(cfg.dataset), cfg);
    std::map<std::size_t, IndexList> cached_orders;

    Grid grid{cfg, {}};
    for (int t = 0; t < cfg.trials; ++t) {
        std::optional<GraphContext> fresh;
        if (resample) fresh = build_context(generate_blobs(*synth, derive_seed(synth->seed, t, kStreamData)), cfg);
        const GraphContext& ctx = resample ? *fresh : *fixed;
        const Index n = ctx.L.rows();

        for (std::size_t c = 0; c < cfg.criteria.size(); ++c) {
            const std::string& name = cfg.criteria[c];
            IndexList order;
            if (!resample && depends_only_on_graph(name) && cached_orders.count(c)) {
                order = cached_orders[c];
            } else {
                const Criterion crit =
                    make_criterion(name, cfg.k_power, derive_seed(cfg.seed, t, kStreamRandomCriterion));
                order = select_nodes(crit, ctx.L, *ctx.model, max_budget);
                if (!resample && depends_only_on_graph(name)) cached_orders[c] = order;
            }

            for (std::size_t b = 0; b < cfg.budgets.size(); ++b) {
                const SampleSet S = prefix(order, cfg.budgets[b], n);
                const LabeledSet labeled = LabeledSet::from_truth(S, ctx.data.labels, ctx.data.num_classes);
                for (std::size_t m = 0; m < cfg.models.size(); ++m) {
                    const LearningModel model = make_model(cfg.models[m], cfg);
                    const std::vector<int> predicted = std::holds_alternative<MapFullRank>(model)
                                                           ? classify(*ctx.model, labeled)
                                                           : classify(ctx.spectrum, model, labeled);
                    grid.put(c, m, b, t, "accuracy", accuracy(predicted, ctx.data.labels, S));
                }
            }
        }
    }
    return grid.table({"accuracy"});
}

ResultTable run_regression(const ExperimentConfig& cfg) {
    cfg.validate();
    if (!cfg.signal) config_error("signal", "is required for regression runs");
    const GraphContext ctx = build_context(load_dataset(cfg.dataset), cfg);
    const Index n = ctx.L.rows();
    const Index max_budget = cfg.budgets.back();

    std::optional<LowRankGrf> low_rank;
    if (cfg.signal->low_rank) {
        if (*cfg.signal->low_rank > n) config_error("signal.rank", "exceeds the node count");
        low_rank = low_rank_covariance(ctx.spectrum, *cfg.signal->low_rank, cfg.delta);
    }

    std::vector<std::optional<IndexList>> fixed_orders(cfg.criteria.size());
    for (std::size_t c = 0; c < cfg.criteria.size(); ++c)
        if (depends_only_on_graph(cfg.criteria[c]))
            fixed_orders[c] = select_nodes(make_criterion(cfg.criteria[c], cfg.k_power, 0), ctx.L, *ctx.model,
                                           max_budget);

    Grid grid{cfg, {}};
    for (int t = 0; t < cfg.trials; ++t) {
        const std::uint64_t signal_seed = derive_seed(cfg.seed, t, kStreamSignal);
        const Vector f = low_rank ? sample_signal(*low_rank, signal_seed) : sample_signal(*ctx.model, signal_seed);

        for (std::size_t c = 0; c < cfg.criteria.size(); ++c) {
            const IndexList order =
                fixed_orders[c] ? *fixed_orders[c]
                                : select_nodes(make_criterion(cfg.criteria[c], cfg.k_power,
                                                              derive_seed(cfg.seed, t, kStreamRandomCriterion)),
                                               ctx.L, *ctx.model, max_budget);
            for (std::size_t b = 0; b < cfg.budgets.size(); ++b) {
                const SampleSet S = prefix(order, cfg.budgets[b], n);
                const IndexList rest = S.complement();
                const Vector f_S = f(S.members());
                const Vector truth = f(rest);
                for (std::size_t m = 0; m < cfg.models.size(); ++m) {
                    Vector estimate;
                    if (cfg.models[m] == "map")
                        estimate = map_estimate(*ctx.model, S, f_S);
                    else
                        estimate = bl_reconstruct(ctx.spectrum, S, f_S,
                                                  bandlimited_rank(ctx.spectrum, std::get<Bandlimited>(make_model("bl", cfg)), S))(rest);
                    grid.put(c, m, b, t, "snr_db", snr_db(truth, estimate));
                    grid.put(c, m, b, t, "mse", (truth - estimate).squaredNorm() / static_cast<double>(rest.size()));
                }
            }
        }
    }
    return grid.table({"snr_db", "mse"});
}

}  // namespace graphsamp
