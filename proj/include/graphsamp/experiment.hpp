#pragma once

#include "graphsamp/active.hpp"
#include "graphsamp/graph.hpp"
#include "graphsamp/types.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace graphsamp {

/// Gaussian blobs: class c is centred at separation * e_c with unit isotropic noise.
struct SyntheticSpec {
    int classes = 3;
    Index per_class = 100;
    Index dimension = 3;
    double separation = 3.0;
    std::uint64_t seed = 0;
    /// Draw a fresh dataset for every classification trial.
    bool resample_per_trial = false;
};

struct FileSpec {
    std::filesystem::path features;
    std::filesystem::path labels;
};

using DatasetSource = std::variant<SyntheticSpec, FileSpec>;

struct Dataset {
    FeatureMatrix features;
    std::vector<int> labels;
    int num_classes = 0;
};

/// Rows are class-major: the first per_class rows belong to class 0, and so on.
Dataset generate_blobs(const SyntheticSpec& spec, std::uint64_t seed);
Dataset load_dataset(const std::filesystem::path& features, const std::filesystem::path& labels);
Dataset load_dataset(const DatasetSource& source);

/// Signal model for regression benchmarks: full-rank field, or its rank-r truncation.
struct SignalSpec {
    std::optional<Index> low_rank;
};

/**
 * Declarative benchmark description, read from a single JSON document in
 * which every field is explicit:
 *
 *   {"dataset": {"kind": "synthetic", "classes": 3, "per_class": 100,
 *                "dimension": 3, "separation": 3.0, "seed": 7,
 *                "resample_per_trial": true},
 *    "knn": 10, "sigma": "auto", "delta": 0.01, "k_power": 4,
 *    "criteria": ["maxfreq", "vopt", "sigmaopt", "random"],
 *    "models": ["bl", "map"], "bl_rank": "cutoff", "budgets": [10, 20, 30],
 *    "trials": 20, "seed": 1,
 *    "signal": {"kind": "full"}}
 *
 * A file dataset is {"kind": "files", "features": "x.csv", "labels": "y.txt"}.
 * "bl_rank" is "sample_size" (r = |S|) or "cutoff" (r = #{lambda_i < Omega_k(S)}).
 * "signal" is only read by regression runs ({"kind": "low_rank", "rank": r}
 * draws from the truncated field).
 */
struct ExperimentConfig {
    DatasetSource dataset;
    Index knn = 10;
    Bandwidth sigma;
    double delta = kDefaultDelta;
    int k_power = kDefaultPower;
    std::vector<std::string> criteria;
    std::vector<std::string> models;
    /// Rank policy of the "bl" model.
    RankPolicy bl_rank = RankPolicy::SampleSize;
    std::vector<Index> budgets;
    int trials = 1;
    std::uint64_t seed = 0;
    std::optional<SignalSpec> signal;

    /// Throws InvalidArgument naming the offending field.
    static ExperimentConfig from_json(const nlohmann::json& j);
    static ExperimentConfig load(const std::filesystem::path& path);
    nlohmann::json to_json() const;
    /// Hex FNV-1a digest of the canonical JSON form.
    std::string fingerprint() const;
    void validate() const;
};

struct ResultRow {
    std::string criterion;
    std::string model;
    Index budget = 0;
    int trial = 0;  // -1 marks the across-trial mean
    std::string metric;
    double value = 0.0;

    bool operator==(const ResultRow& o) const;
};

struct ResultTable {
    std::vector<ResultRow> rows;

    bool operator==(const ResultTable&) const = default;
};

enum class TableFormat { Csv, JsonLines };

TableFormat parse_table_format(std::string_view name);

void write_table(std::ostream& out, const ResultTable& table, TableFormat format);
ResultTable read_table(std::istream& in, TableFormat format);
/// Writes the table to `path`; IoError names the path and cause.
void emit(const ResultTable& table, const std::filesystem::path& path, TableFormat format);

/// Deterministic per-stream seed from (master seed, trial index, stream tag).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t trial, std::uint64_t stream);

/// 10 log10(|f|^2 / |f - f^|^2); +infinity when the error is at most 1e-12 |f|.
double snr_db(const Vector& truth, const Vector& estimate);

/**
 * Active classification benchmark. For every trial, criterion, model and
 * budget: select S, reveal the true labels on S, classify by one-vs-rest
 * reconstruction and record the accuracy on the unlabeled nodes.
 *
 * Rows come in (criterion, model, budget, trial) order with metric "accuracy",
 * followed by "mean_accuracy" rows (trial -1) in the same grid order.
 */
ResultTable run_classification(const ExperimentConfig& config);

/**
 * Regression benchmark on the graph built from the dataset: per trial, draw a
 * signal from the field (config.signal), reconstruct it from each selected S
 * with each model and record "snr_db" and "mse" on S^c, then the across-trial
 * "mean_snr_db" and "mean_mse" rows.
 */
ResultTable run_regression(const ExperimentConfig& config);

}  // namespace graphsamp
