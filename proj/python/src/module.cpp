#include "graphsamp/active.hpp"
#include "graphsamp/error.hpp"
#include "graphsamp/experiment.hpp"
#include "graphsamp/graph.hpp"
#include "graphsamp/grf.hpp"
#include "graphsamp/sampling.hpp"
#include "graphsamp/spectral.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <string>

#include <json.hpp>

namespace py = pybind11;
namespace gs = graphsamp;
using gs::Index;
using gs::IndexList;
using gs::Matrix;
using gs::Vector;

namespace {

gs::SampleSet as_set(const Matrix& L, const IndexList& nodes) { return gs::SampleSet(L.rows(), nodes); }

/// The library orders samples by increasing node; Python callers pair values with `nodes` as given.
Vector sorted_values(const gs::SampleSet& S, const IndexList& nodes, const Vector& values) {
    if (values.size() != static_cast<Index>(nodes.size()))
        throw gs::InvalidArgument("expected " + std::to_string(nodes.size()) + " values, got " +
                                  std::to_string(values.size()));
    Vector out(values.size());
    const IndexList& members = S.members();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto pos = std::lower_bound(members.begin(), members.end(), nodes[i]) - members.begin();
        out(pos) = values(static_cast<Index>(i));
    }
    return out;
}

/// Graph from a symmetric weight matrix with zero diagonal.
gs::Graph graph_from_weights(const Matrix& W) {
    if (W.rows() != W.cols()) throw gs::InvalidArgument("weights must be a square matrix");
    std::vector<gs::Edge> edges;
    for (Index i = 0; i < W.rows(); ++i) {
        if (W(i, i) != 0.0) throw gs::InvalidArgument("weights must have a zero diagonal");
        for (Index j = i + 1; j < W.cols(); ++j) {
            if (W(i, j) != W(j, i)) throw gs::InvalidArgument("weights must be symmetric");
            if (W(i, j) != 0.0) edges.push_back({i, j, W(i, j)});
        }
    }
    return gs::Graph::from_edges(W.rows(), edges);
}

py::list table_rows(const gs::ResultTable& t) {
    py::list out;
    for (const gs::ResultRow& r : t.rows)
        out.append(py::dict(py::arg("criterion") = r.criterion, py::arg("model") = r.model,
                            py::arg("budget") = r.budget, py::arg("trial") = r.trial, py::arg("metric") = r.metric,
                            py::arg("value") = r.value));
    return out;
}

gs::ExperimentConfig config_from(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw gs::InvalidArgument(std::string("config is not valid JSON: ") + e.what());
    }
    gs::ExperimentConfig cfg = gs::ExperimentConfig::from_json(j);
    cfg.validate();
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Graph signal sampling and active learning on graphs";

    // Later registrations are tried first, so the base class goes first.
    const auto base = py::register_exception<gs::Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<gs::InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
    py::register_exception<gs::NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
    py::register_exception<gs::IoError>(m, "IoError", PyExc_OSError);
    static_cast<void>(base);

    m.def(
        "knn_graph",
        [](const Matrix& X, Index k, std::optional<double> sigma) { return gs::knn_graph(X, k, sigma).adjacency(); },
        py::arg("features"), py::arg("k"), py::arg("sigma") = py::none(),
        "Symmetric K-NN weight matrix with Gaussian weights; sigma=None picks the bandwidth automatically.");
    m.def(
        "laplacian", [](const Matrix& W, bool normalized) {
            return gs::laplacian(graph_from_weights(W), normalized ? gs::LaplacianKind::SymmetricNormalized
                                                                   : gs::LaplacianKind::Combinatorial);
        },
        py::arg("weights"), py::arg("normalized") = false, "Graph Laplacian of a symmetric weight matrix.");
    m.def(
        "eigendecompose",
        [](const Matrix& L) {
            gs::Spectrum s = gs::eigendecompose(L);
            return py::make_tuple(s.values, s.vectors);
        },
        py::arg("laplacian"), "Ascending eigenvalues and paired eigenvectors.");

    m.def(
        "omega_estimate", [](const Matrix& L, const IndexList& S, int k) {
            return gs::omega_estimate(L, as_set(L, S), k).value;
        },
        py::arg("laplacian"), py::arg("nodes"), py::arg("k") = gs::kDefaultPower,
        "Cutoff-frequency estimate of a sampling set.");
    m.def(
        "exact_cutoff",
        [](const Matrix& L, const IndexList& S) { return gs::exact_cutoff(gs::eigendecompose(L), as_set(L, S)); },
        py::arg("laplacian"), py::arg("nodes"), "Exact cutoff frequency of a sampling set (dense, small graphs).");
    m.def(
        "select_max_cutoff",
        [](const Matrix& L, Index m, int k) {
            gs::CutoffSelection sel = gs::greedy_select_max_cutoff(L, m, k);
            return py::make_tuple(sel.order, sel.cutoffs);
        },
        py::arg("laplacian"), py::arg("m"), py::arg("k") = gs::kDefaultPower,
        "Greedy sampling set maximizing the cutoff estimate; returns (nodes, cutoff after each step).");
    m.def(
        "bl_reconstruct",
        [](const Matrix& L, const IndexList& S, const Vector& f_S, Index r) {
            const gs::SampleSet set = as_set(L, S);
            return gs::bl_reconstruct(gs::eigendecompose(L), set, sorted_values(set, S, f_S), r);
        },
        py::arg("laplacian"), py::arg("nodes"), py::arg("values"), py::arg("rank"),
        "Bandlimited reconstruction on every node from samples on `nodes`.");

    m.def(
        "grf_covariance", [](const Matrix& L, double delta) { return gs::covariance(L, delta).covariance(); },
        py::arg("laplacian"), py::arg("delta") = gs::kDefaultDelta, "Covariance (L + delta I)^-1.");
    m.def(
        "map_fill",
        [](const Matrix& L, const IndexList& S, const Vector& f_S, double delta) {
            const gs::SampleSet set = as_set(L, S);
            return gs::map_fill(gs::covariance(L, delta), set, sorted_values(set, S, f_S));
        },
        py::arg("laplacian"), py::arg("nodes"), py::arg("values"), py::arg("delta") = gs::kDefaultDelta,
        "Observed values on `nodes`, posterior mean elsewhere.");
    m.def(
        "predictive_covariance",
        [](const Matrix& L, const IndexList& S, double delta) {
            return gs::predictive_covariance(gs::covariance(L, delta), as_set(L, S));
        },
        py::arg("laplacian"), py::arg("nodes"), py::arg("delta") = gs::kDefaultDelta,
        "Posterior covariance of the unobserved nodes, in increasing node order.");
    m.def(
        "v_optimal_select",
        [](const Matrix& L, Index m, double delta) {
            gs::GreedyPath p = gs::v_optimal_select(gs::covariance(L, delta), m);
            return py::make_tuple(p.order, p.objective);
        },
        py::arg("laplacian"), py::arg("m"), py::arg("delta") = gs::kDefaultDelta,
        "Greedy predictive-variance minimization; returns (nodes, trace after each step).");
    m.def(
        "sigma_optimal_select",
        [](const Matrix& L, Index m, double delta) {
            gs::GreedyPath p = gs::sigma_optimal_select(gs::covariance(L, delta), m);
            return py::make_tuple(p.order, p.objective);
        },
        py::arg("laplacian"), py::arg("m"), py::arg("delta") = gs::kDefaultDelta,
        "Greedy predictive-covariance-sum minimization; returns (nodes, sum after each step).");

    m.def(
        "run_classification",
        [](const std::string& config_json) {
            const gs::ExperimentConfig cfg = config_from(config_json);
            gs::ResultTable t;
            {
                py::gil_scoped_release release;
                t = gs::run_classification(cfg);
            }
            return table_rows(t);
        },
        py::arg("config_json"), "Classification benchmark from a JSON config string; returns a list of row dicts.");
    m.def(
        "run_regression",
        [](const std::string& config_json) {
            const gs::ExperimentConfig cfg = config_from(config_json);
            gs::ResultTable t;
            {
                py::gil_scoped_release release;
                t = gs::run_regression(cfg);
            }
            return table_rows(t);
        },
        py::arg("config_json"), "Regression benchmark from a JSON config string; returns a list of row dicts.");
}
