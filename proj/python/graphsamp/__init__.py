"""Graph signal sampling and active learning on graphs."""

import json as _json

from ._core import (
    Error,
    InvalidArgument,
    IoError,
    NumericalError,
    bl_reconstruct,
    eigendecompose,
    exact_cutoff,
    grf_covariance,
    knn_graph,
    laplacian,
    map_fill,
    omega_estimate,
    predictive_covariance,
    select_max_cutoff,
    sigma_optimal_select,
    v_optimal_select,
)
from ._core import run_classification as _run_classification
from ._core import run_regression as _run_regression


def _as_json(config):
    return config if isinstance(config, str) else _json.dumps(config)


def run_classification(config):
    """Run the classification benchmark for a config dict or JSON string."""
    return _run_classification(_as_json(config))


def run_regression(config):
    """Run the regression benchmark for a config dict or JSON string."""
    return _run_regression(_as_json(config))


__all__ = [
    "Error",
    "InvalidArgument",
    "IoError",
    "NumericalError",
    "bl_reconstruct",
    "eigendecompose",
    "exact_cutoff",
    "grf_covariance",
    "knn_graph",
    "laplacian",
    "map_fill",
    "omega_estimate",
    "predictive_covariance",
    "run_classification",
    "run_regression",
    "select_max_cutoff",
    "sigma_optimal_select",
    "v_optimal_select",
]
