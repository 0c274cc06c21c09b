"""Exact Gaussian process regression with an RBF kernel.

Hyperparameters may be fixed or "auto"; auto values are chosen by
maximizing the log marginal likelihood over a deterministic log-spaced
grid (7 candidates per hyperparameter spanning 1e-2..1e2 relative to the
data scale), so fits need no kernel-derivative code and are reproducible.
Features are standardized internally; the scaler is stored in the state.
"""

from __future__ import annotations

import itertools

import numpy as np

from uqkit.core.data import Dataset, RegressionPrediction, REGRESSION
from uqkit.core.registry import Algorithm, Param, register_algorithm
from uqkit.errors import DegenerateData
from uqkit.intrinsic.scaling import apply_scaler, fit_scaler
from uqkit.numerics.gaussian import central_interval_z
from uqkit.numerics.linalg import cholesky_factor
from uqkit.numerics.rng import RngStream

ALGORITHM_ID = "gp_regression"
_AUTO = "auto"
_GRID_POINTS = 7


def _positive_or_auto(value) -> bool:
    if value == _AUTO:
        return True
    return isinstance(value, (int, float)) and value > 0


GP_SCHEMA = {
    "signal_variance": Param(_AUTO, "positive number or 'auto'", _positive_or_auto),
    "lengthscale": Param(_AUTO, "positive number or 'auto'", _positive_or_auto),
    "noise_variance": Param(_AUTO, "positive number or 'auto'", _positive_or_auto),
    "auto_grid": Param(None, "mapping of hyperparameter name to candidate list",
                       lambda v: v is None or isinstance(v, dict)),
    "interval_mass": Param(0.95, "number in (0, 1)",
                           lambda v: isinstance(v, (int, float)) and 0 < v < 1),
}


def _sq_dists(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    diff = a[:, None, :] - b[None, :, :]
    return np.sum(diff * diff, axis=2)


def rbf_kernel(a: np.ndarray, b: np.ndarray, signal_variance: float,
               lengthscale: float) -> np.ndarray:
    return signal_variance * np.exp(-_sq_dists(a, b) / (2.0 * lengthscale ** 2))


def log_marginal_likelihood(x: np.ndarray, y: np.ndarray, signal_variance: float,
                            lengthscale: float, noise_variance: float) -> float:
    n = x.shape[0]
    gram = rbf_kernel(x, x, signal_variance, lengthscale) + noise_variance * np.eye(n)
    chol = cholesky_factor(gram)
    alpha = np.linalg.solve(chol.T, np.linalg.solve(chol, y))
    log_det = 2.0 * np.sum(np.log(np.diag(chol)))
    return float(-0.5 * y @ alpha - 0.5 * log_det - 0.5 * n * np.log(2.0 * np.pi))


def _candidate_grid(config: dict, x: np.ndarray, y: np.ndarray) -> dict[str, list[float]]:
    base = np.logspace(-2, 2, _GRID_POINTS)
    y_var = float(np.var(y))
    y_scale = y_var if y_var > 0 else 1.0
    defaults = {
        "signal_variance": (base * y_scale).tolist(),
        "lengthscale": (base * np.sqrt(x.shape[1])).tolist(),
        "noise_variance": (base * y_scale).tolist(),
    }
    override = config.get("auto_grid") or {}
    grids: dict[str, list[float]] = {}
    for name in ("signal_variance", "lengthscale", "noise_variance"):
        if config[name] != _AUTO:
            grids[name] = [float(config[name])]
        else:
            grids[name] = [float(v) for v in override.get(name, defaults[name])]
            if not grids[name]:
                raise DegenerateData(f"auto grid for {name} is empty")
    return grids


def gp_fit_state(config: dict, train: Dataset, rng: RngStream) -> dict:
    any_auto = any(config[k] == _AUTO for k in
                   ("signal_variance", "lengthscale", "noise_variance"))
    if any_auto and train.n < 2:
        raise DegenerateData("auto GP hyperparameters need at least 2 training points")

    scaler = fit_scaler(train.features)
    x = apply_scaler(scaler, train.features)
    y = train.target

    grids = _candidate_grid(config, x, y)
    best = None
    best_lml = -np.inf
    for s2, ell, noise in itertools.product(grids["signal_variance"],
                                            grids["lengthscale"],
                                            grids["noise_variance"]):
        lml = log_marginal_likelihood(x, y, s2, ell, noise)
        if lml > best_lml:
            best_lml = lml
            best = (s2, ell, noise)
    s2, ell, noise = best  # grid is never empty
    return {
        "scaler": scaler,
        "x_train": x.tolist(),
        "y_train": y.tolist(),
        "signal_variance": s2,
        "lengthscale": ell,
        "noise_variance": noise,
        "log_marginal_likelihood": best_lml,
        "interval_mass": config["interval_mass"],
    }


def gp_predict_from_state(config: dict, state: dict, features: np.ndarray,
                          rng: RngStream) -> RegressionPrediction:
    x_train = np.asarray(state["x_train"])
    y_train = np.asarray(state["y_train"])
    x_test = apply_scaler(state["scaler"], features)
    s2 = state["signal_variance"]
    ell = state["lengthscale"]
    noise = state["noise_variance"]

    gram = rbf_kernel(x_train, x_train, s2, ell) + noise * np.eye(x_train.shape[0])
    chol = cholesky_factor(gram)
    alpha = np.linalg.solve(chol.T, np.linalg.solve(chol, y_train))
    k_star = rbf_kernel(x_test, x_train, s2, ell)
    mean = k_star @ alpha

    v = np.linalg.solve(chol, k_star.T)
    variance = s2 - np.sum(v * v, axis=0) + noise
    variance = np.maximum(variance, 0.0)
    std = np.sqrt(variance)

    z = central_interval_z(state["interval_mass"])
    return RegressionPrediction(y_hat=mean, y_lower=mean - z * std,
                                y_upper=mean + z * std, y_std=std)


def gp_fit_predict(config_params: dict, train: Dataset,
                   test_features: np.ndarray) -> RegressionPrediction:
    """One-shot fit and predict (the GP has no sampling, so no rng)."""
    from uqkit.core.registry import EstimatorConfig, fit, predict

    model = fit(EstimatorConfig(ALGORITHM_ID, config_params), train, RngStream(0))
    return predict(model, test_features)


register_algorithm(Algorithm(
    algorithm_id=ALGORITHM_ID,
    task_kind=REGRESSION,
    schema=GP_SCHEMA,
    fit_state=gp_fit_state,
    predict_from_state=gp_predict_from_state,
    min_train_size=1,
))
