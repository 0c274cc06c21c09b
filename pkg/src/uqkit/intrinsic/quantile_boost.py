"""Gradient-boosted quantile regression.

Fits three boosted tree ensembles under pinball loss at the quantiles
(1-alpha)/2, 0.5, and (1+alpha)/2, so predictions come back as a
(median, lower, upper) triple. Crossing intervals are repaired by
sorting the three predicted quantiles per point. Trees see raw
(unstandardized) features.
"""

from __future__ import annotations

import numpy as np

from uqkit.core.data import Dataset, REGRESSION, RegressionPrediction
from uqkit.core.registry import Algorithm, Param, register_algorithm
from uqkit.errors import DegenerateData
from uqkit.numerics.rng import RngStream
from uqkit.trees import BoostedTrees

ALGORITHM_ID = "quantile_boost"


def _count(minimum):
    return lambda v: isinstance(v, int) and not isinstance(v, bool) and v >= minimum


QUANTILE_BOOST_SCHEMA = {
    "alpha": Param(0.95, "number in (0, 1)",
                   lambda v: isinstance(v, (int, float)) and 0 < v < 1),
    "n_estimators": Param(20, "integer >= 1", _count(1)),
    "max_depth": Param(3, "integer >= 1", _count(1)),
    "learning_rate": Param(0.01, "positive number",
                           lambda v: isinstance(v, (int, float)) and v > 0),
    "min_samples_leaf": Param(10, "integer >= 1", _count(1)),
    "min_samples_split": Param(10, "integer >= 2", _count(2)),
}


def pinball_loss(y, q, tau: float) -> np.ndarray:
    """Elementwise pinball loss: tau*(y-q) when y >= q else (1-tau)*(q-y)."""
    y = np.asarray(y, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    return np.where(y >= q, tau * (y - q), (1.0 - tau) * (q - y))


def pinball_objective(y, tau: float):
    """Mean pinball loss over fixed targets as a function of the quantile
    vector, with its subgradient (the y >= q branch at the kink)."""
    y = np.asarray(y, dtype=np.float64)

    def objective(q: np.ndarray):
        value = float(pinball_loss(y, q, tau).mean())
        grad = np.where(y >= q, -tau, 1.0 - tau) / y.size
        return value, grad

    return objective


def quantile_levels(alpha: float) -> tuple[float, float, float]:
    return (1.0 - alpha) / 2.0, 0.5, (1.0 + alpha) / 2.0


def quantile_boost_fit_state(config: dict, train: Dataset, rng: RngStream) -> dict:
    if train.n < config["min_samples_split"]:
        raise DegenerateData(
            f"quantile boosting needs at least min_samples_split={config['min_samples_split']} "
            f"samples, got {train.n}")
    lo, mid, hi = quantile_levels(config["alpha"])
    models = {}
    for name, tau in (("lower", lo), ("median", mid), ("upper", hi)):
        booster = BoostedTrees(
            loss="pinball", tau=tau,
            n_estimators=config["n_estimators"],
            learning_rate=config["learning_rate"],
            max_depth=config["max_depth"],
            min_samples_leaf=config["min_samples_leaf"],
            min_samples_split=config["min_samples_split"],
        ).fit(train.features, train.target)
        models[name] = booster.to_state()
    return {"models": models}


def quantile_boost_predict_from_state(config: dict, state: dict, features: np.ndarray,
                                      rng: RngStream) -> RegressionPrediction:
    preds = {name: BoostedTrees.from_state(payload).predict(features)
             for name, payload in state["models"].items()}
    stacked = np.sort(np.vstack([preds["lower"], preds["median"], preds["upper"]]), axis=0)
    return RegressionPrediction(y_hat=stacked[1], y_lower=stacked[0], y_upper=stacked[2])


register_algorithm(Algorithm(
    algorithm_id=ALGORITHM_ID,
    task_kind=REGRESSION,
    schema=QUANTILE_BOOST_SCHEMA,
    fit_state=quantile_boost_fit_state,
    predict_from_state=quantile_boost_predict_from_state,
    min_train_size=2,
))
