"""Infinitesimal-jackknife uncertainty for linear and logistic GLMs.

The GLM is fitted once on the unperturbed data (closed form for linear,
Newton for logistic, intercept always included). Bootstrap replicates
are then linearized instead of refitted: with per-example loss gradients
g_i at the fit and total Hessian H, the replicate for weight vector w is

    theta(w) = theta_hat - H^{-1} sum_i (w_i - 1) g_i.

Weights are multinomial bootstrap counts divided by n, drawn from
per-replicate substreams so results are independent of evaluation order.
One Cholesky factorization of H serves every replicate. The ridge term
penalizes all coefficients (including the intercept) so the Hessian is
positive definite whenever the penalty is.
"""

from __future__ import annotations

import numpy as np

from uqkit.core.data import (CLASSIFICATION, ClassificationPrediction, Dataset,
                             REGRESSION, RegressionPrediction)
from uqkit.core.registry import Algorithm, Param, register_algorithm
from uqkit.errors import (ConfigError, DegenerateData, NotPositiveDefinite,
                          SingularHessian, TaskMismatch)
from uqkit.numerics.linalg import cholesky_factor, solve_with_factor
from uqkit.numerics.rng import RngStream
from uqkit.trees import _sigmoid as sigmoid  # shared stable sigmoid

LINEAR_ID = "ij_linear"
LOGISTIC_ID = "ij_logistic"
_AUTO = "auto"


def _ridge_ok(v) -> bool:
    if v == _AUTO:
        return True
    return isinstance(v, (int, float)) and v >= 0


IJ_SCHEMA = {
    "ridge": Param(_AUTO, "non-negative number or 'auto'", _ridge_ok),
    "n_replicates": Param(200, "integer >= 10",
                          lambda v: isinstance(v, int) and v >= 10),
    "interval_mass": Param(0.95, "number in (0, 1)",
                           lambda v: isinstance(v, (int, float)) and 0 < v < 1),
}


def _augment(features: np.ndarray) -> np.ndarray:
    return np.column_stack([np.ones(features.shape[0]), features])


def _fit_linear(x: np.ndarray, y: np.ndarray, ridge: float) -> np.ndarray:
    h = x.T @ x + ridge * np.eye(x.shape[1])
    try:
        chol = cholesky_factor(h)
    except NotPositiveDefinite:
        raise SingularHessian(
            "normal equations are singular; increase the ridge penalty") from None
    return solve_with_factor(chol, x.T @ y)


def _fit_logistic(x: np.ndarray, y: np.ndarray, ridge: float,
                  max_iters: int = 100) -> np.ndarray:
    theta = np.zeros(x.shape[1])
    for _ in range(max_iters):
        p = sigmoid(x @ theta)
        grad = x.T @ (p - y) + ridge * theta
        if float(np.abs(grad).max()) < 1e-10:
            break
        w = p * (1.0 - p)
        h = (x * w[:, None]).T @ x + ridge * np.eye(x.shape[1])
        try:
            chol = cholesky_factor(h)
        except NotPositiveDefinite:
            raise SingularHessian(
                "logistic Hessian is singular; increase the ridge penalty") from None
        step = solve_with_factor(chol, grad)
        nll = _logistic_nll(x, y, theta, ridge)
        scale = 1.0
        for _ in range(30):
            candidate = theta - scale * step
            if _logistic_nll(x, y, candidate, ridge) <= nll:
                break
            scale *= 0.5
        theta = theta - scale * step
    return theta


def _logistic_nll(x: np.ndarray, y: np.ndarray, theta: np.ndarray, ridge: float) -> float:
    z = x @ theta
    # log(1 + exp(z)) - y*z, computed stably
    return float(np.sum(np.logaddexp(0.0, z) - y * z) + 0.5 * ridge * theta @ theta)


def linearized_replicates(theta_hat: np.ndarray, grads: np.ndarray,
                          hessian_chol: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Replicate parameters for bootstrap weight rows ``weights`` (B x n)."""
    delta = (weights - 1.0) @ grads  # (B, p)
    correction = solve_with_factor(hessian_chol, delta.T)  # (p, B)
    return theta_hat[None, :] - correction.T


def bootstrap_weights(n: int, n_replicates: int, rng: RngStream) -> np.ndarray:
    """Multinomial bootstrap counts / n, one substream per replicate."""
    pvals = np.full(n, 1.0 / n)
    rows = [rng.spawn(b).multinomial(n, pvals) / n for b in range(n_replicates)]
    return np.asarray(rows)


def _ij_fit_state(config: dict, train: Dataset, rng: RngStream, glm: str) -> dict:
    if glm == "logistic" and train.task.n_classes != 2:
        raise TaskMismatch("ij_logistic handles binary classification only")
    x = _augment(train.features)
    y = train.target
    n, p = x.shape
    if n <= p:
        raise DegenerateData(f"IJ {glm} GLM needs more samples than parameters "
                             f"({n} samples, {p} parameters)")

    if config["ridge"] == _AUTO:
        ridge = 0.0 if glm == "linear" else 1e-3 * n
    else:
        ridge = float(config["ridge"])
    if glm == "logistic" and ridge <= 0:
        raise ConfigError("ij_logistic requires ridge > 0 for an invertible Hessian")

    if glm == "linear":
        theta_hat = _fit_linear(x, y, ridge)
        resid = x @ theta_hat - y
        grads = resid[:, None] * x
        hessian = x.T @ x + ridge * np.eye(p)
    else:
        theta_hat = _fit_logistic(x, y, ridge)
        prob = sigmoid(x @ theta_hat)
        grads = (prob - y)[:, None] * x
        w = prob * (1.0 - prob)
        hessian = (x * w[:, None]).T @ x + ridge * np.eye(p)

    try:
        chol = cholesky_factor(hessian)
    except NotPositiveDefinite:
        raise SingularHessian("GLM Hessian is singular; increase the ridge penalty") from None
    weights = bootstrap_weights(n, config["n_replicates"], rng)
    replicates = linearized_replicates(theta_hat, grads, chol, weights)
    return {
        "glm": glm,
        "ridge": ridge,
        "theta_hat": theta_hat.tolist(),
        "replicates": replicates.tolist(),
        "interval_mass": config["interval_mass"],
    }


def ij_predict_from_state(config: dict, state: dict, features: np.ndarray,
                          rng: RngStream):
    x = _augment(features)
    replicates = np.asarray(state["replicates"])  # (B, p)
    mass = state["interval_mass"]
    if state["glm"] == "linear":
        rep_preds = x @ replicates.T  # (n, B)
        y_hat = rep_preds.mean(axis=1)
        lower = np.quantile(rep_preds, (1.0 - mass) / 2.0, axis=1, method="linear")
        upper = np.quantile(rep_preds, (1.0 + mass) / 2.0, axis=1, method="linear")
        return RegressionPrediction(
            y_hat=y_hat,
            y_lower=np.minimum(lower, y_hat),
            y_upper=np.maximum(upper, y_hat),
            y_std=rep_preds.std(axis=1),
        )
    p_pos = sigmoid(x @ replicates.T).mean(axis=1)
    probs = np.column_stack([1.0 - p_pos, p_pos])
    return ClassificationPrediction(probs=probs)


def ij_fit_predict(config_params: dict, train: Dataset, test_features: np.ndarray,
                   rng: RngStream):
    """Fit once and predict, matching the single-call usage pattern."""
    from uqkit.core.registry import EstimatorConfig, fit, predict

    glm_id = LINEAR_ID if train.task.kind == REGRESSION else LOGISTIC_ID
    model = fit(EstimatorConfig(glm_id, config_params), train, rng)
    return predict(model, test_features)


register_algorithm(Algorithm(
    algorithm_id=LINEAR_ID,
    task_kind=REGRESSION,
    schema=IJ_SCHEMA,
    fit_state=lambda cfg, ds, rng: _ij_fit_state(cfg, ds, rng, "linear"),
    predict_from_state=ij_predict_from_state,
    min_train_size=3,
))

register_algorithm(Algorithm(
    algorithm_id=LOGISTIC_ID,
    task_kind=CLASSIFICATION,
    schema=IJ_SCHEMA,
    fit_state=lambda cfg, ds, rng: _ij_fit_state(cfg, ds, rng, "logistic"),
    predict_from_state=ij_predict_from_state,
    min_train_size=3,
))
