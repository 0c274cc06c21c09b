"""Mean-field variational Bayesian neural networks.

The variational posterior is a diagonal Gaussian q(w) = N(mu, diag(s^2))
with s = softplus(rho). Training maximizes the ELBO
E_q[sum_i log p(y_i | x_i, w)] - KL(q || N(0, prior_std^2 I)) using the
reparameterization w = mu + s * eps; the KL is closed form. Each
objective evaluation draws its own Monte Carlo noise but value and
gradient share it (common random numbers per evaluation).

Two algorithm ids share this module: "bnn_regression" (Gaussian
likelihood, learned or fixed observation noise) and "bnn_classifier"
(categorical likelihood over softmax logits).
"""

from __future__ import annotations

import numpy as np

from uqkit.core.data import (CLASSIFICATION, ClassificationPrediction, Dataset,
                             REGRESSION, RegressionPrediction)
from uqkit.core.registry import Algorithm, Param, register_algorithm
from uqkit.intrinsic.nets import MlpLayout, inverse_softplus, sigmoid, softplus
from uqkit.intrinsic.optim import OPTIMIZER_SCHEMA, optimizer_from_config
from uqkit.intrinsic.scaling import apply_scaler, fit_scaler
from uqkit.numerics.optimize import minimize
from uqkit.numerics.rng import RngStream

REGRESSION_ID = "bnn_regression"
CLASSIFIER_ID = "bnn_classifier"
LIKELIHOOD_GAUSSIAN = "gaussian"
LIKELIHOOD_CATEGORICAL = "categorical"
_INIT_POSTERIOR_SCALE = 0.05  # softplus(rho0) = 0.05 * prior_std


def _hidden_sizes_ok(v) -> bool:
    return (isinstance(v, (list, tuple))
            and all(isinstance(h, int) and h >= 1 for h in v))


def _noise_ok(v) -> bool:
    if v == "learned":
        return True
    return isinstance(v, (int, float)) and v > 0


_COMMON_SCHEMA = {
    "hidden_sizes": Param([16], "list of positive integers (may be empty)",
                          _hidden_sizes_ok),
    "activation": Param("tanh", "'tanh' or 'relu'", lambda v: v in ("tanh", "relu")),
    "prior_std": Param(1.0, "positive number",
                       lambda v: isinstance(v, (int, float)) and v > 0),
    "mc_train_samples": Param(8, "integer >= 1",
                              lambda v: isinstance(v, int) and v >= 1),
    "mc_predict_samples": Param(100, "integer >= 2",
                                lambda v: isinstance(v, int) and v >= 2),
    "optimizer": Param({}, "optimizer settings", sub_schema=OPTIMIZER_SCHEMA),
    "bias": Param(True, "boolean", lambda v: isinstance(v, bool)),
    "interval_mass": Param(0.95, "number in (0, 1)",
                           lambda v: isinstance(v, (int, float)) and 0 < v < 1),
}

BNN_REGRESSION_SCHEMA = {**_COMMON_SCHEMA,
                         "noise": Param("learned", "'learned' or positive number", _noise_ok)}
BNN_CLASSIFIER_SCHEMA = dict(_COMMON_SCHEMA)


def gaussian_kl(mu: np.ndarray, scale: np.ndarray, prior_std: float) -> float:
    """KL(N(mu, diag(scale^2)) || N(0, prior_std^2 I)), closed form."""
    var_ratio = (scale * scale) / (prior_std * prior_std)
    return float(0.5 * np.sum(var_ratio + (mu * mu) / (prior_std * prior_std)
                              - 1.0 - np.log(var_ratio)))


def _log_softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max(axis=1, keepdims=True)
    return shifted - np.log(np.exp(shifted).sum(axis=1, keepdims=True))


def negative_elbo_objective(layout: MlpLayout, x: np.ndarray, y: np.ndarray,
                            prior_std: float, eps: np.ndarray, likelihood: str,
                            noise="learned"):
    """Deterministic negative-ELBO objective for a fixed noise draw ``eps``
    of shape (M, n_params). Gaussian likelihood with noise="learned"
    appends the observation-noise parameter c (sigma_n = softplus(c)) to
    the parameter vector [mu, rho]."""
    n_w = layout.n_params
    learned_noise = likelihood == LIKELIHOOD_GAUSSIAN and noise == "learned"
    n_samples = eps.shape[0]

    def objective(theta: np.ndarray, idx=None):
        xb, yb = (x, y) if idx is None else (x[idx], y[idx])
        scale_up = x.shape[0] / xb.shape[0]
        mu = theta[:n_w]
        rho = theta[n_w:2 * n_w]
        q_scale = softplus(rho)
        if learned_noise:
            c = theta[2 * n_w]
            sigma_n = float(softplus(c))
        elif likelihood == LIKELIHOOD_GAUSSIAN:
            sigma_n = float(noise)

        loglik_total = 0.0
        d_w_mu = np.zeros(n_w)
        d_w_rho = np.zeros(n_w)
        d_c = 0.0
        for m in range(n_samples):
            w = mu + q_scale * eps[m]
            out, cache = layout.forward(w, xb)
            if likelihood == LIKELIHOOD_GAUSSIAN:
                f = out[:, 0]
                resid = yb - f
                ssr = float(np.sum(resid * resid))
                loglik = -0.5 * yb.size * np.log(2.0 * np.pi * sigma_n * sigma_n) \
                    - ssr / (2.0 * sigma_n * sigma_n)
                d_out = (resid / (sigma_n * sigma_n))[:, None]
                if learned_noise:
                    d_c += (-yb.size / sigma_n + ssr / sigma_n ** 3) * sigmoid(c)
            else:
                log_p = _log_softmax(out)
                labels = yb.astype(np.int64)
                loglik = float(log_p[np.arange(yb.size), labels].sum())
                d_out = -np.exp(log_p)
                d_out[np.arange(yb.size), labels] += 1.0
            d_w = layout.backward(w, d_out, cache)
            loglik_total += loglik
            d_w_mu += d_w
            d_w_rho += d_w * eps[m]

        inv_m = scale_up / n_samples
        value = -loglik_total * inv_m + gaussian_kl(mu, q_scale, prior_std)
        grad_mu = -d_w_mu * inv_m + mu / (prior_std * prior_std)
        d_kl_scale = q_scale / (prior_std * prior_std) - 1.0 / q_scale
        grad_rho = (-d_w_rho * inv_m + d_kl_scale) * sigmoid(rho)
        pieces = [grad_mu, grad_rho]
        if learned_noise:
            pieces.append(np.array([-d_c * inv_m]))
        return float(value), np.concatenate(pieces)

    return objective


def _layout(config: dict, d: int, out_dim: int) -> MlpLayout:
    return MlpLayout(sizes=(d, *config["hidden_sizes"], out_dim),
                     activation=config["activation"], bias=config["bias"])


def _fit_state(config: dict, train: Dataset, rng: RngStream, likelihood: str) -> dict:
    scaler = fit_scaler(train.features)
    x = apply_scaler(scaler, train.features)
    y = train.target
    out_dim = 1 if likelihood == LIKELIHOOD_GAUSSIAN else train.task.n_classes
    layout = _layout(config, train.d, out_dim)
    n_w = layout.n_params

    mu0 = layout.init_params(rng)
    rho0 = np.full(n_w, inverse_softplus(_INIT_POSTERIOR_SCALE * config["prior_std"]))
    theta0 = np.concatenate([mu0, rho0])
    noise = config.get("noise", "learned")
    learned_noise = likelihood == LIKELIHOOD_GAUSSIAN and noise == "learned"
    if learned_noise:
        theta0 = np.concatenate([theta0, [inverse_softplus(max(float(np.std(y)), 0.05))]])

    m_train = config["mc_train_samples"]
    noise_rng = rng.spawn(1)

    def training_objective(theta: np.ndarray, idx=None):
        eps = noise_rng.normal((m_train, n_w))
        fixed = negative_elbo_objective(layout, x, y, config["prior_std"], eps,
                                        likelihood, noise)
        return fixed(theta, idx)

    theta, trace = minimize(training_objective, theta0,
                            optimizer_from_config(config["optimizer"]),
                            rng.spawn(2), n_samples=train.n)
    return {
        "layout": layout.to_payload(),
        "theta": theta.tolist(),
        "scaler": scaler,
        "likelihood": likelihood,
        "noise": noise,
        "prior_std": config["prior_std"],
        "mc_predict_samples": config["mc_predict_samples"],
        "interval_mass": config["interval_mass"],
        "n_classes": None if likelihood == LIKELIHOOD_GAUSSIAN else train.task.n_classes,
        "final_objective": float(trace[-1]),
        "objective_trace_tail": [float(v) for v in trace[-20:]],
    }


def posterior_params(state: dict) -> tuple[MlpLayout, np.ndarray, np.ndarray, float | None]:
    """Unpack (layout, mu, posterior scale, observation sigma or None)."""
    layout = MlpLayout.from_payload(state["layout"])
    theta = np.asarray(state["theta"])
    n_w = layout.n_params
    mu = theta[:n_w]
    q_scale = softplus(theta[n_w:2 * n_w])
    sigma_n = None
    if state["likelihood"] == LIKELIHOOD_GAUSSIAN:
        sigma_n = float(softplus(theta[2 * n_w])) if state["noise"] == "learned" \
            else float(state["noise"])
    return layout, mu, q_scale, sigma_n


def bnn_predict_from_state(config: dict, state: dict, features: np.ndarray,
                           rng: RngStream):
    layout, mu, q_scale, sigma_n = posterior_params(state)
    x = apply_scaler(state["scaler"], features)
    n = x.shape[0]
    s_draws = state["mc_predict_samples"]
    eps_w = rng.normal((s_draws, mu.size))

    if state["likelihood"] == LIKELIHOOD_CATEGORICAL:
        probs = np.zeros((n, state["n_classes"]))
        for s in range(s_draws):
            out, _ = layout.forward(mu + q_scale * eps_w[s], x)
            probs += np.exp(_log_softmax(out))
        probs /= s_draws
        probs /= probs.sum(axis=1, keepdims=True)
        return ClassificationPrediction(probs=probs)

    eps_noise = rng.normal((s_draws, n))
    means = np.empty((s_draws, n))
    for s in range(s_draws):
        out, _ = layout.forward(mu + q_scale * eps_w[s], x)
        means[s] = out[:, 0]
    draws = means + sigma_n * eps_noise
    y_hat = means.mean(axis=0)
    mass = state["interval_mass"]
    lower = np.quantile(draws, (1.0 - mass) / 2.0, axis=0, method="linear")
    upper = np.quantile(draws, (1.0 + mass) / 2.0, axis=0, method="linear")
    return RegressionPrediction(
        y_hat=y_hat,
        y_lower=np.minimum(lower, y_hat),
        y_upper=np.maximum(upper, y_hat),
        y_std=draws.std(axis=0),
        samples=draws.T,
    )


register_algorithm(Algorithm(
    algorithm_id=REGRESSION_ID,
    task_kind=REGRESSION,
    schema=BNN_REGRESSION_SCHEMA,
    fit_state=lambda cfg, ds, rng: _fit_state(cfg, ds, rng, LIKELIHOOD_GAUSSIAN),
    predict_from_state=bnn_predict_from_state,
    min_train_size=2,
))

register_algorithm(Algorithm(
    algorithm_id=CLASSIFIER_ID,
    task_kind=CLASSIFICATION,
    schema=BNN_CLASSIFIER_SCHEMA,
    fit_state=lambda cfg, ds, rng: _fit_state(cfg, ds, rng, LIKELIHOOD_CATEGORICAL),
    predict_from_state=bnn_predict_from_state,
    min_train_size=2,
))
