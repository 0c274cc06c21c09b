"""Neural regression with homoscedastic or heteroscedastic Gaussian noise.

Both variants minimize the exact Gaussian negative log-likelihood
sum_i 0.5*log(2*pi*sigma_i^2) + (y_i - mu(x_i))^2 / (2*sigma_i^2) with
hand-written gradients. Homoscedastic noise is a shared scalar
sigma = softplus(c); heteroscedastic noise is a second network head with
sigma = 1e-4 + softplus(raw) (the floor prevents NLL blow-up on
interpolated points).
"""

from __future__ import annotations

import numpy as np

from uqkit.core.data import Dataset, REGRESSION, RegressionPrediction
from uqkit.core.registry import Algorithm, Param, register_algorithm
from uqkit.intrinsic.nets import MlpLayout, inverse_softplus, sigmoid, softplus
from uqkit.intrinsic.optim import OPTIMIZER_SCHEMA, optimizer_from_config
from uqkit.intrinsic.scaling import apply_scaler, fit_scaler
from uqkit.numerics.gaussian import central_interval_z
from uqkit.numerics.optimize import minimize
from uqkit.numerics.rng import RngStream

ALGORITHM_ID = "noise_net"
HOMOSCEDASTIC = "homoscedastic"
HETEROSCEDASTIC = "heteroscedastic"
_SIGMA_FLOOR = 1e-4


def _hidden_sizes_ok(v) -> bool:
    return (isinstance(v, (list, tuple)) and len(v) >= 1
            and all(isinstance(h, int) and h >= 1 for h in v))


NOISE_NET_SCHEMA = {
    "hidden_sizes": Param([16], "non-empty list of positive integers", _hidden_sizes_ok),
    "activation": Param("tanh", "'tanh' or 'relu'", lambda v: v in ("tanh", "relu")),
    "noise_model": Param(HOMOSCEDASTIC, "'homoscedastic' or 'heteroscedastic'",
                         lambda v: v in (HOMOSCEDASTIC, HETEROSCEDASTIC)),
    "optimizer": Param({}, "optimizer settings", sub_schema=OPTIMIZER_SCHEMA),
    "interval_mass": Param(0.95, "number in (0, 1)",
                           lambda v: isinstance(v, (int, float)) and 0 < v < 1),
}


def gaussian_nll_objective(layout: MlpLayout, x: np.ndarray, y: np.ndarray,
                           noise_model: str):
    """NLL objective over the flat parameter vector.

    Homoscedastic parameters are [net..., c]; heteroscedastic networks
    carry the noise head as output column 1 and take no extra scalar.
    """
    n_net = layout.n_params

    def objective(theta: np.ndarray, idx=None):
        xb, yb = (x, y) if idx is None else (x[idx], y[idx])
        n = yb.size
        if noise_model == HOMOSCEDASTIC:
            net_theta = theta[:n_net]
            c = theta[n_net]
            out, cache = layout.forward(net_theta, xb)
            mu = out[:, 0]
            sig = softplus(c)
            resid = mu - yb
            nll = 0.5 * n * np.log(2.0 * np.pi * sig * sig) \
                + float(np.sum(resid * resid)) / (2.0 * sig * sig)
            d_mu = resid / (sig * sig)
            grad_net = layout.backward(net_theta, d_mu[:, None], cache)
            d_c = (n / sig - float(np.sum(resid * resid)) / sig ** 3) * sigmoid(c)
            return float(nll), np.concatenate([grad_net, [d_c]])

        out, cache = layout.forward(theta, xb)
        mu = out[:, 0]
        raw = out[:, 1]
        sig = _SIGMA_FLOOR + softplus(raw)
        resid = mu - yb
        nll = float(np.sum(0.5 * np.log(2.0 * np.pi * sig * sig)
                           + resid * resid / (2.0 * sig * sig)))
        d_mu = resid / (sig * sig)
        d_raw = (1.0 / sig - resid * resid / sig ** 3) * sigmoid(raw)
        grad = layout.backward(theta, np.column_stack([d_mu, d_raw]), cache)
        return nll, grad

    return objective


def _layout(config: dict, d: int) -> MlpLayout:
    out = 1 if config["noise_model"] == HOMOSCEDASTIC else 2
    return MlpLayout(sizes=(d, *config["hidden_sizes"], out),
                     activation=config["activation"])


def noise_net_fit_state(config: dict, train: Dataset, rng: RngStream) -> dict:
    scaler = fit_scaler(train.features)
    x = apply_scaler(scaler, train.features)
    y = train.target
    layout = _layout(config, train.d)

    theta0 = layout.init_params(rng)
    sigma0 = inverse_softplus(max(float(np.std(y)), 0.05))
    if config["noise_model"] == HOMOSCEDASTIC:
        theta0 = np.concatenate([theta0, [sigma0]])
    else:
        theta0[-1] = sigma0  # noise-head output bias

    objective = gaussian_nll_objective(layout, x, y, config["noise_model"])
    theta, trace = minimize(objective, theta0, optimizer_from_config(config["optimizer"]),
                            rng, n_samples=train.n)
    return {
        "layout": layout.to_payload(),
        "theta": theta.tolist(),
        "scaler": scaler,
        "noise_model": config["noise_model"],
        "interval_mass": config["interval_mass"],
        "final_objective": float(trace[-1]),
    }


def noise_net_predict_from_state(config: dict, state: dict, features: np.ndarray,
                                 rng: RngStream) -> RegressionPrediction:
    layout = MlpLayout.from_payload(state["layout"])
    theta = np.asarray(state["theta"])
    x = apply_scaler(state["scaler"], features)
    if state["noise_model"] == HOMOSCEDASTIC:
        out, _ = layout.forward(theta[:layout.n_params], x)
        mu = out[:, 0]
        sig = np.full(mu.shape, float(softplus(theta[layout.n_params])))
    else:
        out, _ = layout.forward(theta, x)
        mu = out[:, 0]
        sig = _SIGMA_FLOOR + softplus(out[:, 1])
    z = central_interval_z(state["interval_mass"])
    return RegressionPrediction(y_hat=mu, y_lower=mu - z * sig, y_upper=mu + z * sig,
                                y_std=sig)


register_algorithm(Algorithm(
    algorithm_id=ALGORITHM_ID,
    task_kind=REGRESSION,
    schema=NOISE_NET_SCHEMA,
    fit_state=noise_net_fit_state,
    predict_from_state=noise_net_predict_from_state,
    min_train_size=2,
))
