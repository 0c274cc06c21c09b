"""First-order optimizer and finite-difference gradient checker.

The optimizer is the adaptive-moment method with bias correction,
full-batch by default. Objectives are callables returning
``(value, gradient)``; with ``batch_size`` set (and ``n_samples`` passed
to :func:`minimize`) the objective is instead called as
``objective(theta, indices)`` on seeded, reshuffled index batches.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from uqkit.errors import NonFiniteObjective
from uqkit.numerics.rng import RngStream


@dataclass(frozen=True)
class OptimizerConfig:
    learning_rate: float = 0.05
    max_iters: int = 500
    adaptive_moment_decays: tuple[float, float] = (0.9, 0.999)
    epsilon: float = 1e-8
    gradient_clip: float | None = None
    batch_size: int | None = None

    def __post_init__(self):
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be positive")
        if self.max_iters < 1:
            raise ValueError("max_iters must be at least 1")
        b1, b2 = self.adaptive_moment_decays
        if not (0.0 < b1 < 1.0 and 0.0 < b2 < 1.0):
            raise ValueError("adaptive_moment_decays must lie in (0, 1)")
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if self.gradient_clip is not None and self.gradient_clip <= 0:
            raise ValueError("gradient_clip must be positive when set")
        if self.batch_size is not None and self.batch_size < 1:
            raise ValueError("batch_size must be at least 1 when set")


def _batch_iterator(n_samples: int, batch_size: int, rng: RngStream):
    """Yield index batches forever, reshuffling each epoch."""
    while True:
        order = rng.permutation(n_samples)
        for start in range(0, n_samples, batch_size):
            yield order[start:start + batch_size]


def minimize(objective, init, config: OptimizerConfig, rng: RngStream,
             n_samples: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Minimize ``objective`` from ``init``; returns (params, objective trace).

    Raises :class:`NonFiniteObjective` (carrying the iteration index) as
    soon as the value or gradient stops being finite.
    """
    theta = np.array(init, dtype=np.float64).ravel().copy()
    beta1, beta2 = config.adaptive_moment_decays
    m = np.zeros_like(theta)
    v = np.zeros_like(theta)
    trace = np.empty(config.max_iters)

    batches = None
    if config.batch_size is not None:
        if n_samples is None:
            raise ValueError("mini-batching requires n_samples")
        batches = _batch_iterator(n_samples, config.batch_size, rng)

    for t in range(config.max_iters):
        if batches is None:
            value, grad = objective(theta)
        else:
            value, grad = objective(theta, next(batches))
        grad = np.asarray(grad, dtype=np.float64)
        if not np.isfinite(value) or not np.all(np.isfinite(grad)):
            raise NonFiniteObjective("objective value or gradient is not finite", iteration=t)
        trace[t] = value

        if config.gradient_clip is not None:
            norm = float(np.linalg.norm(grad))
            if norm > config.gradient_clip:
                grad = grad * (config.gradient_clip / norm)

        m = beta1 * m + (1.0 - beta1) * grad
        v = beta2 * v + (1.0 - beta2) * grad * grad
        m_hat = m / (1.0 - beta1 ** (t + 1))
        v_hat = v / (1.0 - beta2 ** (t + 1))
        theta = theta - config.learning_rate * m_hat / (np.sqrt(v_hat) + config.epsilon)

    return theta, trace


def check_gradient(objective, point) -> float:
    """Max relative error between analytic and central-difference gradients.

    Steps are ``h_i = 1e-5 * (1 + |theta_i|)`` per coordinate; the error
    for coordinate i is ``|analytic - numeric| / (1e-8 + |numeric|)``.
    """
    theta = np.array(point, dtype=np.float64).ravel()
    value, analytic = objective(theta)
    analytic = np.asarray(analytic, dtype=np.float64)
    if not np.isfinite(value) or not np.all(np.isfinite(analytic)):
        raise NonFiniteObjective("objective not finite at the checked point")

    worst = 0.0
    for i in range(theta.size):
        h = 1e-5 * (1.0 + abs(theta[i]))
        plus = theta.copy()
        plus[i] += h
        minus = theta.copy()
        minus[i] -= h
        f_plus, _ = objective(plus)
        f_minus, _ = objective(minus)
        if not (np.isfinite(f_plus) and np.isfinite(f_minus)):
            raise NonFiniteObjective("objective not finite near the checked point")
        numeric = (f_plus - f_minus) / (2.0 * h)
        worst = max(worst, abs(analytic[i] - numeric) / (1e-8 + abs(numeric)))
    return worst
