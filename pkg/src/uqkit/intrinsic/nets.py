"""Small dense networks with hand-written backprop.

Parameters live in one flat float64 vector so the networks plug directly
into the shared optimizer and the finite-difference gradient checker.
Layer weights are packed in order (W then b per layer, row-major).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from uqkit.numerics.rng import RngStream


def softplus(x):
    return np.logaddexp(0.0, x)


def sigmoid(x):
    return 1.0 / (1.0 + np.exp(-np.clip(x, -500, 500)))


def inverse_softplus(y: float) -> float:
    """x with softplus(x) = y, for y > 0."""
    if y <= 0:
        raise ValueError("inverse_softplus needs a positive value")
    # log(expm1(y)) computed stably for large y.
    return float(np.log(np.expm1(y))) if y < 30 else float(y)


@dataclass(frozen=True)
class MlpLayout:
    """Dense net shape: sizes = (inputs, *hidden, outputs)."""

    sizes: tuple[int, ...]
    activation: str = "tanh"
    bias: bool = True

    def __post_init__(self):
        if len(self.sizes) < 2 or any(s < 1 for s in self.sizes):
            raise ValueError("layer sizes need at least (inputs, outputs), all positive")
        if self.activation not in ("tanh", "relu"):
            raise ValueError("activation must be 'tanh' or 'relu'")

    @property
    def n_params(self) -> int:
        total = 0
        for fan_in, fan_out in zip(self.sizes[:-1], self.sizes[1:]):
            total += fan_in * fan_out + (fan_out if self.bias else 0)
        return total

    def init_params(self, rng: RngStream) -> np.ndarray:
        """Fan-in-scaled uniform weights, zero biases."""
        chunks = []
        for fan_in, fan_out in zip(self.sizes[:-1], self.sizes[1:]):
            bound = 1.0 / np.sqrt(fan_in)
            chunks.append(rng.uniform(-bound, bound, (fan_in, fan_out)).ravel())
            if self.bias:
                chunks.append(np.zeros(fan_out))
        return np.concatenate(chunks)

    def _unpack(self, theta: np.ndarray):
        layers = []
        offset = 0
        for fan_in, fan_out in zip(self.sizes[:-1], self.sizes[1:]):
            w = theta[offset:offset + fan_in * fan_out].reshape(fan_in, fan_out)
            offset += fan_in * fan_out
            if self.bias:
                b = theta[offset:offset + fan_out]
                offset += fan_out
            else:
                b = np.zeros(fan_out)
            layers.append((w, b))
        return layers

    def _act(self, z: np.ndarray) -> np.ndarray:
        return np.tanh(z) if self.activation == "tanh" else np.maximum(z, 0.0)

    def forward(self, theta: np.ndarray, x: np.ndarray):
        """Returns (output (n, out), cache for backward)."""
        layers = self._unpack(theta)
        a = x
        cache = []
        for i, (w, b) in enumerate(layers):
            z = a @ w + b
            cache.append((a, z))
            a = self._act(z) if i < len(layers) - 1 else z
        return a, cache

    def backward(self, theta: np.ndarray, grad_out: np.ndarray, cache) -> np.ndarray:
        """Gradient of sum(grad_out * output) with respect to theta."""
        layers = self._unpack(theta)
        grads: list[np.ndarray | None] = [None] * len(layers)
        dz = grad_out
        for i in range(len(layers) - 1, -1, -1):
            a_prev, z = cache[i]
            w, _ = layers[i]
            dw = a_prev.T @ dz
            db = dz.sum(axis=0)
            grads[i] = (dw, db)
            if i > 0:
                da_prev = dz @ w.T
                _, z_prev = cache[i - 1]
                if self.activation == "tanh":
                    dz = da_prev * (1.0 - np.tanh(z_prev) ** 2)
                else:
                    dz = da_prev * (z_prev > 0)
        flat = []
        for dw, db in grads:  # type: ignore[misc]
            flat.append(dw.ravel())
            if self.bias:
                flat.append(db)
        return np.concatenate(flat)

    def to_payload(self) -> dict:
        return {"sizes": list(self.sizes), "activation": self.activation, "bias": self.bias}

    @classmethod
    def from_payload(cls, payload: dict) -> "MlpLayout":
        return cls(sizes=tuple(payload["sizes"]), activation=payload["activation"],
                   bias=payload["bias"])
