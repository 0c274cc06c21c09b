"""Train-set feature standardization stored inside estimator state."""

from __future__ import annotations

import numpy as np


def fit_scaler(features: np.ndarray) -> dict:
    mean = features.mean(axis=0)
    std = features.std(axis=0)
    std = np.where(std == 0.0, 1.0, std)
    return {"mean": mean.tolist(), "std": std.tolist()}


def apply_scaler(scaler: dict, features: np.ndarray) -> np.ndarray:
    return (features - np.asarray(scaler["mean"])) / np.asarray(scaler["std"])
