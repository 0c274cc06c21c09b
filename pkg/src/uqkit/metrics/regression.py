"""Interval quality metrics for regression predictions."""

from __future__ import annotations

import numpy as np

from uqkit.core.data import RegressionPrediction
from uqkit.errors import EmptyInput
from uqkit.numerics.linalg import as_vector


def picp(prediction: RegressionPrediction, truths) -> float:
    """Prediction interval coverage probability (closed intervals)."""
    if prediction.n == 0:
        raise EmptyInput("picp needs at least one prediction")
    y = as_vector(truths, "truths")
    if y.size != prediction.n:
        raise ValueError("truths length must match the prediction")
    covered = (prediction.y_lower <= y) & (y <= prediction.y_upper)
    return float(covered.mean())


def mpiw(prediction: RegressionPrediction) -> float:
    """Mean prediction interval width."""
    if prediction.n == 0:
        raise EmptyInput("mpiw needs at least one prediction")
    return float((prediction.y_upper - prediction.y_lower).mean())
