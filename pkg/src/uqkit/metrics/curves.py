"""Diagnostic curves: risk-vs-rejection and the uncertainty
characteristic curve (UCC).

The UCC sweeps a single multiplicative scale on interval half-widths and
traces miss rate against (normalized) bandwidth. The sweep grid is the
exact set of critical scales, i.e. the per-point smallest scale at which
each truth first falls inside its rescaled band, so the curve loses
nothing to discretization.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from uqkit.core.data import RegressionPrediction
from uqkit.errors import AllZeroWidth, EmptyInput
from uqkit.numerics.linalg import as_vector

KIND_RELIABILITY = "reliability"
KIND_RISK_REJECTION = "risk_rejection"
KIND_UCC = "ucc"

UCC_NORM_TARGET_RANGE = "target_range"
UCC_NORM_MEAN_ABS_TARGET = "mean_abs_target"
UCC_NORM_NONE = "none"

_DEFAULT_REJECTION_GRID = tuple(i * 0.05 for i in range(20))


@dataclass(frozen=True)
class CurveResult:
    """Sampled (x, y) curve with metadata; points are ordered by x."""

    kind: str
    points: np.ndarray  # shape (m, 2)
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        points = np.asarray(self.points, dtype=np.float64)
        if points.ndim != 2 or points.shape[1] != 2:
            raise ValueError("curve points must have shape (m, 2)")
        if not np.all(np.isfinite(points)):
            raise ValueError("curve points must be finite")
        if np.any(np.diff(points[:, 0]) < 0):
            raise ValueError("curve points must be ordered by x")
        object.__setattr__(self, "points", points)

    def to_payload(self) -> dict:
        return {"kind": self.kind, "points": self.points.tolist(),
                "metadata": self.metadata}

    @classmethod
    def from_payload(cls, payload: dict) -> "CurveResult":
        return cls(kind=payload["kind"], points=np.asarray(payload["points"]),
                   metadata=dict(payload["metadata"]))


def risk_rejection_curve(uncertainty, losses, grid=None) -> CurveResult:
    """Mean retained loss after rejecting the ceil(r*n) most-uncertain points.

    Ties in uncertainty break by original index (ascending) and the
    retained set never empties (at most n-1 rejections), so the curve is
    deterministic and finite.
    """
    unc = as_vector(uncertainty, "uncertainty")
    loss = as_vector(losses, "losses")
    if unc.size == 0:
        raise EmptyInput("risk_rejection_curve needs at least one point")
    if unc.size != loss.size:
        raise ValueError("uncertainty and losses must share one length")
    grid = np.asarray(_DEFAULT_REJECTION_GRID if grid is None else grid, dtype=np.float64)
    if np.any(grid < 0.0) or np.any(grid >= 1.0):
        raise ValueError("rejection fractions must lie in [0, 1)")
    grid = np.sort(grid)

    n = unc.size
    order = np.lexsort((np.arange(n), -unc))  # most uncertain first
    sorted_losses = loss[order]
    points = np.empty((grid.size, 2))
    for i, r in enumerate(grid):
        k = min(int(np.ceil(r * n - 1e-12)), n - 1)
        points[i] = (r, float(sorted_losses[k:].mean()))
    return CurveResult(kind=KIND_RISK_REJECTION, points=points,
                       metadata={"n": n, "overall_mean_loss": float(loss.mean())})


def interval_requirement_scales(prediction: RegressionPrediction, truths) -> np.ndarray:
    """Per-point smallest scale c at which the truth enters the c-scaled band.

    Zero where the truth equals the point estimate, infinite where the
    needed side has zero half-width. Raises AllZeroWidth when every
    interval has zero total width.
    """
    y = as_vector(truths, "truths")
    if y.size != prediction.n:
        raise ValueError("truths length must match the prediction")
    d_minus = prediction.y_hat - prediction.y_lower
    d_plus = prediction.y_upper - prediction.y_hat
    if prediction.n == 0 or float(np.max(d_minus + d_plus, initial=0.0)) <= 0.0:
        raise AllZeroWidth("interval diagnostics need a positive-width interval")

    signed = y - prediction.y_hat
    need = np.zeros_like(signed)
    above = signed > 0
    below = signed < 0
    with np.errstate(divide="ignore"):
        need[above] = np.where(d_plus[above] > 0, signed[above] / d_plus[above], np.inf)
        need[below] = np.where(d_minus[below] > 0, -signed[below] / d_minus[below], np.inf)
    return need


def _normalization_constant(normalization: str, y: np.ndarray) -> float:
    if normalization == UCC_NORM_TARGET_RANGE:
        span = float(y.max() - y.min())
        return span if span > 0 else 1.0
    if normalization == UCC_NORM_MEAN_ABS_TARGET:
        mean_abs = float(np.mean(np.abs(y)))
        return mean_abs if mean_abs > 0 else 1.0
    if normalization == UCC_NORM_NONE:
        return 1.0
    raise ValueError(f"unknown UCC normalization {normalization!r}")


def ucc(prediction: RegressionPrediction, truths,
        normalization: str = UCC_NORM_TARGET_RANGE) -> CurveResult:
    """Uncertainty characteristic curve: miss rate vs scaled bandwidth."""
    y = as_vector(truths, "truths")
    need = interval_requirement_scales(prediction, truths)
    half_mean = float(np.mean((prediction.y_upper - prediction.y_lower) / 2.0))
    norm_const = _normalization_constant(normalization, y)

    finite = need[np.isfinite(need)]
    scales = np.unique(np.concatenate(([0.0], finite)))
    points = np.empty((scales.size, 2))
    for i, c in enumerate(scales):
        miss = float(np.mean(need > c))
        bandwidth = c * half_mean / norm_const
        points[i] = (bandwidth, miss)
    auc = float(np.trapezoid(points[:, 1], points[:, 0])) if scales.size > 1 else 0.0
    return CurveResult(kind=KIND_UCC, points=points, metadata={
        "scales": scales.tolist(),
        "normalization": normalization,
        "normalization_constant": norm_const,
        "auc": auc,
        "n_uncoverable": int(np.sum(~np.isfinite(need))),
    })
