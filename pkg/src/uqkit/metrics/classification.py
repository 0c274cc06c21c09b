"""Calibration metrics for classification predictions.

The confidence binning convention is frozen: B equal-width bins where the
first bin is the closed interval [0, 1/B] and every later bin is
left-open, (i/B, (i+1)/B]. Bin edges are computed as i/B so goldens are
reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from uqkit.core.data import ClassificationPrediction
from uqkit.errors import EmptyInput, ModeTaskMismatch
from uqkit.numerics.linalg import as_vector

BRIER_POSITIVE_CLASS = "positive_class"
BRIER_MULTICLASS_SUM = "multiclass_sum"


def _check_labels(prediction: ClassificationPrediction, labels) -> np.ndarray:
    if prediction.n == 0:
        raise EmptyInput("metric needs at least one prediction")
    y = as_vector(labels, "labels")
    if y.size != prediction.n:
        raise ValueError("labels length must match the prediction")
    if np.any(y != np.round(y)) or y.min() < 0 or y.max() >= prediction.n_classes:
        raise ValueError("labels must be class indices matching the probability rows")
    return y.astype(np.int64)


def _bin_index(confidence: np.ndarray, bins: int) -> np.ndarray:
    upper_edges = np.arange(1, bins + 1) / bins
    return np.searchsorted(upper_edges, confidence, side="left").astype(np.int64)


@dataclass(frozen=True)
class ReliabilityBins:
    """Per-bin confidence/accuracy statistics; empty bins carry NaN stats."""

    bin_edges: np.ndarray      # length B+1 over [0, 1]
    counts: np.ndarray         # length B, sums to n
    mean_confidence: np.ndarray
    accuracy: np.ndarray

    @property
    def n_bins(self) -> int:
        return self.counts.size

    @property
    def occupied(self) -> np.ndarray:
        return self.counts > 0

    def ece(self) -> float:
        """Expected calibration error recomputed exactly from the bins."""
        n = self.counts.sum()
        occ = self.occupied
        gaps = np.abs(self.accuracy[occ] - self.mean_confidence[occ])
        return float(np.sum(self.counts[occ] / n * gaps))

    def to_payload(self) -> dict:
        return {
            "bin_edges": self.bin_edges.tolist(),
            "counts": self.counts.tolist(),
            "mean_confidence": [None if not o else v for o, v in
                                zip(self.occupied, self.mean_confidence.tolist())],
            "accuracy": [None if not o else v for o, v in
                         zip(self.occupied, self.accuracy.tolist())],
        }


def reliability_diagram(prediction: ClassificationPrediction, labels,
                        bins: int = 10) -> ReliabilityBins:
    """Bin confidences and report per-bin count, mean confidence, accuracy."""
    if bins < 1:
        raise ValueError("bins must be at least 1")
    y = _check_labels(prediction, labels)
    correct = (prediction.predicted_class == y).astype(np.float64)
    index = _bin_index(prediction.confidence, bins)

    counts = np.bincount(index, minlength=bins).astype(np.int64)
    conf_sum = np.bincount(index, weights=prediction.confidence, minlength=bins)
    correct_sum = np.bincount(index, weights=correct, minlength=bins)
    with np.errstate(invalid="ignore"):
        mean_conf = np.where(counts > 0, conf_sum / np.maximum(counts, 1), np.nan)
        accuracy = np.where(counts > 0, correct_sum / np.maximum(counts, 1), np.nan)
    return ReliabilityBins(bin_edges=np.arange(0, bins + 1) / bins, counts=counts,
                           mean_confidence=mean_conf, accuracy=accuracy)


def ece(prediction: ClassificationPrediction, labels, bins: int = 10) -> float:
    """Expected calibration error over the frozen binning rule."""
    return reliability_diagram(prediction, labels, bins).ece()


def brier(prediction: ClassificationPrediction, labels,
          mode: str = BRIER_POSITIVE_CLASS) -> float:
    """Brier score; positive-class mode requires a binary task."""
    y = _check_labels(prediction, labels)
    if mode == BRIER_POSITIVE_CLASS:
        if prediction.n_classes != 2:
            raise ModeTaskMismatch("positive_class Brier requires exactly 2 classes")
        p_pos = prediction.probs[:, 1]
        return float(np.mean((p_pos - (y == 1)) ** 2))
    if mode == BRIER_MULTICLASS_SUM:
        onehot = np.zeros_like(prediction.probs)
        onehot[np.arange(y.size), y] = 1.0
        return float(np.mean(np.sum((prediction.probs - onehot) ** 2, axis=1)))
    raise ValueError(f"unknown Brier mode {mode!r}")
