"""Datasets, prediction containers, and dataset fingerprints.

One estimator contract serves both tasks: regression predictions always
carry the (y_hat, y_lower, y_upper) triple, classification predictions a
full probability row per sample plus a confidence score (the row max).
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import numpy as np

from uqkit.numerics.linalg import as_matrix, as_vector

REGRESSION = "regression"
CLASSIFICATION = "classification"


@dataclass(frozen=True)
class Task:
    kind: str
    n_classes: int | None = None

    def __post_init__(self):
        if self.kind not in (REGRESSION, CLASSIFICATION):
            raise ValueError(f"unknown task kind {self.kind!r}")
        if self.kind == CLASSIFICATION:
            if self.n_classes is None or self.n_classes < 2:
                raise ValueError("classification task needs n_classes >= 2")
        elif self.n_classes is not None:
            raise ValueError("regression task takes no n_classes")

    @staticmethod
    def regression() -> "Task":
        return Task(REGRESSION)

    @staticmethod
    def classification(n_classes: int) -> "Task":
        return Task(CLASSIFICATION, n_classes)


@dataclass(frozen=True)
class DatasetFingerprint:
    """Provenance summary stored inside every fitted model."""

    n: int
    d: int
    task_kind: str
    n_classes: int | None
    content_hash: str

    def to_payload(self) -> dict:
        return {"n": self.n, "d": self.d, "task_kind": self.task_kind,
                "n_classes": self.n_classes, "content_hash": self.content_hash}

    @classmethod
    def from_payload(cls, payload: dict) -> "DatasetFingerprint":
        return cls(n=payload["n"], d=payload["d"], task_kind=payload["task_kind"],
                   n_classes=payload["n_classes"], content_hash=payload["content_hash"])


@dataclass(frozen=True)
class Dataset:
    """Feature matrix (n x d), target vector (length n), and task kind."""

    features: np.ndarray
    target: np.ndarray
    feature_names: tuple[str, ...]
    task: Task

    def __post_init__(self):
        features = as_matrix(self.features, "features")
        target = as_vector(self.target, "target")
        object.__setattr__(self, "features", features)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "feature_names", tuple(self.feature_names))
        if features.shape[0] < 1:
            raise ValueError("dataset needs at least one sample")
        if features.shape[0] != target.size:
            raise ValueError("features and target disagree on sample count")
        if len(self.feature_names) != features.shape[1]:
            raise ValueError("feature_names length must equal feature count")
        if self.task.kind == CLASSIFICATION:
            k = self.task.n_classes
            if np.any(target != np.round(target)) or target.min() < 0 or target.max() >= k:
                raise ValueError(f"classification targets must be class indices in [0, {k})")

    @property
    def n(self) -> int:
        return self.features.shape[0]

    @property
    def d(self) -> int:
        return self.features.shape[1]

    def fingerprint(self) -> DatasetFingerprint:
        digest = hashlib.sha256()
        digest.update(np.ascontiguousarray(self.features, dtype="<f8").tobytes())
        digest.update(b"|")
        digest.update(np.ascontiguousarray(self.target, dtype="<f8").tobytes())
        digest.update(b"|")
        tag = self.task.kind if self.task.n_classes is None \
            else f"{self.task.kind}:{self.task.n_classes}"
        digest.update(tag.encode("ascii"))
        return DatasetFingerprint(n=self.n, d=self.d, task_kind=self.task.kind,
                                  n_classes=self.task.n_classes,
                                  content_hash=digest.hexdigest())


def make_dataset(features, target, task: Task, feature_names=None) -> Dataset:
    """Convenience constructor with auto-generated feature names."""
    features = as_matrix(features, "features")
    if feature_names is None:
        feature_names = tuple(f"x{j}" for j in range(features.shape[1]))
    return Dataset(features=features, target=np.asarray(target, dtype=np.float64),
                   feature_names=tuple(feature_names), task=task)


@dataclass(frozen=True)
class RegressionPrediction:
    """Point estimates with interval bounds; optional std and raw draws."""

    y_hat: np.ndarray
    y_lower: np.ndarray
    y_upper: np.ndarray
    y_std: np.ndarray | None = None
    samples: np.ndarray | None = None

    def __post_init__(self):
        y_hat = as_vector(self.y_hat, "y_hat")
        y_lower = as_vector(self.y_lower, "y_lower")
        y_upper = as_vector(self.y_upper, "y_upper")
        object.__setattr__(self, "y_hat", y_hat)
        object.__setattr__(self, "y_lower", y_lower)
        object.__setattr__(self, "y_upper", y_upper)
        if not (y_hat.size == y_lower.size == y_upper.size):
            raise ValueError("prediction vectors must share one length")
        if np.any(y_lower > y_hat) or np.any(y_hat > y_upper):
            raise ValueError("intervals must satisfy y_lower <= y_hat <= y_upper")
        if self.y_std is not None:
            y_std = as_vector(self.y_std, "y_std")
            object.__setattr__(self, "y_std", y_std)
            if y_std.size != y_hat.size or np.any(y_std < 0):
                raise ValueError("y_std must be non-negative and match y_hat's length")
        if self.samples is not None:
            samples = as_matrix(self.samples, "samples")
            object.__setattr__(self, "samples", samples)
            if samples.shape[0] != y_hat.size:
                raise ValueError("samples must have one row per prediction")

    @property
    def n(self) -> int:
        return self.y_hat.size


@dataclass(frozen=True)
class ClassificationPrediction:
    """Probability rows with the induced class and a confidence score.

    ``predicted_class`` is always the row argmax. ``confidence`` defaults
    to the row max but may be supplied explicitly (meta-models report a
    correctness probability instead); it must lie in [0, 1].
    """

    probs: np.ndarray
    predicted_class: np.ndarray = field(default=None)  # type: ignore[assignment]
    confidence: np.ndarray = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        probs = as_matrix(self.probs, "probs")
        object.__setattr__(self, "probs", probs)
        if probs.shape[1] < 2:
            raise ValueError("probability rows need at least two classes")
        if np.any(probs < 0) or np.any(probs > 1):
            raise ValueError("probabilities must lie in [0, 1]")
        if np.any(np.abs(probs.sum(axis=1) - 1.0) > 1e-9):
            raise ValueError("probability rows must sum to 1 within 1e-9")
        predicted = probs.argmax(axis=1).astype(np.int64)
        if self.predicted_class is not None:
            if np.any(np.asarray(self.predicted_class, dtype=np.int64) != predicted):
                raise ValueError("predicted_class must be the row argmax")
        if self.confidence is None:
            confidence = probs.max(axis=1)
        else:
            confidence = as_vector(self.confidence, "confidence")
            if confidence.size != probs.shape[0]:
                raise ValueError("confidence must have one entry per row")
            if np.any(confidence < 0) or np.any(confidence > 1):
                raise ValueError("confidence must lie in [0, 1]")
        object.__setattr__(self, "predicted_class", predicted)
        object.__setattr__(self, "confidence", confidence)

    @property
    def n(self) -> int:
        return self.probs.shape[0]

    @property
    def n_classes(self) -> int:
        return self.probs.shape[1]


Prediction = RegressionPrediction | ClassificationPrediction
