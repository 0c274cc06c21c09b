"""Algorithm registry and the shared fit/predict contract.

Every algorithm registers its id, supported task kind, config schema,
and a pair of pure functions: ``fit(config, dataset, rng) -> state`` and
``predict(config, state, features, rng) -> prediction``. The registry
enforces the contract pieces that are common to everyone: config
validation, task matching, dataset fingerprinting, deterministic
predict-time seeding, and optional dataset-level standardization.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Callable, Mapping

import numpy as np

from uqkit.core.data import Dataset, Prediction, Task, make_dataset
from uqkit.core.model_io import SCHEMA_VERSION, FittedEstimator
from uqkit.errors import ConfigError, DegenerateData, DimensionMismatch, TaskMismatch
from uqkit.numerics.linalg import as_matrix
from uqkit.numerics.rng import RngStream

# Substream index reserved for deriving the stored predict-time seed.
_PREDICT_STREAM = 0x7052_4544


@dataclass(frozen=True)
class Param:
    """One config key: default value, validity check, and a description
    used verbatim in ConfigError messages."""

    default: Any
    describe: str
    check: Callable[[Any], bool] | None = None
    sub_schema: dict | None = None


def validate_config(schema: Mapping[str, Param], params: Mapping[str, Any],
                    context: str) -> dict:
    """Merge ``params`` over schema defaults; unknown keys are hard errors."""
    unknown = sorted(set(params) - set(schema))
    if unknown:
        raise ConfigError(
            f"{context}: unknown config key(s) {unknown}; known keys: {sorted(schema)}")
    merged: dict[str, Any] = {}
    for name, spec in schema.items():
        value = params.get(name, spec.default)
        if spec.sub_schema is not None:
            if not isinstance(value, Mapping):
                raise ConfigError(f"{context}: {name} must be a mapping ({spec.describe})")
            value = validate_config(spec.sub_schema, value, f"{context}.{name}")
        elif spec.check is not None and not spec.check(value):
            raise ConfigError(f"{context}: {name}={value!r} invalid; expected {spec.describe}")
        merged[name] = value
    return merged


@dataclass(frozen=True)
class EstimatorConfig:
    algorithm_id: str
    params: Mapping[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class Algorithm:
    algorithm_id: str
    task_kind: str
    schema: Mapping[str, Param]
    fit_state: Callable[[dict, Dataset, RngStream], dict]
    predict_from_state: Callable[[dict, dict, np.ndarray, RngStream], Prediction]
    min_train_size: int = 1


_ALGORITHMS: dict[str, Algorithm] = {}


def register_algorithm(algorithm: Algorithm) -> None:
    _ALGORITHMS[algorithm.algorithm_id] = algorithm


def algorithm_ids() -> list[str]:
    return sorted(_ALGORITHMS)


def get_algorithm(algorithm_id: str) -> Algorithm:
    try:
        return _ALGORITHMS[algorithm_id]
    except KeyError:
        raise ConfigError(
            f"unknown algorithm {algorithm_id!r}; registered: {algorithm_ids()}") from None


def _canonical(obj) -> dict:
    # JSON round trip: guarantees the stored payload is pure JSON types,
    # so model equality and byte determinism follow from dict equality.
    return json.loads(json.dumps(obj, sort_keys=True))


def _standardization(features: np.ndarray) -> dict:
    mean = features.mean(axis=0)
    std = features.std(axis=0)
    std = np.where(std == 0.0, 1.0, std)
    return {"mean": mean.tolist(), "std": std.tolist()}


def _apply_standardization(preprocess: dict, features: np.ndarray) -> np.ndarray:
    mean = np.asarray(preprocess["mean"])
    std = np.asarray(preprocess["std"])
    return (features - mean) / std


def fit(config: EstimatorConfig, dataset: Dataset, rng: RngStream,
        standardize: bool = False) -> FittedEstimator:
    """Fit a registered algorithm; refitting with the same seed and data
    reproduces identical state."""
    algorithm = get_algorithm(config.algorithm_id)
    if dataset.task.kind != algorithm.task_kind:
        raise TaskMismatch(
            f"{config.algorithm_id} supports {algorithm.task_kind}, "
            f"dataset task is {dataset.task.kind}")
    merged = validate_config(algorithm.schema, config.params, config.algorithm_id)
    if dataset.n < algorithm.min_train_size:
        raise DegenerateData(
            f"{config.algorithm_id} needs at least {algorithm.min_train_size} samples, "
            f"got {dataset.n}")

    fingerprint = dataset.fingerprint()
    preprocess = None
    if standardize:
        preprocess = {"standardize": True, **_standardization(dataset.features)}
        dataset = make_dataset(_apply_standardization(preprocess, dataset.features),
                               dataset.target, dataset.task, dataset.feature_names)

    state = algorithm.fit_state(merged, dataset, rng)
    state["_predict_seed"] = rng.spawn(_PREDICT_STREAM).seed
    return FittedEstimator(
        algorithm_id=config.algorithm_id,
        config=_canonical(merged),
        state=_canonical(state),
        schema_version=SCHEMA_VERSION,
        trained_on=fingerprint,
        preprocess=preprocess,
    )


def predict(model: FittedEstimator, features, rng: RngStream | None = None) -> Prediction:
    """Predict with a fitted model; deterministic for a fixed model."""
    features = as_matrix(features, "features")
    if features.shape[1] != model.trained_on.d:
        raise DimensionMismatch(
            f"model was trained on {model.trained_on.d} features, got {features.shape[1]}")
    if model.preprocess is not None and model.preprocess.get("standardize"):
        features = _apply_standardization(model.preprocess, features)
    algorithm = get_algorithm(model.algorithm_id)
    if rng is None:
        rng = RngStream(model.state["_predict_seed"])
    return algorithm.predict_from_state(model.config, model.state, features, rng)
