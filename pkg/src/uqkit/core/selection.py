"""Metric-driven model selection: cross-validation and grid search."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from uqkit.core.data import CLASSIFICATION, Dataset, make_dataset
from uqkit.core.registry import EstimatorConfig, fit, predict
from uqkit.errors import GridExhausted, TooFewSamples, UqError
from uqkit.metrics.registry import get_metric
from uqkit.numerics.rng import RngStream


@dataclass(frozen=True)
class ScorerSpec:
    """Named metric plus the direction grid search should optimize."""

    metric_name: str
    task_kind: str
    greater_is_better: bool

    def __post_init__(self):
        spec = get_metric(self.metric_name)
        if spec.task_kind != self.task_kind:
            raise ValueError(
                f"metric {self.metric_name!r} is registered for {spec.task_kind}, "
                f"not {self.task_kind}")


def make_scorer(metric_name: str) -> ScorerSpec:
    """ScorerSpec for a registered metric with its registered direction."""
    spec = get_metric(metric_name)
    return ScorerSpec(metric_name=metric_name, task_kind=spec.task_kind,
                      greater_is_better=spec.greater_is_better)


def fold_assignment(dataset: Dataset, folds: int, rng: RngStream) -> np.ndarray:
    """Seeded fold index per sample; stratified by class for classification."""
    if folds < 2:
        raise TooFewSamples("cross-validation needs at least 2 folds")
    if dataset.n < folds:
        raise TooFewSamples(f"{folds} folds need at least {folds} samples, got {dataset.n}")
    assignment = np.empty(dataset.n, dtype=np.int64)
    if dataset.task.kind == CLASSIFICATION:
        counter = 0
        for cls in range(dataset.task.n_classes):
            members = np.flatnonzero(dataset.target == cls)
            shuffled = members[rng.permutation(members.size)]
            assignment[shuffled] = (counter + np.arange(members.size)) % folds
            counter += members.size
    else:
        perm = rng.permutation(dataset.n)
        assignment[perm] = np.arange(dataset.n) % folds
    return assignment


def _subset(dataset: Dataset, mask: np.ndarray) -> Dataset:
    return make_dataset(dataset.features[mask], dataset.target[mask],
                        dataset.task, dataset.feature_names)


def _score_folds(config: EstimatorConfig, dataset: Dataset, scorer: ScorerSpec,
                 assignment: np.ndarray, folds: int, rng: RngStream) -> np.ndarray:
    metric = get_metric(scorer.metric_name)
    scores = np.empty(folds)
    for i in range(folds):
        held = assignment == i
        model = fit(config, _subset(dataset, ~held), rng.spawn(i))
        prediction = predict(model, dataset.features[held])
        scores[i] = metric.compute(prediction, dataset.target[held])
    return scores


def cross_validate(config: EstimatorConfig, dataset: Dataset, scorer: ScorerSpec,
                   folds: int, rng: RngStream) -> np.ndarray:
    """Per-fold held-out scores under seeded, deterministic fold assignment."""
    if dataset.task.kind != scorer.task_kind:
        raise UqError(
            f"scorer {scorer.metric_name!r} is for {scorer.task_kind}, "
            f"dataset is {dataset.task.kind}")
    assignment = fold_assignment(dataset, folds, rng.spawn(0))
    return _score_folds(config, dataset, scorer, assignment, folds, rng.spawn(1))


def grid_search(config_grid: list[EstimatorConfig], dataset: Dataset, scorer: ScorerSpec,
                folds: int, rng: RngStream) -> tuple[EstimatorConfig, list[dict]]:
    """Pick the grid config with the best mean CV score.

    All configs share one fold assignment. Configs whose fit raises a
    toolkit error are recorded as "failed" and excluded; ties go to the
    earliest grid position. Returns (best_config, score table).
    """
    if not config_grid:
        raise ValueError("config grid must not be empty")
    assignment = fold_assignment(dataset, folds, rng.spawn(0))

    table: list[dict] = []
    best_index = None
    best_mean = None
    for j, config in enumerate(config_grid):
        row = {"index": j, "algorithm_id": config.algorithm_id,
               "params": dict(config.params)}
        try:
            scores = _score_folds(config, dataset, scorer, assignment, folds,
                                  rng.spawn(j + 1))
        except UqError as exc:
            row.update(status="failed", error=str(exc), fold_scores=None, mean_score=None)
            table.append(row)
            continue
        mean = float(scores.mean())
        row.update(status="ok", error=None, fold_scores=scores.tolist(), mean_score=mean)
        table.append(row)
        better = best_mean is None or (mean > best_mean if scorer.greater_is_better
                                       else mean < best_mean)
        if better:
            best_index, best_mean = j, mean

    if best_index is None:
        raise GridExhausted("every config in the grid failed to fit")
    return config_grid[best_index], table
