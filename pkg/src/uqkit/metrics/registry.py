"""Named metrics exposed to model selection and the CLI.

Every entry declares its task kind and optimization direction so grid
search knows which way is better without callers repeating it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from uqkit.core.data import CLASSIFICATION, REGRESSION, Prediction
from uqkit.errors import ConfigError
from uqkit.metrics.classification import BRIER_MULTICLASS_SUM, BRIER_POSITIVE_CLASS, brier, ece
from uqkit.metrics.regression import mpiw, picp


@dataclass(frozen=True)
class MetricSpec:
    name: str
    task_kind: str
    greater_is_better: bool
    compute: Callable[[Prediction, object], float]


def _brier_auto(prediction, labels) -> float:
    mode = BRIER_POSITIVE_CLASS if prediction.n_classes == 2 else BRIER_MULTICLASS_SUM
    return brier(prediction, labels, mode)


_METRICS: dict[str, MetricSpec] = {}


def register_metric(spec: MetricSpec) -> None:
    _METRICS[spec.name] = spec


def metric_names() -> list[str]:
    return sorted(_METRICS)


def get_metric(name: str) -> MetricSpec:
    try:
        return _METRICS[name]
    except KeyError:
        raise ConfigError(
            f"unknown metric {name!r}; registered: {metric_names()}") from None


register_metric(MetricSpec("picp", REGRESSION, True,
                           lambda pred, y: picp(pred, y)))
register_metric(MetricSpec("mpiw", REGRESSION, False,
                           lambda pred, y: mpiw(pred)))
register_metric(MetricSpec("ece", CLASSIFICATION, False,
                           lambda pred, y: ece(pred, y, bins=10)))
register_metric(MetricSpec("brier", CLASSIFICATION, False, _brier_auto))
