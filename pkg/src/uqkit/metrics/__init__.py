"""Calibration metrics and diagnostic curves."""

from uqkit.metrics.classification import (
    BRIER_MULTICLASS_SUM,
    BRIER_POSITIVE_CLASS,
    ReliabilityBins,
    brier,
    ece,
    reliability_diagram,
)
from uqkit.metrics.curves import (
    KIND_RELIABILITY,
    KIND_RISK_REJECTION,
    KIND_UCC,
    UCC_NORM_MEAN_ABS_TARGET,
    UCC_NORM_NONE,
    UCC_NORM_TARGET_RANGE,
    CurveResult,
    interval_requirement_scales,
    risk_rejection_curve,
    ucc,
)
from uqkit.metrics.registry import MetricSpec, get_metric, metric_names, register_metric
from uqkit.metrics.regression import mpiw, picp

__all__ = [
    "BRIER_MULTICLASS_SUM",
    "BRIER_POSITIVE_CLASS",
    "CurveResult",
    "KIND_RELIABILITY",
    "KIND_RISK_REJECTION",
    "KIND_UCC",
    "MetricSpec",
    "ReliabilityBins",
    "UCC_NORM_MEAN_ABS_TARGET",
    "UCC_NORM_NONE",
    "UCC_NORM_TARGET_RANGE",
    "brier",
    "ece",
    "get_metric",
    "interval_requirement_scales",
    "metric_names",
    "mpiw",
    "picp",
    "register_metric",
    "reliability_diagram",
    "risk_rejection_curve",
    "ucc",
]
