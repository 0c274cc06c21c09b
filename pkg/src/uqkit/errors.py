"""Exception types raised across the toolkit.

Every error a caller is expected to handle derives from :class:`UqError`;
plain ``ValueError``/``TypeError`` are reserved for violated preconditions
(bad argument shapes and the like).
"""


class UqError(Exception):
    """Base class for all toolkit errors."""


class ConfigError(UqError):
    """Unknown configuration key or out-of-range value."""


class TaskMismatch(UqError):
    """Estimator or metric applied to the wrong task kind."""


class DegenerateData(UqError):
    """Dataset unusable for the requested fit (too small, constant, ...)."""


class DimensionMismatch(UqError):
    """Feature matrix width differs from what the model was trained on."""


class NotPositiveDefinite(UqError):
    """Cholesky factorization failed even after the jitter retry."""


class EmptyInput(UqError):
    """An operation that needs at least one sample received none."""


class NonFiniteObjective(UqError):
    """Objective value or gradient became NaN/inf during optimization."""

    def __init__(self, message: str, iteration: int | None = None):
        if iteration is not None:
            message = f"{message} (iteration {iteration})"
        super().__init__(message)
        self.iteration = iteration


class TooFewSamples(UqError):
    """Cross-validation asked for more folds than the data supports."""


class GridExhausted(UqError):
    """Every configuration in a grid search failed to fit."""


class UqIoError(UqError):
    """Model file could not be read or written."""


class SchemaVersionMismatch(UqError):
    """Model file written under an incompatible schema version."""


class CorruptPayload(UqError):
    """Model file does not parse or lacks required fields."""


class SingularHessian(UqError):
    """GLM Hessian not invertible; increase the ridge penalty."""


class OneClassOnly(UqError):
    """Binary calibration requires both classes to be present."""


class NotBinary(UqError):
    """Probability maps only apply to two-class predictions."""


class DegenerateInput(UqError):
    """Calibration input too small to fit a map."""


class TargetUnreachable(UqError):
    """No interval scale can meet the requested recalibration target."""


class ModeTaskMismatch(UqError):
    """Brier mode incompatible with the number of classes."""


class AllZeroWidth(UqError):
    """Interval diagnostics need at least one positive-width interval."""


class UnsupportedKind(UqError):
    """Plot specification kind not known to the renderer."""


class DegenerateDistribution(UqError):
    """Distribution has no spread (sigma <= 0 or constant samples)."""
