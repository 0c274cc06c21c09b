"""Self-contained numerical kernels shared by all estimators."""

from uqkit.numerics.gaussian import normal_pdf, normal_quantile
from uqkit.numerics.linalg import as_matrix, as_vector, cholesky_solve, log_det_cholesky
from uqkit.numerics.optimize import OptimizerConfig, check_gradient, minimize
from uqkit.numerics.quantiles import empirical_quantile
from uqkit.numerics.rng import RngStream

__all__ = [
    "RngStream",
    "OptimizerConfig",
    "as_matrix",
    "as_vector",
    "check_gradient",
    "cholesky_solve",
    "empirical_quantile",
    "log_det_cholesky",
    "minimize",
    "normal_pdf",
    "normal_quantile",
]
