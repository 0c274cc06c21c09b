"""Empirical quantiles under one fixed interpolation rule.

The whole toolkit uses linear interpolation between order statistics at
position ``p * (n - 1)`` (zero-indexed), so estimator intervals and the
metrics that grade them can never disagree about what a quantile means.
"""

from __future__ import annotations

import numpy as np

from uqkit.errors import EmptyInput


def empirical_quantile(values, p):
    """Quantile(s) of ``values`` at probability ``p`` in [0, 1].

    ``p`` may be a scalar or an array; the result matches its shape.
    """
    v = np.asarray(values, dtype=np.float64).ravel()
    if v.size == 0:
        raise EmptyInput("empirical_quantile needs at least one value")
    if not np.all(np.isfinite(v)):
        raise ValueError("values contain non-finite entries")
    p_arr = np.asarray(p, dtype=np.float64)
    if np.any(p_arr < 0.0) or np.any(p_arr > 1.0):
        raise ValueError("quantile probability must lie in [0, 1]")
    out = np.quantile(v, p_arr, method="linear")
    return float(out) if np.isscalar(p) or p_arr.ndim == 0 else out
