"""Standard-normal density and inverse CDF.

The inverse CDF uses Acklam's rational approximation (relative error
below 1.15e-9 over the open unit interval), which keeps golden outputs
stable without pulling in an external math dependency.
"""

from __future__ import annotations

import numpy as np

# Acklam coefficients: central rational fit plus two tail fits.
_A = (-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
      1.383577518672690e+02, -3.066479806614716e+01, 2.506628277459239e+00)
_B = (-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
      6.680131188771972e+01, -1.328068155288572e+01)
_C = (-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
      -2.549732539343734e+00, 4.374664141464968e+00, 2.938163982698783e+00)
_D = (7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
      3.754408661907416e+00)
_P_LOW = 0.02425


def _tail(q: np.ndarray) -> np.ndarray:
    num = ((((_C[0] * q + _C[1]) * q + _C[2]) * q + _C[3]) * q + _C[4]) * q + _C[5]
    den = (((_D[0] * q + _D[1]) * q + _D[2]) * q + _D[3]) * q + 1.0
    return num / den


def normal_quantile(p):
    """Inverse standard-normal CDF for ``p`` in (0, 1)."""
    p_arr = np.asarray(p, dtype=np.float64)
    if np.any(p_arr <= 0.0) or np.any(p_arr >= 1.0):
        raise ValueError("normal_quantile requires 0 < p < 1")
    out = np.empty_like(p_arr)

    low = p_arr < _P_LOW
    high = p_arr > 1.0 - _P_LOW
    mid = ~(low | high)

    if np.any(mid):
        q = p_arr[mid] - 0.5
        r = q * q
        num = ((((_A[0] * r + _A[1]) * r + _A[2]) * r + _A[3]) * r + _A[4]) * r + _A[5]
        den = ((((_B[0] * r + _B[1]) * r + _B[2]) * r + _B[3]) * r + _B[4]) * r + 1.0
        out[mid] = num * q / den
    if np.any(low):
        out[low] = _tail(np.sqrt(-2.0 * np.log(p_arr[low])))
    if np.any(high):
        out[high] = -_tail(np.sqrt(-2.0 * np.log(1.0 - p_arr[high])))
    return float(out) if np.isscalar(p) or p_arr.ndim == 0 else out


def normal_pdf(x):
    """Standard-normal density."""
    x_arr = np.asarray(x, dtype=np.float64)
    out = np.exp(-0.5 * x_arr * x_arr) / np.sqrt(2.0 * np.pi)
    return float(out) if np.isscalar(x) or x_arr.ndim == 0 else out


def central_interval_z(mass: float) -> float:
    """z such that a Gaussian central interval mean ± z·std holds ``mass``."""
    if not 0.0 < mass < 1.0:
        raise ValueError("interval mass must lie in (0, 1)")
    return float(normal_quantile(0.5 + mass / 2.0))
