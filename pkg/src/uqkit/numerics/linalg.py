"""Dense linear algebra on symmetric positive-definite systems.

Matrices are plain 2-D float64 numpy arrays; :func:`as_matrix` /
:func:`as_vector` validate the invariants (finite entries, expected
dimensionality) at module boundaries.
"""

from __future__ import annotations

import numpy as np

from uqkit.errors import NotPositiveDefinite

_SYM_TOL = 1e-9


def as_matrix(values, name: str = "matrix") -> np.ndarray:
    """Validate and return ``values`` as a finite 2-D float64 array."""
    a = np.asarray(values, dtype=np.float64)
    if a.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} contains non-finite entries")
    return a


def as_vector(values, name: str = "vector") -> np.ndarray:
    """Validate and return ``values`` as a finite 1-D float64 array."""
    v = np.asarray(values, dtype=np.float64)
    if v.ndim != 1:
        raise ValueError(f"{name} must be 1-D, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError(f"{name} contains non-finite entries")
    return v


def _check_symmetric(a: np.ndarray) -> None:
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix must be square, got shape {a.shape}")
    scale = max(1.0, float(np.abs(a).max())) if a.size else 1.0
    if float(np.abs(a - a.T).max()) > _SYM_TOL * scale:
        raise ValueError("matrix is not symmetric within 1e-9 relative tolerance")


def cholesky_factor(a: np.ndarray) -> np.ndarray:
    """Lower Cholesky factor of a symmetric positive-definite matrix.

    On failure the factorization is retried once with
    ``1e-8 * trace(a)/n`` added to the diagonal; a second failure raises
    :class:`NotPositiveDefinite`.
    """
    a = as_matrix(a)
    _check_symmetric(a)
    try:
        return np.linalg.cholesky(a)
    except np.linalg.LinAlgError:
        pass
    n = a.shape[0]
    jitter = 1e-8 * float(np.trace(a)) / n
    try:
        return np.linalg.cholesky(a + jitter * np.eye(n))
    except np.linalg.LinAlgError:
        raise NotPositiveDefinite(
            f"matrix is not positive definite (jitter retry {jitter:.3e} failed)"
        ) from None


def solve_with_factor(chol: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve ``a @ x = b`` given the lower Cholesky factor of ``a``."""
    y = np.linalg.solve(chol, np.asarray(b, dtype=np.float64))
    return np.linalg.solve(chol.T, y)


def cholesky_solve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve ``a @ x = b`` for symmetric positive-definite ``a``."""
    return solve_with_factor(cholesky_factor(a), b)


def log_det_cholesky(a: np.ndarray) -> float:
    """Log-determinant of a symmetric positive-definite matrix."""
    chol = cholesky_factor(a)
    return float(2.0 * np.sum(np.log(np.diag(chol))))
