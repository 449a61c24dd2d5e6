"""Dense SPD kernel: Cholesky factorization, triangular solves, log-determinant.

All determinant work is done in log-space; the determinant itself can
overflow for barrier Hessians near a polytope boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import DimensionMismatch, NotPositiveDefinite

_SYMMETRY_RTOL = 1e-12


@dataclass(frozen=True)
class CholeskyFactor:
    """Lower-triangular factor L with L L^T = M and log det M."""

    lower: np.ndarray
    log_det: float

    @property
    def order(self) -> int:
        return self.lower.shape[0]


def _check_spd_input(matrix: np.ndarray) -> np.ndarray:
    m = np.asarray(matrix, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    scale = np.abs(m).max()
    if scale > 0 and np.abs(m - m.T).max() > _SYMMETRY_RTOL * scale:
        raise ValueError("matrix is not symmetric to within 1e-12 relative")
    return m


def _failing_pivot(matrix: np.ndarray) -> int:
    # Classic unpivoted Cholesky rerun, only to locate the offending pivot
    # once LAPACK has already refused the matrix.
    n = matrix.shape[0]
    lower = np.zeros_like(matrix)
    for i in range(n):
        for j in range(i + 1):
            acc = matrix[i, j] - lower[i, :j] @ lower[j, :j]
            if i == j:
                if acc <= 0.0 or math.isnan(acc):
                    return i
                lower[i, i] = math.sqrt(acc)
            else:
                lower[i, j] = acc / lower[j, j]
    return n - 1


def cholesky(matrix: np.ndarray) -> CholeskyFactor:
    """Factor a symmetric positive definite matrix as L L^T.

    Raises NotPositiveDefinite (with the pivot index) when a pivot is
    nonpositive; the failure is reported, never repaired, because for
    barrier Hessians it means invalid input.
    """
    m = _check_spd_input(matrix)
    try:
        lower = np.linalg.cholesky(m)
    except np.linalg.LinAlgError:
        raise NotPositiveDefinite(_failing_pivot(m)) from None
    diag = np.diagonal(lower)
    log_det = 2.0 * float(np.sum(np.log(diag)))
    lower.setflags(write=False)
    return CholeskyFactor(lower=lower, log_det=log_det)


def tri_solve(factor: CholeskyFactor, rhs: np.ndarray, transposed: bool = False) -> np.ndarray:
    """Solve L x = rhs, or L^T x = rhs when ``transposed``."""
    y = np.asarray(rhs, dtype=float)
    if y.shape[0] != factor.order:
        raise DimensionMismatch(
            f"rhs has length {y.shape[0]}, factor has order {factor.order}"
        )
    return scipy.linalg.solve_triangular(
        factor.lower, y, lower=True, trans=1 if transposed else 0,
        check_finite=False,
    )


def quad_form_inv(factor: CholeskyFactor, vector: np.ndarray) -> float:
    """Return v^T M^{-1} v for the factored matrix M, as ||L^{-1} v||^2."""
    w = tri_solve(factor, vector)
    return float(w @ w)


def spd_solve(factor: CholeskyFactor, rhs: np.ndarray) -> np.ndarray:
    """Solve M x = rhs via the two triangular solves."""
    return tri_solve(factor, tri_solve(factor, rhs), transposed=True)
