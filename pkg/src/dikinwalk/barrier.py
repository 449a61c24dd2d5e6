"""Log-barrier geometry at a point.

For a polytope {A x >= b} the barrier is F(x) = -sum_i log s_i(x) with
slacks s_i = a_i^T x - b_i. Its Hessian H(x) = sum_i a_i a_i^T / s_i^2
defines the local norm ||v||_x = sqrt(v^T H(x) v); the unit ball of that
norm is the Dikin ellipsoid. A BarrierFactor caches the slacks, the
Cholesky factor of H(x), and log det H(x) so that proposal sampling and
log-densities reuse one factorization.

Densities are handled in log-space throughout (natural logarithm).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import BoundaryPoint, DimensionMismatch, NoConvergence
from .linalg import CholeskyFactor
from .polytope import Polytope, InteriorPoint, _as_coords, slacks

_ARMIJO_SLOPE = 0.25


@dataclass(frozen=True)
class BarrierFactor:
    """Per-point cache: slacks, Cholesky of H(x), log det H(x)."""

    point: np.ndarray
    slacks: np.ndarray
    chol: CholeskyFactor
    log_det_H: float

    @property
    def n(self) -> int:
        return self.point.shape[0]


@dataclass(frozen=True)
class CenterOptions:
    """Newton iteration knobs for the analytic center finder."""

    max_iterations: int = 100
    tolerance: float = 1e-8
    damping: float = 0.5

    def __post_init__(self):
        if self.tolerance <= 0.0:
            raise ValueError("tolerance must be positive")


def hessian_at(polytope: Polytope, point) -> np.ndarray:
    """H(x) = sum_i a_i a_i^T / s_i^2.

    Defined wherever all slacks are nonzero; interiority is not required
    here because the squared slacks make H positive definite on either
    side of a facet.
    """
    x = _as_coords(point, polytope.n)
    s = slacks(polytope, x)
    if np.any(s == 0.0):
        raise BoundaryPoint("Hessian undefined where a slack is exactly zero")
    scaled = polytope.A / s[:, None]
    h = scaled.T @ scaled
    return 0.5 * (h + h.T)


def factor_at(polytope: Polytope, point, slack_values: np.ndarray | None = None) -> BarrierFactor:
    """Factor H(x) at a strictly interior point.

    ``slack_values`` may carry precomputed slacks for the point (the walk's
    hot loop already has them); they are trusted to match.
    """
    x = _as_coords(point, polytope.n)
    s = slacks(polytope, x) if slack_values is None else slack_values
    if s.min() <= 0.0:
        raise BoundaryPoint(f"min slack {s.min():.3e} is not strictly positive")
    scaled = polytope.A / s[:, None]
    h = scaled.T @ scaled
    chol = linalg.cholesky(0.5 * (h + h.T))
    x = x.copy()
    x.setflags(write=False)
    s.setflags(write=False)
    return BarrierFactor(point=x, slacks=s, chol=chol, log_det_H=chol.log_det)


def barrier_value(polytope: Polytope, point) -> float:
    """F(x) = -sum_i log s_i."""
    s = slacks(polytope, point)
    if np.min(s) <= 0.0:
        raise BoundaryPoint("barrier undefined outside the interior")
    return float(-np.sum(np.log(s)))


def barrier_gradient(polytope: Polytope, point) -> np.ndarray:
    """grad F(x) = -sum_i a_i / s_i."""
    s = slacks(polytope, point)
    if np.min(s) <= 0.0:
        raise BoundaryPoint("barrier gradient undefined outside the interior")
    return -(polytope.A / s[:, None]).sum(axis=0)


def local_norm(factor: BarrierFactor, vector) -> float:
    """||v||_x = sqrt(v^T H(x) v), computed as ||L^T v||."""
    v = np.asarray(vector, dtype=float)
    if v.shape != (factor.n,):
        raise DimensionMismatch(f"vector has shape {v.shape}, expected ({factor.n},)")
    return float(np.linalg.norm(factor.chol.lower.T @ v))


def leverage_scores(factor: BarrierFactor, polytope: Polytope) -> np.ndarray:
    """sigma_i = atilde_i^T H^{-1} atilde_i with atilde_i = a_i / s_i.

    Each score lies in [0, 1] and the scores sum to n (trace identity).
    """
    scaled = polytope.A / factor.slacks[:, None]
    # L W = Atilde^T for all rows at once; sigma_i = ||W_:,i||^2
    w = linalg.tri_solve(factor.chol, scaled.T)
    return np.einsum("ij,ij->j", w, w)


def grad_half_log_det(factor: BarrierFactor, polytope: Polytope) -> np.ndarray:
    """Gradient of V(x) = (1/2) log det H(x): -sum_i sigma_i * atilde_i."""
    sigma = leverage_scores(factor, polytope)
    scaled = polytope.A / factor.slacks[:, None]
    return -(sigma[:, None] * scaled).sum(axis=0)


def log_gaussian_density(factor: BarrierFactor, z, r: float) -> float:
    """log g_x(z) for the proposal N(x, (r^2/n) H(x)^{-1}).

    Equals (1/2) log det H(x) + (n/2) log(n / (2 pi r^2))
    - (n / (2 r^2)) ||z - x||_x^2; defined for any z.
    """
    if r <= 0.0:
        raise ValueError("proposal radius must be positive")
    zc = np.asarray(z, dtype=float)
    n = factor.n
    norm_sq = local_norm(factor, zc - factor.point) ** 2
    return (0.5 * factor.log_det_H
            + 0.5 * n * math.log(n / (2.0 * math.pi * r * r))
            - 0.5 * n / (r * r) * norm_sq)


def sample_proposal(factor: BarrierFactor, r: float, rng: np.random.Generator) -> np.ndarray:
    """Draw z = x + (r/sqrt(n)) L^{-T} g with g ~ N(0, I).

    L^{-T} acts as a square root of H^{-1} (only the covariance
    (r^2/n) H^{-1} matters for the proposal law), so the factor used for
    densities is reused here.
    """
    if r <= 0.0:
        raise ValueError("proposal radius must be positive")
    g = rng.standard_normal(factor.n)
    step = linalg.tri_solve(factor.chol, g, transposed=True)
    return factor.point + (r / math.sqrt(factor.n)) * step


def newton_decrement(polytope: Polytope, factor: BarrierFactor) -> float:
    """||grad F||_{H^{-1}} at the factored point."""
    grad = barrier_gradient(polytope, factor.point)
    return math.sqrt(max(linalg.quad_form_inv(factor.chol, grad), 0.0))


def analytic_center(polytope: Polytope, x0, opts: CenterOptions = CenterOptions()) -> InteriorPoint:
    """Minimize the barrier by damped Newton with backtracking.

    Backtracking first halves the step until the trial point is interior,
    then continues halving until the Armijo condition (slope 0.25) holds.
    Returns the first iterate whose Newton decrement is <= opts.tolerance.
    """
    x = _as_coords(x0, polytope.n)
    if np.min(slacks(polytope, x)) <= 0.0:
        raise BoundaryPoint("analytic center needs a strictly interior start")
    value = barrier_value(polytope, x)
    decrement = math.inf
    for _ in range(opts.max_iterations):
        factor = factor_at(polytope, x)
        grad = barrier_gradient(polytope, x)
        direction = -linalg.spd_solve(factor.chol, grad)
        decrement_sq = float(-grad @ direction)
        decrement = math.sqrt(max(decrement_sq, 0.0))
        if decrement <= opts.tolerance:
            return InteriorPoint(coords=x)
        t = 1.0
        slope = float(grad @ direction)
        while True:
            trial = x + t * direction
            if np.min(slacks(polytope, trial)) > 0.0:
                trial_value = barrier_value(polytope, trial)
                if trial_value <= value + _ARMIJO_SLOPE * t * slope:
                    break
            t *= opts.damping
            if t < 1e-16:
                raise NoConvergence(opts.max_iterations, decrement)
        x = trial
        value = trial_value
    factor = factor_at(polytope, x)
    decrement = newton_decrement(polytope, factor)
    if decrement <= opts.tolerance:
        return InteriorPoint(coords=x)
    raise NoConvergence(opts.max_iterations, decrement)
