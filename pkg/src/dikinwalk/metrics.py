"""Cross-ratio and Hilbert metric on a polytope.

For interior x, y with chord endpoints p, x, y, q the cross-ratio is
sigma(x, y) = (|xy| |pq|) / (|px| |qy|); log(1 + sigma) is the Hilbert
metric. sigma(x, x) is defined as 0 by continuity. Cross-ratios are
projective invariants, so sigma survives any invertible affine map applied
consistently to the polytope and the points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import barrier
from .polytope import Polytope, _as_coords, chord_endpoints


@dataclass(frozen=True)
class CrossRatio:
    sigma: float
    hilbert: float

    def __post_init__(self):
        if self.sigma < 0.0:
            raise ValueError("cross-ratio must be nonnegative")


def sigma(polytope: Polytope, x, y) -> CrossRatio:
    """Cross-ratio of interior points x, y; all segment lengths Euclidean."""
    xc = _as_coords(x, polytope.n)
    yc = _as_coords(y, polytope.n)
    if np.array_equal(xc, yc):
        return CrossRatio(sigma=0.0, hilbert=0.0)
    p, q = chord_endpoints(polytope, xc, yc)
    value = (np.linalg.norm(xc - yc) * np.linalg.norm(p - q)
             / (np.linalg.norm(p - xc) * np.linalg.norm(q - yc)))
    return CrossRatio(sigma=float(value), hilbert=math.log1p(float(value)))


def check_sigma_local(polytope: Polytope, x, y):
    """Compare sigma(x, y) against ||x-y||_x / sqrt(m).

    Returns (sigma, local, ok) where ok allows a 1e-12 slack; the cross-
    ratio dominates the scaled local norm on every chord.
    """
    xc = _as_coords(x, polytope.n)
    yc = _as_coords(y, polytope.n)
    ratio = sigma(polytope, xc, yc).sigma
    factor = barrier.factor_at(polytope, xc)
    local = barrier.local_norm(factor, yc - xc)
    ok = ratio >= local / math.sqrt(polytope.m) - 1e-12
    return ratio, local, ok
