"""The Gaussian Dikin walk: Metropolis step, lazy chain runner, step-count formulas.

Each step first flips the laziness coin, then proposes
z ~ N(x, (r^2/n) H(x)^{-1}); proposals that leave the polytope are
rejected outright, interior ones pass a Metropolis filter with acceptance
probability min{1, g_z(x)/g_x(z)}, making the uniform distribution on the
polytope stationary.

The two rejection causes are counted separately: an out-of-body proposal
means the radius outruns the ellipsoid, a Metropolis rejection means the
barrier curvature changed against the move.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import barrier
from .barrier import BarrierFactor
from .errors import OutOfRange
from .polytope import Polytope, InteriorPoint, _as_coords


@dataclass(frozen=True)
class WalkConfig:
    """Proposal radius, laziness, seed and sampling schedule."""

    radius: float
    laziness: float = 0.5
    seed: int = 0
    burn_in: int = 0
    thin: int = 1

    def __post_init__(self):
        if self.radius <= 0.0:
            raise ValueError("radius must be positive")
        if not 0.0 <= self.laziness <= 1.0:
            raise ValueError("laziness must lie in [0, 1]")
        if self.burn_in < 0 or self.thin < 1:
            raise ValueError("burn_in must be >= 0 and thin >= 1")


@dataclass
class ChainStats:
    """Counters satisfying steps = lazy_stays + proposals and
    proposals = accepted + rejected_outside + rejected_metropolis."""

    steps: int = 0
    lazy_stays: int = 0
    proposals: int = 0
    rejected_outside: int = 0
    rejected_metropolis: int = 0
    accepted: int = 0

    def as_dict(self) -> dict:
        return {
            "steps": self.steps,
            "lazy_stays": self.lazy_stays,
            "proposals": self.proposals,
            "rejected_outside": self.rejected_outside,
            "rejected_metropolis": self.rejected_metropolis,
            "accepted": self.accepted,
        }


class StepOutcome(enum.Enum):
    LAZY_STAY = "lazy_stay"
    REJECTED_OUTSIDE = "rejected_outside"
    REJECTED_METROPOLIS = "rejected_metropolis"
    ACCEPTED = "accepted"


def default_radius(epsilon: float) -> float:
    """The proved-regime radius (epsilon/400) * log(200/epsilon)^{-3/2}.

    Microscopic in practice (about 8.5e-5 at epsilon = 1/2); the practical
    sampler default is far larger. Natural log.
    """
    if not 0.0 < epsilon <= 0.5:
        raise OutOfRange(f"epsilon must lie in (0, 1/2], got {epsilon}")
    return (epsilon / 400.0) * math.log(200.0 / epsilon) ** -1.5


def mixing_steps(m: int, n: int, r: float) -> int:
    """ceil(m*n / r^2): the step-count scaling with the unknown constant set to 1.

    This is the shape of the mixing bound, not a certified step count; the
    hidden warm-start and conductance constants are unspecified.
    """
    if m < 1 or n < 1 or r <= 0.0:
        raise OutOfRange(f"need m, n >= 1 and r > 0, got m={m}, n={n}, r={r}")
    return int(math.ceil(m * n / (r * r)))


def _ratio_from_factors(factor_x: BarrierFactor, factor_z: BarrierFactor,
                        r: float) -> float:
    delta = factor_z.point - factor_x.point
    n = factor_x.n
    norm_x_sq = barrier.local_norm(factor_x, delta) ** 2
    norm_z_sq = barrier.local_norm(factor_z, delta) ** 2
    return (-0.5 * n / (r * r) * (norm_z_sq - norm_x_sq)
            + 0.5 * (factor_z.log_det_H - factor_x.log_det_H))


def log_accept_ratio(polytope: Polytope, factor_x: BarrierFactor, z, r: float) -> float:
    """log(g_z(x) / g_x(z)) for a strictly interior proposal z.

    Equals -(n / 2r^2) * (||z-x||_z^2 - ||z-x||_x^2)
    + (1/2) * (log det H(z) - log det H(x)).
    """
    zc = _as_coords(z, polytope.n)
    factor_z = barrier.factor_at(polytope, zc)  # raises BoundaryPoint if z is not interior
    return _ratio_from_factors(factor_x, factor_z, r)


def step(polytope: Polytope, state, cfg: WalkConfig, rng: np.random.Generator):
    """One lazy Metropolis step from state = (InteriorPoint, BarrierFactor).

    Returns (point, factor, StepOutcome). The acceptance test runs in
    log-space: accept iff log(u) < min(0, log_accept_ratio).
    """
    point, factor = state
    if cfg.laziness > 0.0 and rng.uniform() < cfg.laziness:
        return point, factor, StepOutcome.LAZY_STAY
    z = barrier.sample_proposal(factor, cfg.radius, rng)
    s = polytope.A @ z - polytope.b
    if s.min() <= 0.0:
        return point, factor, StepOutcome.REJECTED_OUTSIDE
    factor_z = barrier.factor_at(polytope, z, slack_values=s)
    ratio = _ratio_from_factors(factor, factor_z, cfg.radius)
    u = rng.uniform()
    log_u = math.log(u) if u > 0.0 else -math.inf
    if log_u < min(0.0, ratio):
        return InteriorPoint(coords=z), factor_z, StepOutcome.ACCEPTED
    return point, factor, StepOutcome.REJECTED_METROPOLIS


_OUTCOME_COUNTER = {
    StepOutcome.REJECTED_OUTSIDE: "rejected_outside",
    StepOutcome.REJECTED_METROPOLIS: "rejected_metropolis",
    StepOutcome.ACCEPTED: "accepted",
}


def run_chain(polytope: Polytope, x0, cfg: WalkConfig, total_steps: int):
    """Run the lazy walk for total_steps steps.

    Emits every thin-th visited point after burn_in as rows of an array;
    deterministic given cfg.seed. Returns (samples, ChainStats).
    """
    if total_steps < cfg.burn_in:
        raise ValueError("total_steps must be at least burn_in")
    x = _as_coords(x0, polytope.n)
    point = polytope.interior_point(x)
    factor = barrier.factor_at(polytope, x)
    rng = np.random.default_rng(cfg.seed)
    stats = ChainStats()
    kept = []
    for k in range(1, total_steps + 1):
        point, factor, outcome = step(polytope, (point, factor), cfg, rng)
        stats.steps += 1
        if outcome is StepOutcome.LAZY_STAY:
            stats.lazy_stays += 1
        else:
            stats.proposals += 1
            name = _OUTCOME_COUNTER[outcome]
            setattr(stats, name, getattr(stats, name) + 1)
        if k > cfg.burn_in and (k - cfg.burn_in) % cfg.thin == 0:
            kept.append(point.coords)
    samples = np.array(kept, dtype=float).reshape(len(kept), polytope.n)
    return samples, stats
