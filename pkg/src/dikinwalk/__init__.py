"""Uniform sampling from H-polytopes with the Gaussian Dikin walk.

The walk proposes from a Gaussian shaped by the log-barrier Hessian at the
current point and applies a Metropolis filter; the verify module re-checks
the inequalities behind its mixing analysis empirically.
"""

from .errors import (
    BoundaryPoint,
    DikinWalkError,
    DimensionError,
    DimensionMismatch,
    IdenticalPoints,
    InvalidSpec,
    NoConvergence,
    NotIsotropic,
    NotPositiveDefinite,
    OutOfRange,
    ParseError,
    PreconditionViolated,
    UnboundedChord,
    ZeroRow,
)
from .linalg import CholeskyFactor, cholesky, quad_form_inv, tri_solve
from .polytope import (
    InteriorPoint,
    Polytope,
    chord_endpoints,
    contains_interior,
    cube,
    from_spec,
    parse,
    random_polytope,
    simplex,
    slacks,
    to_text,
)
from .barrier import (
    BarrierFactor,
    CenterOptions,
    analytic_center,
    barrier_gradient,
    barrier_value,
    factor_at,
    grad_half_log_det,
    leverage_scores,
    local_norm,
    log_gaussian_density,
    sample_proposal,
)
from .walk import (
    ChainStats,
    StepOutcome,
    WalkConfig,
    default_radius,
    log_accept_ratio,
    mixing_steps,
    run_chain,
    step,
)
from .metrics import CrossRatio, check_sigma_local, sigma
from .verify import (
    GaussianPair,
    VerifyReport,
    check_hessian_sandwich,
    concentration_tail,
    estimate_rejection,
    estimate_tv_proposals,
    gaussian_poly_moments,
    isserlis_mixed_third,
    kl_gaussians,
    localnorm_change_check,
    logdet_change_check,
    radius_conditions,
    run_checks,
)

__version__ = "0.1.0"
