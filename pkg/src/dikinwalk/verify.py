"""Monte-Carlo and closed-form verification of the walk's proof ingredients.

Every inequality the analysis leans on is re-checked here at desk scale:
closeness of nearby proposal Gaussians (total variation and its
Kullback-Leibler/Pinsker route), the Metropolis rejection mass, the
Hessian sandwich between nearby points, the log-determinant and
local-norm change probabilities under a proposal, Gaussian polynomial
moment bounds, mixed third-moment closed forms, and polynomial tail
concentration.

Statistical checks pass at "bound + 3 standard errors": the statements
being checked are inequalities, and a uniform z-score rule makes
pass/fail deterministic given the seed. Each check owns an RNG stream
derived from (seed, check name), so reports reproduce bit-for-bit and do
not depend on scheduling.
"""

from __future__ import annotations

import math
import zlib
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from . import barrier
from .barrier import BarrierFactor
from .errors import NotIsotropic, OutOfRange, PreconditionViolated
from . import linalg
from .polytope import Polytope, cube, random_polytope, random_interior

_TWO_E = 2.0 * math.e


@dataclass
class VerifyReport:
    """One line of the verification suite: what was measured vs what was claimed."""

    check_name: str
    empirical: float
    bound: float
    samples: int
    passed: bool
    seed: int
    extra: dict = field(default_factory=dict)


@dataclass(frozen=True)
class GaussianPair:
    """Two multivariate Gaussians (mu1, sigma1) and (mu2, sigma2)."""

    mu1: np.ndarray
    mu2: np.ndarray
    sigma1: np.ndarray
    sigma2: np.ndarray


def kl_gaussians(pair: GaussianPair) -> float:
    """KL divergence of the second Gaussian from the first, D(G2 || G1).

    (1/2) (tr(S1^{-1} S2) - n + log det S1 / det S2
    + (mu1-mu2)^T S1^{-1} (mu1-mu2)).
    """
    mu1 = np.asarray(pair.mu1, dtype=float)
    mu2 = np.asarray(pair.mu2, dtype=float)
    n = mu1.shape[0]
    f1 = linalg.cholesky(pair.sigma1)
    f2 = linalg.cholesky(pair.sigma2)
    # tr(S1^{-1} S2) = ||L1^{-1} L2||_F^2
    half = linalg.tri_solve(f1, f2.lower)
    trace = float(np.sum(half * half))
    quad = linalg.quad_form_inv(f1, mu1 - mu2)
    return 0.5 * (trace - n + f1.log_det - f2.log_det + quad)


# ---------------------------------------------------------------------------
# batched proposal machinery (same formulas as the barrier ops, vectorized
# across draws; the tests cross-check both routes)

def _batch_proposals(factor: BarrierFactor, r: float, rng: np.random.Generator,
                     count: int) -> np.ndarray:
    g = rng.standard_normal((count, factor.n))
    steps = scipy.linalg.solve_triangular(factor.chol.lower, g.T, lower=True, trans=1)
    return factor.point[None, :] + (r / math.sqrt(factor.n)) * steps.T


def _batch_norm_sq(polytope: Polytope, factor: BarrierFactor, z: np.ndarray):
    """||z-x||_x^2 and ||z-x||_z^2 for a batch of points z (rows)."""
    w = (z - factor.point[None, :]) @ polytope.A.T
    slack_z = z @ polytope.A.T - polytope.b[None, :]
    norm_x_sq = np.einsum("km,km->k", w / factor.slacks[None, :],
                          w / factor.slacks[None, :])
    ratio = w / slack_z
    norm_z_sq = np.einsum("km,km->k", ratio, ratio)
    return norm_x_sq, norm_z_sq, slack_z


def _batch_log_det(polytope: Polytope, slack_z: np.ndarray) -> np.ndarray:
    """log det H(z) for each slack row; defined wherever no slack is zero."""
    scaled = polytope.A[None, :, :] / slack_z[:, :, None]
    hessians = np.einsum("kmi,kmj->kij", scaled, scaled)
    _, log_dets = np.linalg.slogdet(hessians)
    return log_dets


def _mc_standard_error(values: np.ndarray) -> float:
    if values.size < 2:
        return 0.0
    return float(np.std(values, ddof=1) / math.sqrt(values.size))


def _frequency_standard_error(p_hat: float, count: int) -> float:
    return math.sqrt(max(p_hat * (1.0 - p_hat), 0.0) / count)


def estimate_tv_proposals(polytope: Polytope, x, y, r: float,
                          num_samples: int, seed: int) -> VerifyReport:
    """Monte-Carlo one-sided TV estimate between the proposals at x and y.

    Uses the identity int (g_x - g_y)_+ = E_{z~g_x} max(0, 1 - g_y(z)/g_x(z)),
    which needs only log-densities. The claimed bound is 3c where
    c = sqrt(n) ||x-y||_x, valid for c <= min(r, 1/3); the Pinsker
    intermediate sqrt(2 KL) is reported alongside.
    """
    factor_x = barrier.factor_at(polytope, x)
    factor_y = barrier.factor_at(polytope, y)
    n = polytope.n
    c = math.sqrt(n) * barrier.local_norm(factor_x, factor_y.point - factor_x.point)
    if c > min(r, 1.0 / 3.0) + 1e-12:
        raise PreconditionViolated(
            f"c = {c:.4g} exceeds min(r, 1/3) = {min(r, 1.0 / 3.0):.4g}"
        )
    rng = np.random.default_rng(seed)
    z = _batch_proposals(factor_x, r, rng, num_samples)
    scale = 0.5 * n / (r * r)
    norm_x_sq, _, _ = _batch_norm_sq(polytope, factor_x, z)
    norm_y_sq, _, _ = _batch_norm_sq(polytope, factor_y, z)
    log_ratio = (0.5 * (factor_y.log_det_H - factor_x.log_det_H)
                 - scale * (norm_y_sq - norm_x_sq))
    contrib = np.maximum(0.0, 1.0 - np.exp(log_ratio))
    empirical = float(np.mean(contrib))
    se = _mc_standard_error(contrib)
    kl = kl_gaussians(_proposal_pair(factor_x, factor_y, r))
    return VerifyReport(
        check_name="tv_gaussians",
        empirical=empirical,
        bound=3.0 * c,
        samples=num_samples,
        passed=empirical <= 3.0 * c + 3.0 * se,
        seed=seed,
        extra={"c": c, "kl": kl, "pinsker": math.sqrt(2.0 * kl), "std_error": se},
    )


def _proposal_pair(factor_x: BarrierFactor, factor_y: BarrierFactor,
                   r: float) -> GaussianPair:
    n = factor_x.n
    cov = []
    for f in (factor_x, factor_y):
        inv_lower = scipy.linalg.solve_triangular(f.chol.lower, np.eye(n), lower=True)
        cov.append((r * r / n) * (inv_lower.T @ inv_lower))
    return GaussianPair(mu1=factor_x.point, mu2=factor_y.point,
                        sigma1=cov[0], sigma2=cov[1])


def estimate_rejection(polytope: Polytope, x, r: float, epsilon: float,
                       num_samples: int, seed: int) -> VerifyReport:
    """Rejection mass 1 - E_{z~g_x} min{1, g_z(x)/g_x(z)} of the Metropolis filter.

    Out-of-body proposals contribute acceptance 0. The claimed bound is
    epsilon when r is in the small-radius regime; the estimate runs at any
    r for diagnostics.
    """
    factor_x = barrier.factor_at(polytope, x)
    rng = np.random.default_rng(seed)
    z = _batch_proposals(factor_x, r, rng, num_samples)
    norm_x_sq, norm_z_sq, slack_z = _batch_norm_sq(polytope, factor_x, z)
    inside = np.min(slack_z, axis=1) > 0.0
    accept = np.zeros(num_samples)
    if np.any(inside):
        log_det_z = _batch_log_det(polytope, slack_z[inside])
        log_ratio = (-0.5 * polytope.n / (r * r)
                     * (norm_z_sq[inside] - norm_x_sq[inside])
                     + 0.5 * (log_det_z - factor_x.log_det_H))
        accept[inside] = np.minimum(1.0, np.exp(np.minimum(log_ratio, 0.0)))
    empirical = float(1.0 - np.mean(accept))
    se = _mc_standard_error(accept)
    regime_cap = (epsilon / 100.0) * math.log(50.0 / epsilon) ** -1.5
    return VerifyReport(
        check_name="rejection",
        empirical=empirical,
        bound=epsilon,
        samples=num_samples,
        passed=empirical <= epsilon + 3.0 * se,
        seed=seed,
        extra={
            "outside": int(num_samples - np.count_nonzero(inside)),
            "std_error": se,
            "in_lemma_regime": bool(r <= regime_cap * (1.0 + 1e-12)),
        },
    )


def check_hessian_sandwich(polytope: Polytope, x, y) -> VerifyReport:
    """Extreme generalized eigenvalues of (H(x), H(y)) against the slack bounds.

    With c = sqrt(n) ||x-y||_x all eigenvalues must lie in
    [(1 - c/sqrt(n))^2, (1 + c/sqrt(n))^2]; checked by whitening H(x)
    with the factor of H(y).
    """
    factor_x = barrier.factor_at(polytope, x)
    factor_y = barrier.factor_at(polytope, y)
    n = polytope.n
    c = math.sqrt(n) * barrier.local_norm(factor_x, factor_y.point - factor_x.point)
    lo = (1.0 - c / math.sqrt(n)) ** 2
    hi = (1.0 + c / math.sqrt(n)) ** 2
    h_x = barrier.hessian_at(polytope, factor_x.point)
    half = scipy.linalg.solve_triangular(factor_y.chol.lower, h_x, lower=True)
    whitened = scipy.linalg.solve_triangular(factor_y.chol.lower, half.T, lower=True)
    eigenvalues = np.linalg.eigvalsh(0.5 * (whitened + whitened.T))
    violation = max(lo - float(eigenvalues[0]), float(eigenvalues[-1]) - hi, 0.0)
    return VerifyReport(
        check_name="hessian_sandwich",
        empirical=violation,
        bound=1e-9,
        samples=n,
        passed=violation <= 1e-9,
        seed=0,
        extra={
            "c": c,
            "lambda_min": float(eigenvalues[0]),
            "lambda_max": float(eigenvalues[-1]),
            "lower": lo,
            "upper": hi,
        },
    )


def logdet_change_check(polytope: Polytope, x, r: float, epsilon: float,
                        num_samples: int, seed: int) -> VerifyReport:
    """Probability that log det H drops by less than 2*epsilon under a proposal.

    Valid for r <= epsilon / sqrt(2 log(1/epsilon)); the claim is
    Pr[log det H(z) - log det H(x) >= -2 epsilon] >= 1 - epsilon.
    """
    _require_epsilon(epsilon)
    cap = epsilon / math.sqrt(2.0 * math.log(1.0 / epsilon))
    if r > cap * (1.0 + 1e-12):
        raise OutOfRange(f"r = {r:.4g} exceeds the radius cap {cap:.4g}")
    factor_x = barrier.factor_at(polytope, x)
    rng = np.random.default_rng(seed)
    z = _batch_proposals(factor_x, r, rng, num_samples)
    slack_z = z @ polytope.A.T - polytope.b[None, :]
    delta = _batch_log_det(polytope, slack_z) - factor_x.log_det_H
    hits = np.count_nonzero(delta >= -2.0 * epsilon)
    empirical = hits / num_samples
    se = _frequency_standard_error(empirical, num_samples)
    return VerifyReport(
        check_name="logdet_change",
        empirical=empirical,
        bound=1.0 - epsilon,
        samples=num_samples,
        passed=empirical >= 1.0 - epsilon - 3.0 * se,
        seed=seed,
        extra={"mean_delta": float(np.mean(delta)), "std_error": se, "radius": r},
    )


def localnorm_change_check(polytope: Polytope, x, r: float, epsilon: float,
                           num_samples: int, seed: int) -> VerifyReport:
    """Probability that the local-norm change stays below 2*epsilon*r^2/n.

    Valid for r <= (epsilon/20) log(11/epsilon)^{-3/2}; the claim is
    Pr[||z-x||_z^2 - ||z-x||_x^2 <= 2 epsilon r^2 / n] >= 1 - epsilon.
    Non-interior proposals are excluded from the numerator and reported
    separately.
    """
    _require_epsilon(epsilon)
    cap = (epsilon / 20.0) * math.log(11.0 / epsilon) ** -1.5
    if r > cap * (1.0 + 1e-12):
        raise OutOfRange(f"r = {r:.4g} exceeds the radius cap {cap:.4g}")
    factor_x = barrier.factor_at(polytope, x)
    rng = np.random.default_rng(seed)
    z = _batch_proposals(factor_x, r, rng, num_samples)
    norm_x_sq, norm_z_sq, slack_z = _batch_norm_sq(polytope, factor_x, z)
    inside = np.min(slack_z, axis=1) > 0.0
    threshold = 2.0 * epsilon * r * r / polytope.n
    hits = np.count_nonzero(inside & (norm_z_sq - norm_x_sq <= threshold))
    empirical = hits / num_samples
    se = _frequency_standard_error(empirical, num_samples)
    return VerifyReport(
        check_name="localnorm_change",
        empirical=empirical,
        bound=1.0 - epsilon,
        samples=num_samples,
        passed=empirical >= 1.0 - epsilon - 3.0 * se,
        seed=seed,
        extra={
            "outside": int(num_samples - np.count_nonzero(inside)),
            "threshold": threshold,
            "std_error": se,
            "radius": r,
        },
    )


def radius_conditions(epsilon: float):
    """The two concentration thresholds and the radius they admit.

    Returns (lambda1, lambda2, r_max) with
    lambda1 = max(2e, (2e/3) log(2/epsilon))^{3/2},
    lambda2 = max(2e, (2e/4) log(2/epsilon))^2,
    r_max = min(1, epsilon/(2 sqrt(15) lambda1),
    sqrt(epsilon)/sqrt(8 lambda2 sqrt(105))), and verifies numerically
    that (epsilon/20) log(11/epsilon)^{-3/2} fits under r_max.
    """
    _require_epsilon(epsilon)
    log_term = math.log(2.0 / epsilon)
    lambda1 = max(_TWO_E, (_TWO_E / 3.0) * log_term) ** 1.5
    lambda2 = max(_TWO_E, (_TWO_E / 4.0) * log_term) ** 2
    r_max = min(
        1.0,
        epsilon / (2.0 * math.sqrt(15.0) * lambda1),
        math.sqrt(epsilon) / math.sqrt(8.0 * lambda2 * math.sqrt(105.0)),
    )
    claimed = (epsilon / 20.0) * math.log(11.0 / epsilon) ** -1.5
    if claimed > r_max:
        raise AssertionError(
            f"radius formula {claimed:.6g} exceeds the admissible cap {r_max:.6g}"
        )
    return lambda1, lambda2, r_max


def isserlis_mixed_third(b1, b2) -> float:
    """E (b1^T g)^3 (b2^T g)^3 = 9 |b1|^2 |b2|^2 (b1^T b2) + 6 (b1^T b2)^3."""
    v1 = np.asarray(b1, dtype=float)
    v2 = np.asarray(b2, dtype=float)
    dot = float(v1 @ v2)
    return 9.0 * float(v1 @ v1) * float(v2 @ v2) * dot + 6.0 * dot ** 3


def isserlis_monte_carlo(b1, b2, num_samples: int, rng: np.random.Generator):
    """Sample mean and standard error of (b1^T g)^3 (b2^T g)^3."""
    v1 = np.asarray(b1, dtype=float)
    v2 = np.asarray(b2, dtype=float)
    g = rng.standard_normal((num_samples, v1.shape[0]))
    product = (g @ v1) ** 3 * (g @ v2) ** 3
    return float(np.mean(product)), _mc_standard_error(product)


def gaussian_poly_moments(rows: np.ndarray, num_samples: int, seed: int):
    """Second moments of P1 = sum (b_i^T g)^3 and P2 = sum (b_i^T g)^4.

    Requires sum b_i b_i^T = I (NotIsotropic otherwise). The bounds are
    15 n and 105 n^2; equality holds for P1 when the rows are orthonormal.
    Returns one VerifyReport per polynomial.
    """
    b = np.asarray(rows, dtype=float)
    n = b.shape[1]
    if np.linalg.norm(b.T @ b - np.eye(n)) > 1e-8:
        raise NotIsotropic("rows must satisfy B^T B = I to 1e-8")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((num_samples, n))
    t = g @ b.T
    reports = []
    for name, power, bound in (("poly_moments_p1", 3, 15.0 * n),
                               ("poly_moments_p2", 4, 105.0 * n * n)):
        poly = (t ** power).sum(axis=1)
        squares = poly ** 2
        empirical = float(np.mean(squares))
        se = _mc_standard_error(squares)
        reports.append(VerifyReport(
            check_name=name,
            empirical=empirical,
            bound=bound,
            samples=num_samples,
            passed=empirical <= bound + 3.0 * se,
            seed=seed,
            extra={"std_error": se},
        ))
    return reports[0], reports[1]


def _orthonormal_rows(b: np.ndarray) -> bool:
    m, n = b.shape
    return m == n and float(np.abs(b @ b.T - np.eye(n)).max()) <= 1e-8


def _second_moment(rows: np.ndarray, degree: int, num_samples: int,
                   rng: np.random.Generator) -> float:
    """E P^2 for P = sum (b_i^T g)^degree: exact when the rows are an
    orthonormal basis, otherwise estimated from an independent batch."""
    n = rows.shape[1]
    if _orthonormal_rows(rows):
        if degree == 3:
            return 15.0 * n
        return 105.0 * n + 9.0 * n * (n - 1)
    g = rng.standard_normal((num_samples, n))
    poly = ((g @ rows.T) ** degree).sum(axis=1)
    return float(np.mean(poly ** 2))


def concentration_tail(rows: np.ndarray, degree: int, t: float,
                       num_samples: int, seed: int) -> VerifyReport:
    """Tail Pr[|P(g)| >= t sqrt(E P^2)] against exp(-(q/2e) t^{2/q}).

    Valid for t >= (2e)^{q/2}; degree q is 3 or 4.
    """
    if degree not in (3, 4):
        raise OutOfRange(f"degree must be 3 or 4, got {degree}")
    threshold = _TWO_E ** (degree / 2.0)
    if t < threshold:
        raise OutOfRange(f"t = {t:.4g} is below the validity threshold {threshold:.4g}")
    b = np.asarray(rows, dtype=float)
    n = b.shape[1]
    if np.linalg.norm(b.T @ b - np.eye(n)) > 1e-8:
        raise NotIsotropic("rows must satisfy B^T B = I to 1e-8")
    rng = np.random.default_rng(seed)
    second_moment = _second_moment(b, degree, num_samples, rng)
    g = rng.standard_normal((num_samples, n))
    poly = ((g @ b.T) ** degree).sum(axis=1)
    cutoff = t * math.sqrt(second_moment)
    empirical = float(np.count_nonzero(np.abs(poly) >= cutoff)) / num_samples
    bound = math.exp(-(degree / _TWO_E) * t ** (2.0 / degree))
    se = _frequency_standard_error(empirical, num_samples)
    return VerifyReport(
        check_name=f"concentration_q{degree}",
        empirical=empirical,
        bound=bound,
        samples=num_samples,
        passed=empirical <= bound + 3.0 * se,
        seed=seed,
        extra={"t": t, "second_moment": second_moment, "std_error": se},
    )


def _require_epsilon(epsilon: float):
    if not 0.0 < epsilon <= 0.5:
        raise OutOfRange(f"epsilon must lie in (0, 1/2], got {epsilon}")


# ---------------------------------------------------------------------------
# the named check suite used by the CLI


def _derived_seed(seed: int, name: str) -> int:
    entropy = [seed & 0xFFFFFFFFFFFFFFFF, zlib.crc32(name.encode("utf-8"))]
    return int(np.random.SeedSequence(entropy).generate_state(1, dtype=np.uint64)[0])


def _suite_points(polytope: Polytope, anchor, count: int,
                  rng: np.random.Generator):
    return [random_interior(polytope, anchor, rng) for _ in range(count)]


def _check_leverage(seed, num_samples, epsilon):
    rng = np.random.default_rng(seed)
    cases = [
        (cube(2), np.full(2, 0.5)),
        (cube(3), np.full(3, 0.5)),
        (random_polytope(12, 3, 5), np.zeros(3)),
        (random_polytope(16, 3, 9), np.zeros(3)),
        (random_polytope(10, 4, 6), np.zeros(4)),
    ]
    worst_sum = 0.0
    worst_range = 0.0
    worst_va = -math.inf
    tested = 0
    for polytope, anchor in cases:
        for point in _suite_points(polytope, anchor, 20, rng):
            factor = barrier.factor_at(polytope, point)
            scores = barrier.leverage_scores(factor, polytope)
            worst_sum = max(worst_sum, abs(float(scores.sum()) - polytope.n))
            worst_range = max(worst_range, float(-scores.min()),
                              float(scores.max()) - 1.0)
            grad_v = barrier.grad_half_log_det(factor, polytope)
            va = linalg.quad_form_inv(factor.chol, grad_v) - polytope.n
            worst_va = max(worst_va, va)
            tested += 1
    passed = (worst_sum <= 1e-8 and worst_range <= 1e-12 and worst_va <= 1e-8)
    return [VerifyReport(
        check_name="leverage",
        empirical=worst_sum,
        bound=1e-8,
        samples=tested,
        passed=passed,
        seed=seed,
        extra={"worst_range_violation": worst_range, "worst_va_excess": worst_va},
    )]


def _check_sigma_local(seed, num_samples, epsilon):
    from . import metrics

    rng = np.random.default_rng(seed)
    polytope = random_polytope(16, 3, 13)
    anchor = np.zeros(3)
    worst = math.inf
    pairs = 1000
    all_ok = True
    for _ in range(pairs):
        x = random_interior(polytope, anchor, rng)
        y = random_interior(polytope, anchor, rng)
        if np.array_equal(x, y):
            continue
        ratio, local, ok = metrics.check_sigma_local(polytope, x, y)
        worst = min(worst, ratio * math.sqrt(polytope.m) - local)
        all_ok = all_ok and ok
    return [VerifyReport(
        check_name="sigma_local",
        empirical=worst,
        bound=0.0,
        samples=pairs,
        passed=all_ok and worst >= -1e-12,
        seed=seed,
    )]


def _nearby_pair(polytope, anchor, rng, c_max=1.0 / 3.0):
    x = random_interior(polytope, anchor, rng)
    factor = barrier.factor_at(polytope, x)
    c = rng.uniform(0.0, c_max)
    direction = linalg.tri_solve(factor.chol, rng.standard_normal(polytope.n),
                                 transposed=True)
    local = barrier.local_norm(factor, direction)
    y = x + (c / math.sqrt(polytope.n)) * direction / local
    return x, y


def _check_hessian_sandwich(seed, num_samples, epsilon):
    rng = np.random.default_rng(seed)
    polytope = random_polytope(12, 3, 11)
    anchor = np.zeros(3)
    worst = 0.0
    pairs = 200
    for _ in range(pairs):
        x, y = _nearby_pair(polytope, anchor, rng)
        report = check_hessian_sandwich(polytope, x, y)
        worst = max(worst, report.empirical)
    return [VerifyReport(
        check_name="hessian_sandwich",
        empirical=worst,
        bound=1e-9,
        samples=pairs,
        passed=worst <= 1e-9,
        seed=seed,
    )]


def _tv_setup():
    polytope = cube(2)
    x = np.full(2, 0.5)
    y = np.array([0.525, 0.5])  # ||x-y||_x = 0.1/sqrt(2) at the cube center
    return polytope, x, y, 0.2


def _check_tv_gaussians(seed, num_samples, epsilon):
    polytope, x, y, r = _tv_setup()
    n = num_samples or 100_000
    return [estimate_tv_proposals(polytope, x, y, r, n, seed)]


def _check_pinsker(seed, num_samples, epsilon):
    polytope, x, y, r = _tv_setup()
    n = num_samples or 100_000
    report = estimate_tv_proposals(polytope, x, y, r, n, seed)
    pinsker = report.extra["pinsker"]
    se = report.extra["std_error"]
    return [VerifyReport(
        check_name="pinsker",
        empirical=report.empirical,
        bound=pinsker,
        samples=report.samples,
        passed=report.empirical <= pinsker + 3.0 * se,
        seed=seed,
        extra={"kl": report.extra["kl"], "std_error": se},
    )]


def _check_rejection(seed, num_samples, epsilon):
    polytope = cube(2)
    x = np.full(2, 0.5)
    r = (epsilon / 100.0) * math.log(50.0 / epsilon) ** -1.5
    n = num_samples or 10_000
    return [estimate_rejection(polytope, x, r, epsilon, n, seed)]


def _proposition_points(seed):
    polytope = cube(2)
    center = np.full(2, 0.5)
    rng = np.random.default_rng(seed)
    return polytope, [center] + _suite_points(polytope, center, 10, rng)


def _check_logdet_change(seed, num_samples, epsilon):
    polytope, points = _proposition_points(seed)
    cap = epsilon / math.sqrt(2.0 * math.log(1.0 / epsilon))
    r = min(0.4, cap)
    n = num_samples or 10_000
    worst = None
    for k, point in enumerate(points):
        report = logdet_change_check(polytope, point, r, epsilon, n,
                                     _derived_seed(seed, f"logdet:{k}"))
        if worst is None or report.empirical < worst.empirical:
            worst = report
        if not report.passed:
            worst = report
            break
    worst.check_name = "logdet_change"
    worst.extra["points_tested"] = len(points)
    return [worst]


def _check_localnorm_change(seed, num_samples, epsilon):
    polytope, points = _proposition_points(seed)
    r = (epsilon / 20.0) * math.log(11.0 / epsilon) ** -1.5
    n = num_samples or 100_000
    worst = None
    for k, point in enumerate(points):
        report = localnorm_change_check(polytope, point, r, epsilon, n,
                                        _derived_seed(seed, f"localnorm:{k}"))
        if worst is None or report.empirical < worst.empirical:
            worst = report
        if not report.passed:
            worst = report
            break
    worst.check_name = "localnorm_change"
    worst.extra["points_tested"] = len(points)
    return [worst]


def _check_radius_conditions(seed, num_samples, epsilon):
    lambda1, lambda2, r_max = radius_conditions(epsilon)
    claimed = (epsilon / 20.0) * math.log(11.0 / epsilon) ** -1.5
    return [VerifyReport(
        check_name="radius_conditions",
        empirical=claimed,
        bound=r_max,
        samples=0,
        passed=claimed <= r_max,
        seed=seed,
        extra={"lambda1": lambda1, "lambda2": lambda2},
    )]


def _check_isserlis(seed, num_samples, epsilon):
    pairs = [
        (np.array([1.0, 0.0, 0.0]), np.array([1.0, 0.0, 0.0])),
        (np.array([1.0, 0.0, 0.0]), np.array([0.0, 1.0, 0.0])),
        (np.array([1.0, 0.0, 0.0]),
         np.array([0.5, math.sqrt(3.0) / 2.0, 0.0])),
    ]
    n = num_samples or 1_000_000
    rng = np.random.default_rng(seed)
    worst_z = 0.0
    for b1, b2 in pairs:
        exact = isserlis_mixed_third(b1, b2)
        mean, se = isserlis_monte_carlo(b1, b2, n, rng)
        worst_z = max(worst_z, abs(mean - exact) / se)
    return [VerifyReport(
        check_name="isserlis",
        empirical=worst_z,
        bound=3.0,
        samples=n,
        passed=worst_z <= 3.0,
        seed=seed,
        extra={"pairs": len(pairs)},
    )]


def _check_poly_moments(seed, num_samples, epsilon):
    n = num_samples or 1_000_000
    first, second = gaussian_poly_moments(np.eye(3), n, seed)
    return [first, second]


def _check_concentration_q3(seed, num_samples, epsilon):
    n = num_samples or 1_000_000
    return [concentration_tail(np.eye(3), 3, _TWO_E ** 1.5, n, seed)]


def _check_concentration_q4(seed, num_samples, epsilon):
    n = num_samples or 1_000_000
    return [concentration_tail(np.eye(3), 4, _TWO_E ** 2, n, seed)]


CHECKS = {
    "leverage": _check_leverage,
    "sigma_local": _check_sigma_local,
    "hessian_sandwich": _check_hessian_sandwich,
    "tv_gaussians": _check_tv_gaussians,
    "pinsker": _check_pinsker,
    "rejection": _check_rejection,
    "logdet_change": _check_logdet_change,
    "localnorm_change": _check_localnorm_change,
    "radius_conditions": _check_radius_conditions,
    "isserlis": _check_isserlis,
    "poly_moments": _check_poly_moments,
    "concentration_q3": _check_concentration_q3,
    "concentration_q4": _check_concentration_q4,
}


def run_checks(names=None, seed: int = 1, num_samples: int | None = None,
               epsilon: float = 0.5):
    """Run the named checks (all by default); returns a list of VerifyReports.

    Each check uses an RNG stream derived from (seed, check name), so any
    subset runs identically to the full suite.
    """
    _require_epsilon(epsilon)
    selected = list(CHECKS) if names is None else list(names)
    unknown = [name for name in selected if name not in CHECKS]
    if unknown:
        raise KeyError(f"unknown checks: {', '.join(unknown)}")
    reports = []
    for name in selected:
        reports.extend(CHECKS[name](_derived_seed(seed, name), num_samples, epsilon))
    return reports
