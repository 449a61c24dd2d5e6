import math

import numpy as np
import pytest
from scipy.integrate import quad

from dikinwalk import barrier, polytope, verify
from dikinwalk.errors import (
    NotIsotropic,
    NotPositiveDefinite,
    OutOfRange,
    PreconditionViolated,
)
from dikinwalk.verify import GaussianPair

INTERVAL = polytope.parse("2 1\n1 0\n-1 -1")
TWO_E = 2.0 * math.e


def _pair_1d(mu1, var1, mu2, var2):
    return GaussianPair(mu1=np.array([mu1]), mu2=np.array([mu2]),
                        sigma1=np.array([[var1]]), sigma2=np.array([[var2]]))


def test_kl_identical_is_zero():
    pair = _pair_1d(0.3, 1.7, 0.3, 1.7)
    assert verify.kl_gaussians(pair) == pytest.approx(0.0, abs=1e-14)


def test_kl_hand_values():
    # shifted means, unit variances
    assert verify.kl_gaussians(_pair_1d(0.0, 1.0, 1.0, 1.0)) == pytest.approx(0.5, rel=1e-12)
    # N(0,2) against N(0,1)
    expected = 0.5 * (2.0 - 1.0 + math.log(0.5))
    assert verify.kl_gaussians(_pair_1d(0.0, 1.0, 0.0, 2.0)) == pytest.approx(
        expected, rel=1e-12)
    assert expected == pytest.approx(0.153426, abs=1e-6)


def test_kl_nonnegative_and_faithful():
    rng = np.random.default_rng(51)
    for _ in range(1000):
        n = int(rng.integers(1, 4))
        g1 = rng.standard_normal((n, n))
        g2 = rng.standard_normal((n, n))
        pair = GaussianPair(
            mu1=rng.standard_normal(n), mu2=rng.standard_normal(n),
            sigma1=g1 @ g1.T + n * np.eye(n), sigma2=g2 @ g2.T + n * np.eye(n))
        assert verify.kl_gaussians(pair) >= 0.0
    same = GaussianPair(mu1=np.ones(2), mu2=np.ones(2),
                        sigma1=2.0 * np.eye(2), sigma2=2.0 * np.eye(2))
    assert abs(verify.kl_gaussians(same)) <= 1e-10


def test_kl_requires_positive_definite():
    pair = GaussianPair(mu1=np.zeros(2), mu2=np.zeros(2),
                        sigma1=np.array([[1.0, 2.0], [2.0, 1.0]]),
                        sigma2=np.eye(2))
    with pytest.raises(NotPositiveDefinite):
        verify.kl_gaussians(pair)


def test_tv_identical_points():
    report = verify.estimate_tv_proposals(polytope.cube(2), [0.5, 0.5],
                                          [0.5, 0.5], 0.2, 2000, seed=1)
    assert report.empirical == 0.0
    assert report.bound == 0.0
    assert report.passed


def test_tv_interval_desk_check_with_quadrature_oracle():
    r, c = 0.2, 0.1
    x = np.array([0.5])
    y = x + c / math.sqrt(8.0)  # ||x-y||_x = c at n=1
    report = verify.estimate_tv_proposals(INTERVAL, x, y, r, 100_000, seed=2)
    assert report.extra["c"] == pytest.approx(c, rel=1e-12)
    assert report.empirical <= 0.3
    assert report.passed

    fx = barrier.factor_at(INTERVAL, x)
    fy = barrier.factor_at(INTERVAL, y)

    def positive_part(z):
        gx = math.exp(barrier.log_gaussian_density(fx, [z], r))
        gy = math.exp(barrier.log_gaussian_density(fy, [z], r))
        return max(0.0, gx - gy)

    oracle, _ = quad(positive_part, -np.inf, np.inf, limit=200)
    assert abs(report.empirical - oracle) <= 3.0 * report.extra["std_error"]


def test_tv_pinsker_chain():
    r, c = 0.2, 0.1
    x = np.array([0.5])
    y = x + c / math.sqrt(8.0)
    report = verify.estimate_tv_proposals(INTERVAL, x, y, r, 50_000, seed=3)
    slack = 3.0 * report.extra["std_error"]
    assert report.empirical <= report.extra["pinsker"] + slack
    assert (report.empirical - slack) ** 2 <= 2.0 * report.extra["kl"] + 1e-12


def test_tv_precondition():
    with pytest.raises(PreconditionViolated):
        verify.estimate_tv_proposals(INTERVAL, [0.5], [0.9], 0.2, 100, seed=1)


def test_rejection_vanishes_at_tiny_radius():
    report = verify.estimate_rejection(polytope.cube(2), [0.5, 0.5], 1e-8,
                                       0.5, 10_000, seed=4)
    assert report.empirical <= 1e-3
    assert report.passed


def test_rejection_lemma_regime():
    epsilon = 0.5
    r = (epsilon / 100.0) * math.log(50.0 / epsilon) ** -1.5
    assert r == pytest.approx(5.06e-4, rel=1e-2)
    report = verify.estimate_rejection(polytope.cube(2), [0.5, 0.5], r,
                                       epsilon, 10_000, seed=5)
    assert report.passed
    assert report.extra["in_lemma_regime"]


def test_rejection_large_radius_diagnostic():
    report = verify.estimate_rejection(polytope.cube(2), [0.5, 0.5], 2.0,
                                       0.5, 5_000, seed=6)
    assert report.empirical > 0.0
    assert report.extra["outside"] > 0


def test_sandwich_identical_points():
    report = verify.check_hessian_sandwich(polytope.cube(2), [0.5, 0.5], [0.5, 0.5])
    assert report.extra["lambda_min"] == pytest.approx(1.0, abs=1e-10)
    assert report.extra["lambda_max"] == pytest.approx(1.0, abs=1e-10)
    assert report.passed


def test_sandwich_interval_pair():
    report = verify.check_hessian_sandwich(INTERVAL, [0.5], [0.52])
    assert report.passed
    # scalar oracle: the single eigenvalue is H(x)/H(y)
    hx = barrier.hessian_at(INTERVAL, [0.5])[0, 0]
    hy = barrier.hessian_at(INTERVAL, [0.52])[0, 0]
    assert report.extra["lambda_min"] == pytest.approx(hx / hy, rel=1e-10)


def test_sandwich_random_sweep():
    rng = np.random.default_rng(52)
    body = polytope.random_polytope(12, 3, seed=19)
    for _ in range(200):
        x = polytope.random_interior(body, np.zeros(3), rng)
        factor = barrier.factor_at(body, x)
        c = rng.uniform(0.0, 1.0 / 3.0)
        direction = rng.standard_normal(3)
        local = barrier.local_norm(factor, direction)
        y = x + (c / math.sqrt(3)) * direction / local
        report = verify.check_hessian_sandwich(body, x, y)
        assert report.passed


def test_logdet_change_at_spec_radius():
    report = verify.logdet_change_check(polytope.cube(2), [0.5, 0.5], 0.4,
                                        0.5, 10_000, seed=8)
    assert report.passed
    assert report.bound == 0.5


def test_logdet_change_tiny_radius_certain():
    report = verify.logdet_change_check(polytope.cube(2), [0.5, 0.5], 1e-8,
                                        0.5, 10_000, seed=9)
    assert report.empirical == 1.0


def test_logdet_change_rejects_out_of_range():
    with pytest.raises(OutOfRange):
        verify.logdet_change_check(polytope.cube(2), [0.5, 0.5], 0.4, 0.7,
                                   100, seed=1)
    cap = 0.5 / math.sqrt(2.0 * math.log(2.0))
    assert cap == pytest.approx(0.42466, abs=1e-5)
    with pytest.raises(OutOfRange):
        verify.logdet_change_check(polytope.cube(2), [0.5, 0.5], cap * 1.01,
                                   0.5, 100, seed=1)


def test_localnorm_change_at_cap_radius():
    epsilon = 0.5
    cap = (epsilon / 20.0) * math.log(11.0 / epsilon) ** -1.5
    assert cap == pytest.approx(4.64e-3, rel=1e-2)
    report = verify.localnorm_change_check(polytope.cube(2), [0.5, 0.5], cap,
                                           epsilon, 100_000, seed=10)
    assert report.passed
    # zero displacement trivially satisfies the inequality
    assert 0.0 <= report.extra["threshold"]


def test_localnorm_change_rejects_out_of_range():
    with pytest.raises(OutOfRange):
        verify.localnorm_change_check(polytope.cube(2), [0.5, 0.5], 0.1, 0.5,
                                      100, seed=1)
    with pytest.raises(OutOfRange):
        verify.localnorm_change_check(polytope.cube(2), [0.5, 0.5], 1e-4, 0.7,
                                      100, seed=1)


def test_radius_conditions_values():
    lambda1, lambda2, r_max = verify.radius_conditions(0.5)
    assert lambda1 == pytest.approx(TWO_E ** 1.5, rel=1e-12)
    assert lambda1 == pytest.approx(12.677, abs=1e-3)
    assert lambda2 == pytest.approx(TWO_E ** 2, rel=1e-12)
    assert lambda2 == pytest.approx(29.556, abs=1e-3)
    claimed = 0.025 * math.log(22.0) ** -1.5
    assert claimed <= r_max


def test_radius_conditions_sweep_and_range():
    for epsilon in (0.5, 0.3, 0.1, 0.05, 0.01, 0.001):
        lambda1, lambda2, r_max = verify.radius_conditions(epsilon)
        assert (epsilon / 20.0) * math.log(11.0 / epsilon) ** -1.5 <= r_max
        assert lambda1 >= TWO_E ** 1.5
        assert lambda2 >= TWO_E ** 2
    with pytest.raises(OutOfRange):
        verify.radius_conditions(0.7)


def test_isserlis_closed_forms():
    e1 = np.array([1.0, 0.0, 0.0])
    e2 = np.array([0.0, 1.0, 0.0])
    tilted = np.array([0.5, math.sqrt(3.0) / 2.0, 0.0])
    assert verify.isserlis_mixed_third(e1, e1) == pytest.approx(15.0, rel=1e-12)
    assert verify.isserlis_mixed_third(e1, e2) == 0.0
    assert verify.isserlis_mixed_third(e1, tilted) == pytest.approx(5.25, rel=1e-12)


def test_isserlis_monte_carlo_agreement():
    rng = np.random.default_rng(53)
    cases = [
        (np.array([1.0, 0.0, 0.0]), np.array([1.0, 0.0, 0.0])),
        (np.array([1.0, 0.0, 0.0]), np.array([0.0, 1.0, 0.0])),
        (np.array([1.0, 0.0, 0.0]), np.array([0.5, math.sqrt(3.0) / 2.0, 0.0])),
        (np.array([0.3, -0.7, 2.0]), np.array([1.0, 0.4, -0.2])),
    ]
    for b1, b2 in cases:
        exact = verify.isserlis_mixed_third(b1, b2)
        mean, se = verify.isserlis_monte_carlo(b1, b2, 1_000_000, rng)
        assert abs(mean - exact) <= 3.0 * se


def test_poly_moments_orthonormal_tightness():
    first, second = verify.gaussian_poly_moments(np.eye(3), 1_000_000, seed=54)
    assert first.bound == 45.0
    assert abs(first.empirical - 45.0) <= 0.1 * 45.0
    assert first.passed
    assert second.bound == 945.0
    assert abs(second.empirical - 369.0) <= 0.1 * 369.0
    assert second.passed


def test_poly_moments_split_rows():
    # each axis split into two rows of norm 1/sqrt(2): still resolves identity
    rows = np.vstack([np.eye(3), np.eye(3)]) / math.sqrt(2.0)
    first, second = verify.gaussian_poly_moments(rows, 200_000, seed=55)
    assert first.passed and second.passed


def test_poly_moments_requires_isotropy():
    with pytest.raises(NotIsotropic):
        verify.gaussian_poly_moments(2.0 * np.eye(3), 100, seed=1)


def test_concentration_tail_bounds():
    report = verify.concentration_tail(np.eye(3), 3, TWO_E ** 1.5, 200_000, seed=56)
    assert report.bound == pytest.approx(math.exp(-3.0), rel=1e-12)
    assert report.extra["second_moment"] == 45.0
    assert report.passed
    report = verify.concentration_tail(np.eye(3), 4, TWO_E ** 2, 200_000, seed=57)
    assert report.bound == pytest.approx(math.exp(-4.0), rel=1e-12)
    assert report.extra["second_moment"] == 369.0
    assert report.passed


def test_concentration_tail_split_rows_empirical_moment():
    rows = np.vstack([np.eye(2), np.eye(2)]) / math.sqrt(2.0)
    report = verify.concentration_tail(rows, 3, TWO_E ** 1.5, 100_000, seed=58)
    assert report.passed


def test_concentration_tail_out_of_range():
    with pytest.raises(OutOfRange):
        verify.concentration_tail(np.eye(3), 3, 1.0, 100, seed=1)
    with pytest.raises(OutOfRange):
        verify.concentration_tail(np.eye(3), 5, 100.0, 100, seed=1)


def test_reports_reproducible_from_seed():
    a = verify.estimate_rejection(polytope.cube(2), [0.5, 0.5], 0.3, 0.5,
                                  5_000, seed=77)
    b = verify.estimate_rejection(polytope.cube(2), [0.5, 0.5], 0.3, 0.5,
                                  5_000, seed=77)
    assert a == b
    a = verify.estimate_tv_proposals(INTERVAL, [0.5], [0.52], 0.2, 5_000, seed=78)
    b = verify.estimate_tv_proposals(INTERVAL, [0.5], [0.52], 0.2, 5_000, seed=78)
    assert a == b


def test_batched_ratio_matches_step_op():
    # the vectorized rejection estimator must agree with the walk-level ratio
    from dikinwalk import walk

    body = polytope.random_polytope(10, 2, seed=17)
    x = np.zeros(2)
    factor = barrier.factor_at(body, x)
    r = 0.7
    rng = np.random.default_rng(59)
    z = verify._batch_proposals(factor, r, rng, 64)
    norm_x_sq, norm_z_sq, slack_z = verify._batch_norm_sq(body, factor, z)
    log_det_z = verify._batch_log_det(body, slack_z)
    batched = (-0.5 * body.n / (r * r) * (norm_z_sq - norm_x_sq)
               + 0.5 * (log_det_z - factor.log_det_H))
    for k in range(z.shape[0]):
        if slack_z[k].min() > 0.0:
            direct = walk.log_accept_ratio(body, factor, z[k], r)
            assert batched[k] == pytest.approx(direct, rel=1e-9, abs=1e-9)


def test_run_checks_filter_and_unknown():
    reports = verify.run_checks(names=["radius_conditions"], seed=1)
    assert len(reports) == 1
    assert reports[0].check_name == "radius_conditions"
    with pytest.raises(KeyError):
        verify.run_checks(names=["nonsense"], seed=1)


def test_run_checks_deterministic_subset():
    first = verify.run_checks(names=["rejection", "logdet_change"], seed=9,
                              num_samples=2_000)
    second = verify.run_checks(names=["rejection", "logdet_change"], seed=9,
                               num_samples=2_000)
    assert first == second
    assert all(r.passed for r in first)
