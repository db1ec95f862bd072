"""Moment estimators, delta-method covariance, intervals, MLE diagnostic."""

import math

import numpy as np
import pytest

from sscdist import (
    DomainError,
    EstimationResult,
    SscParams,
    asymptotic_covariance,
    confidence_intervals,
    estimate,
    estimates_from_moments,
    exact_moment,
    log_pdf,
    mle_diagnostic,
    moment_set,
    quantile_many,
    sample,
)

from conftest import GRID7, grid_params

PI = math.pi


class TestEstimatorMaps:
    @pytest.mark.parametrize("p", grid_params(GRID7))
    def test_exact_identification(self, p):
        conc_hat, skew_hat = estimates_from_moments(
            exact_moment(p, 1), exact_moment(p, 2)
        )
        assert conc_hat == pytest.approx(p.conc, abs=1e-14)
        assert skew_hat == pytest.approx(p.skew, abs=1e-14)

    def test_uniform_grid_data_recovers_flat_law(self):
        for n, tol in ((100, 1e-2), (10_000, 1e-6)):
            grid = (np.arange(n) + 0.5) / n * 2 * PI - PI
            res = estimate(grid)
            assert abs(res.conc_hat) < tol
            assert abs(res.skew_hat) < 1e-12  # symmetric grid: exact zero mean

    def test_seeded_errors_at_published_scale(self):
        # n = 1000 errors land at the same scale as the published single-run
        # values (0.0391 for skew, 0.0314 for conc)
        p = SscParams(-0.9, -0.9)
        res = estimate(sample(p, 1000, seed=20260809).values)
        assert abs(res.skew_hat - p.skew) < 4 * 0.052
        assert abs(res.conc_hat - p.conc) < 4 * 0.0433

    def test_self_consistency_large_sample(self):
        p = SscParams(0.9, 0.4)
        n = 100_000
        res = estimate(sample(p, n, seed=5).values)
        sigma = asymptotic_covariance(p)
        assert abs(res.conc_hat - p.conc) < 3 * math.sqrt(sigma[0, 0] / n)
        assert abs(res.skew_hat - p.skew) < 3 * math.sqrt(sigma[1, 1] / n)

    def test_equivariance_under_negation(self):
        x = sample(SscParams(0.7, -0.2), 400, seed=8).values
        res, res_neg = estimate(x), estimate(-x)
        assert res_neg.skew_hat == pytest.approx(-res.skew_hat, rel=1e-13)
        assert res_neg.conc_hat == pytest.approx(res.conc_hat, rel=1e-13)

    def test_clamping_recorded(self):
        # two extreme points force a second moment far above pi^2/3
        res = estimate(np.array([PI, -PI, PI, -PI, 3.0]))
        assert res.clamped
        assert res.conc_hat < -1.0
        assert res.conc_hat_clamped == -1.0

    @pytest.mark.parametrize("data", [[], [0.1], [0.1, 4.0], [0.0, math.nan]])
    def test_bad_input_rejected(self, data):
        with pytest.raises(DomainError):
            estimate(np.array(data, dtype=float))


class TestAsymptoticCovariance:
    def test_uniform_conc_entry(self):
        sigma = asymptotic_covariance(SscParams(0.0, 0.0))
        assert sigma[0, 0] == pytest.approx(PI**4 / 45, rel=1e-13)

    def test_skew_entry_matches_published_error_scale(self):
        # sqrt(Sigma_ss / 1000) vs the published n=1000 RMSE of 0.0520
        sigma = asymptotic_covariance(SscParams(-0.9, -0.9))
        predicted = math.sqrt(sigma[1, 1] / 1000)
        assert 0.0520 / 1.5 < predicted < 0.0520 * 1.5

    @pytest.mark.parametrize("p", grid_params(GRID7))
    def test_symmetric_psd(self, p):
        sigma = asymptotic_covariance(p)
        assert sigma[0, 1] == sigma[1, 0]
        assert np.linalg.eigvalsh(sigma).min() >= -1e-12

    def test_monte_carlo_agreement(self):
        # the authoritative check: empirical covariance of the scaled errors
        p = SscParams(0.5, -0.3)
        reps, n = 2500, 1500
        u = np.random.default_rng(314).random((reps, n))
        x = quantile_many(p, u.ravel()).reshape(reps, n)
        m1 = x.mean(axis=1)
        m2 = np.mean(x * x, axis=1)
        conc_hat, skew_hat = estimates_from_moments(m1, m2)
        scaled = np.column_stack([conc_hat - p.conc, skew_hat - p.skew])
        emp = np.cov(scaled.T) * n
        sigma = asymptotic_covariance(p)
        scale = np.sqrt(np.outer(np.diag(sigma), np.diag(sigma)))
        assert np.all(np.abs(emp - sigma) / scale < 0.10)


class TestConfidenceIntervals:
    def _result(self, sigma):
        return EstimationResult(
            conc_hat=0.1, skew_hat=-0.2, n=400, sigma=np.asarray(sigma),
            clamped=False, conc_hat_clamped=0.1, skew_hat_clamped=-0.2,
        )

    def test_degenerate_variance_gives_point_interval(self):
        res = confidence_intervals(self._result(np.zeros((2, 2))), 0.95)
        assert res.ci_conc == (0.1, 0.1)
        assert res.ci_skew == (-0.2, -0.2)

    def test_nested_levels(self):
        base = self._result(np.eye(2))
        narrow = confidence_intervals(base, 0.5)
        wide = confidence_intervals(base, 0.99)
        assert wide.ci_conc[0] < narrow.ci_conc[0] < narrow.ci_conc[1] < wide.ci_conc[1]
        assert wide.ci_skew[0] < narrow.ci_skew[0] < narrow.ci_skew[1] < wide.ci_skew[1]

    def test_level_domain(self):
        with pytest.raises(DomainError):
            confidence_intervals(self._result(np.eye(2)), 1.0)

    def test_coverage_near_nominal(self):
        p = SscParams(-0.9, -0.9)
        rng = np.random.default_rng(909)
        reps, n = 300, 1000
        u = rng.random((reps, n))
        x = quantile_many(p, u.ravel()).reshape(reps, n)
        hits_conc = hits_skew = 0
        for row in x:
            res = confidence_intervals(estimate(row), 0.95)
            hits_conc += res.ci_conc[0] <= p.conc <= res.ci_conc[1]
            hits_skew += res.ci_skew[0] <= p.skew <= res.ci_skew[1]
        assert 0.90 <= hits_conc / reps <= 0.99
        assert 0.90 <= hits_skew / reps <= 0.99


class TestMleDiagnostic:
    def test_reference_value_at_flat_point(self):
        data = sample(SscParams(0.0, 0.0), 100, seed=1).values
        diag = mle_diagnostic(SscParams(0.0, 0.0), data)
        assert diag.reference_value == pytest.approx(-100 * math.log(2 * PI), rel=1e-14)

    def test_interior_argmax_at_moderate_sample(self):
        # with 500 draws from an interior truth, the separable concave
        # surface peaks inside the square near the true weights
        p = SscParams(0.9, -0.9)
        diag = mle_diagnostic(p, sample(p, 500, seed=42).values, grid_points=41)
        assert not diag.on_boundary
        assert abs(diag.argmax_skew - 0.9) <= 0.15
        assert abs(diag.argmax_conc + 0.9) <= 0.15

    def test_boundary_argmax_at_small_sample(self):
        # small samples push the skew argmax onto the edge of the square,
        # the behaviour that rules out a usable interior ML estimator
        p = SscParams(0.9, -0.9)
        diag = mle_diagnostic(p, sample(p, 30, seed=1).values, grid_points=41)
        assert diag.on_boundary
        assert abs(diag.argmax_skew) == 1.0

    def test_single_point_surface_is_log_density(self):
        x = 0.8
        diag = mle_diagnostic(SscParams(0.0, 0.0), [x], grid_points=9)
        for i, s in enumerate(diag.skew_grid):
            for j, c in enumerate(diag.loglik[i]):
                expected = log_pdf(SscParams(float(s), float(diag.conc_grid[j])), x)
                assert diag.loglik[i, j] == pytest.approx(expected, rel=1e-12)

    def test_single_point_density_surface_is_bilinear(self):
        # cross second differences of exp(surface) are constant for a
        # one-observation sample: the density is a + b*skew + c*conc
        # + d*skew*conc
        diag = mle_diagnostic(SscParams(0.0, 0.0), [1.1], grid_points=11)
        f = np.exp(diag.loglik)
        second = f[1:, 1:] - f[1:, :-1] - f[:-1, 1:] + f[:-1, :-1]
        assert np.ptp(second) <= 1e-12 * max(np.abs(second).max(), 1e-30)

    def test_needs_data(self):
        with pytest.raises(DomainError):
            mle_diagnostic(SscParams(0.0, 0.0), [])
