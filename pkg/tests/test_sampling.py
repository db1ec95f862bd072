"""Quantile inversion (both modes) and seeded generation."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sscdist import (
    BRACKET_BISECTION,
    DIGIT_REFINEMENT,
    ConvergenceError,
    DomainError,
    InversionConfig,
    ParameterError,
    SampleBatch,
    SscParams,
    cdf,
    exact_moment,
    ks_statistic,
    load_values,
    moment_set,
    quantile,
    quantile_many,
    sample,
    save_batch,
)

from conftest import bisect_cdf_oracle

PI = math.pi
DIGIT9 = InversionConfig(mode=DIGIT_REFINEMENT, nbr_dec=9)


class TestInversionConfig:
    def test_defaults(self):
        cfg = InversionConfig()
        assert cfg.mode == BRACKET_BISECTION

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"mode": "newton"},
            {"nbr_dec": 0},
            {"nbr_dec": 13},
            {"abs_tol": 0.0},
            {"abs_tol": -1e-9},
            {"max_iter": 0},
        ],
    )
    def test_validation(self, kwargs):
        with pytest.raises(ParameterError):
            InversionConfig(**kwargs)


class TestQuantile:
    def test_uniform_median(self):
        assert quantile(SscParams(0.0, 0.0), 0.5) == pytest.approx(0.0, abs=1e-9)

    def test_uniform_three_quarters(self):
        assert quantile(SscParams(0.0, 0.0), 0.75) == pytest.approx(PI / 2, abs=1e-9)

    @pytest.mark.parametrize("cfg", [None, DIGIT9])
    def test_endpoints_short_circuit(self, cfg):
        p = SscParams(0.9, 0.9)
        assert quantile(p, 0.0, cfg) == -PI
        assert quantile(p, 1.0, cfg) == PI

    @pytest.mark.parametrize("v", [-0.1, 1.1, math.nan])
    def test_domain_enforced(self, v):
        with pytest.raises(DomainError):
            quantile(SscParams(0.0, 0.0), v)

    def test_against_scratch_bisection(self):
        p = SscParams(0.9, -0.9)
        x = quantile(p, 0.9)
        assert abs(cdf(p, x) - 0.9) <= 1e-10
        assert x == pytest.approx(bisect_cdf_oracle(p, 0.9), abs=1e-9)

    def test_round_trip_bracket(self, rng):
        p = SscParams(0.7, -0.5)
        for v in rng.random(200):
            x = quantile(p, float(v))
            assert abs(cdf(p, x) - v) <= 1e-10

    def test_round_trip_digit(self, rng):
        # digit mode bounds the abscissa error, so the cdf error is
        # bounded by sup(density) * 10^-nbr_dec
        p = SscParams(0.6, 0.3)
        sup_density = (1 + abs(p.skew)) * (1 + abs(p.conc)) / (2 * PI)
        cfg = InversionConfig(mode=DIGIT_REFINEMENT, nbr_dec=6)
        for v in rng.random(50):
            x = quantile(p, float(v), cfg)
            assert abs(cdf(p, x) - v) <= sup_density * 1e-6 * 1.01

    def test_monotone_in_v(self):
        p = SscParams(-0.8, -0.4)
        vs = np.linspace(0.0, 1.0, 101)
        xs = [quantile(p, float(v)) for v in vs]
        assert all(a <= b + 1e-12 for a, b in zip(xs, xs[1:]))

    @settings(max_examples=40, deadline=None)
    @given(
        st.floats(min_value=0.001, max_value=0.999),
        st.floats(min_value=0.001, max_value=0.999),
    )
    def test_monotone_pairs(self, v1, v2):
        p = SscParams(0.9, 0.9)
        lo, hi = sorted((v1, v2))
        assert quantile(p, lo) <= quantile(p, hi) + 1e-12

    @pytest.mark.parametrize(
        "p", [SscParams(0.0, 0.0), SscParams(0.9, -0.9), SscParams(0.5, 0.5)]
    )
    def test_modes_agree(self, p):
        bracket = InversionConfig(mode=BRACKET_BISECTION, abs_tol=1e-9)
        for v in np.linspace(0.02, 0.98, 25):
            assert quantile(p, float(v), DIGIT9) == pytest.approx(
                quantile(p, float(v), bracket), abs=1e-8
            )

    def test_digit_cap_surfaces_convergence_error(self):
        with pytest.raises(ConvergenceError) as exc_info:
            quantile(SscParams(0.0, 0.0), 0.9, InversionConfig(
                mode=DIGIT_REFINEMENT, nbr_dec=9, max_iter=3
            ))
        assert exc_info.value.last_bracket is not None

    def test_quantile_many_matches_scalar(self):
        p = SscParams(0.3, -0.7)
        vs = np.linspace(0.0, 1.0, 21)
        np.testing.assert_allclose(
            quantile_many(p, vs), [quantile(p, float(v)) for v in vs], atol=1e-12
        )

    def test_quantile_many_rejects_bad_probabilities(self):
        with pytest.raises(DomainError):
            quantile_many(SscParams(0.0, 0.0), [0.5, 1.5])


class TestSample:
    def test_uniform_moments(self):
        n = 100_000
        batch = sample(SscParams(0.0, 0.0), n, seed=7)
        x = batch.values
        assert abs(x.mean()) < 3 * (PI / math.sqrt(3)) / math.sqrt(n)
        m2 = PI**2 / 3
        se_m2 = math.sqrt((PI**4 / 5 - m2**2) / n)
        assert abs((x * x).mean() - m2) < 3 * se_m2

    @pytest.mark.parametrize("skew", [0.9, -0.9])
    def test_skewed_moments_near_exact(self, skew):
        p = SscParams(skew, -0.9)
        n = 1000
        batch = sample(p, n, seed=20260809)
        ms = moment_set(p)
        assert abs(batch.values.mean() - exact_moment(p, 1)) < 3 * math.sqrt(
            ms.var_x / n
        )
        assert abs((batch.values**2).mean() - exact_moment(p, 2)) < 3 * math.sqrt(
            ms.var_x2 / n
        )

    def test_support(self):
        batch = sample(SscParams(1.0, -1.0), 5000, seed=3)
        assert np.all(batch.values >= -PI) and np.all(batch.values <= PI)

    def test_deterministic(self):
        p = SscParams(0.2, 0.8)
        a = sample(p, 500, seed=11).values
        b = sample(p, 500, seed=11).values
        c = sample(p, 500, seed=12).values
        np.testing.assert_array_equal(a, b)
        assert not np.array_equal(a, c)

    def test_digit_mode_agrees_with_bracket(self):
        p = SscParams(0.4, 0.4)
        a = sample(p, 50, seed=5, config=DIGIT9).values
        b = sample(p, 50, seed=5).values
        np.testing.assert_allclose(a, b, atol=1e-8)

    def test_bad_size(self):
        with pytest.raises(DomainError):
            sample(SscParams(0.0, 0.0), 0, seed=1)


class TestKsStatistic:
    def test_bounds(self):
        batch = sample(SscParams(0.0, 0.0), 100, seed=21)
        assert 0.0 <= ks_statistic(batch) <= 1.0

    def test_self_consistency(self):
        # 20 seeded self-tests at the 1% level; all should pass comfortably
        p = SscParams(0.5, -0.5)
        passing = sum(
            ks_statistic(sample(p, 2000, seed=100 + k)) * math.sqrt(2000) < 1.63
            for k in range(20)
        )
        assert passing >= 18

    def test_detects_wrong_parameters(self):
        values = sample(SscParams(0.9, 0.9), 10_000, seed=9).values
        mismatched = SampleBatch(
            values=values, seed=9, params=SscParams(-0.9, 0.9)
        )
        assert ks_statistic(mismatched) * math.sqrt(10_000) > 5.0

    def test_empty_rejected(self):
        batch = SampleBatch(
            values=np.array([]), seed=0, params=SscParams(0.0, 0.0)
        )
        with pytest.raises(DomainError):
            ks_statistic(batch)


class TestTextExport:
    def test_round_trip(self, tmp_path):
        batch = sample(SscParams(0.3, 0.3), 64, seed=4)
        path = tmp_path / "values.txt"
        save_batch(batch, path)
        np.testing.assert_array_equal(load_values(path), batch.values)

    def test_format_one_decimal_per_line(self, tmp_path):
        batch = sample(SscParams(0.0, 0.0), 5, seed=1)
        path = tmp_path / "values.txt"
        save_batch(batch, path)
        text = path.read_text(encoding="utf-8")
        lines = text.splitlines()
        assert len(lines) == 5
        assert text.endswith("\n")
        for line in lines:
            float(line)
