"""Shared fixtures and numerical oracles for the test suite.

The oracles here deliberately avoid the closed forms under test:
moments and tail masses come from adaptive quadrature of the density,
tail coefficients from high-precision numerical differentiation of the
cdf, so every closed-form path is checked against an independent route.
"""

import math

import numpy as np
import pytest
from scipy.integrate import quad

from sscdist import SscParams, pdf

GRID7 = (-0.9, -0.6, -0.3, 0.0, 0.3, 0.6, 0.9)

# small subgrid for per-module tests; the acceptance suite runs the full grid
GRID3 = (-0.9, 0.0, 0.9)


def grid_params(values=GRID7):
    return [SscParams(skew=s, conc=c) for s in values for c in values]


def quad_pdf_mass(p: SscParams, a: float, b: float) -> float:
    """Adaptive quadrature of the density over [a, b]."""
    return quad(lambda x: pdf(p, x), a, b, epsabs=1e-13, limit=300)[0]


def quad_moment(p: SscParams, k: int) -> float:
    """Adaptive quadrature of x^k against the density."""
    return quad(
        lambda x: x**k * pdf(p, x), -math.pi, math.pi, epsabs=1e-12, limit=400
    )[0]


def quad_cf(p: SscParams, t: float) -> complex:
    """Characteristic function by quadrature of cos/sin parts."""
    re = quad(
        lambda x: math.cos(t * x) * pdf(p, x), -math.pi, math.pi,
        epsabs=1e-12, limit=400,
    )[0]
    im = quad(
        lambda x: math.sin(t * x) * pdf(p, x), -math.pi, math.pi,
        epsabs=1e-12, limit=400,
    )[0]
    return complex(re, im)


def bisect_cdf_oracle(p: SscParams, v: float, tol: float = 1e-12) -> float:
    """From-scratch monotone bisection of the cdf, independent of sampling.py."""
    from sscdist import cdf

    lo, hi = -math.pi, math.pi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if cdf(p, mid) < v:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@pytest.fixture
def rng():
    return np.random.default_rng(20260809)
