"""Method-of-moments estimation of (skew, conc) with delta-method inference.

Matching the first two raw moments to their closed forms,
E X = skew * (1 - conc/4) and E X^2 = pi^2/3 - 2*conc, and solving gives

    conc_hat = (pi^2/3 - m2) / 2,
    skew_hat = 8 * m1 / (8 - pi^2/3 + m2),

with m1, m2 the raw sample moments (1/n convention).  Feeding the exact
population moments through these maps returns (conc, skew) identically.

Writing d = 8 - pi^2/3 + E X^2 = 2*(4 - conc) for the denominator, the
Jacobian of (conc_hat, skew_hat) with respect to (m1, m2) at the truth is

    [ 0      -1/2    ]
    [ 8/d    -skew/d ],

so with M the 2x2 covariance of (X, X^2) the asymptotic covariance of
(sqrt(n)(conc_hat - conc), sqrt(n)(skew_hat - skew)) is J M J^T:

    Sigma_cc = Var(X^2) / 4
    Sigma_ss = Var(8 X - skew * X^2) / d^2
    Sigma_cs = -Cov(X^2, 8 X - skew * X^2) / (2 d).

A frequently quoted variant replaces 8 X - skew * X^2 by X + skew * X^2;
Monte Carlo adjudicates in favour of the Jacobian form above (see
ERRATA.md), whose n = 1000 standard deviation also reproduces published
simulation error tables to three figures.

No maximum-likelihood estimator is provided: the log-likelihood is
additively separable and concave in each weight alone, but its maximum
routinely sits on the boundary of the parameter square, so
``mle_diagnostic`` only reports the surface and where its grid argmax
falls.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from statistics import NormalDist

import numpy as np

from .errors import DomainError, ParameterError
from .model import SUPPORT, SscParams
from .moments import exact_moment

_PI_SQ_THIRD = math.pi**2 / 3.0


@dataclass(frozen=True)
class EstimationResult:
    """Point estimates, asymptotic covariance and optional Wald intervals.

    ``sigma`` is the 2x2 covariance of the sqrt(n)-scaled errors in the
    order (conc, skew), evaluated at the clamped plug-in parameters.
    ``conc_hat``/``skew_hat`` are the raw (unconstrained) solutions;
    the clamped copies project them onto the parameter square and
    ``clamped`` records whether that projection moved anything.
    """

    conc_hat: float
    skew_hat: float
    n: int
    sigma: np.ndarray
    clamped: bool
    conc_hat_clamped: float
    skew_hat_clamped: float
    ci_level: float | None = None
    ci_conc: tuple[float, float] | None = None
    ci_skew: tuple[float, float] | None = None


def asymptotic_covariance(p: SscParams) -> np.ndarray:
    """Delta-method covariance of the sqrt(n)-scaled (conc_hat, skew_hat)."""
    m1, m2, m3, m4 = (exact_moment(p, k) for k in (1, 2, 3, 4))
    moment_cov = np.array([
        [m2 - m1 * m1, m3 - m1 * m2],
        [m3 - m1 * m2, m4 - m2 * m2],
    ])
    d = 8.0 - _PI_SQ_THIRD + m2
    jac = np.array([
        [0.0, -0.5],
        [8.0 / d, -p.skew / d],
    ])
    return jac @ moment_cov @ jac.T


def _clamp(value: float) -> float:
    return min(1.0, max(-1.0, value))


def estimates_from_moments(m1: float, m2: float) -> tuple[float, float]:
    """(conc_hat, skew_hat) from first and second raw moments.

    These are the exact estimator maps; feeding the closed-form
    population moments returns the true parameters identically.
    """
    conc_hat = (_PI_SQ_THIRD - m2) / 2.0
    skew_hat = 8.0 * m1 / (8.0 - _PI_SQ_THIRD + m2)
    return conc_hat, skew_hat


def estimate(data) -> EstimationResult:
    """Method-of-moments estimates from raw data in [-pi, pi].

    Raw estimates may leave the parameter square at small n; both the
    raw and the projected values are reported, with ``clamped`` set when
    they differ.  Requires n >= 2 and every value inside the support.
    """
    arr = np.asarray(data, dtype=float)
    if arr.ndim != 1:
        arr = arr.ravel()
    if arr.size < 2:
        raise DomainError(f"need at least 2 observations, got {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise DomainError("data must be finite")
    if np.any(arr < SUPPORT[0]) or np.any(arr > SUPPORT[1]):
        raise DomainError("data must lie in [-pi, pi]")
    m1 = float(arr.mean())
    m2 = float(np.mean(arr * arr))
    conc_hat, skew_hat = estimates_from_moments(m1, m2)
    conc_cl, skew_cl = _clamp(conc_hat), _clamp(skew_hat)
    sigma = asymptotic_covariance(SscParams(skew=skew_cl, conc=conc_cl))
    return EstimationResult(
        conc_hat=conc_hat,
        skew_hat=skew_hat,
        n=int(arr.size),
        sigma=sigma,
        clamped=(conc_cl != conc_hat) or (skew_cl != skew_hat),
        conc_hat_clamped=conc_cl,
        skew_hat_clamped=skew_cl,
    )


def confidence_intervals(result: EstimationResult, level: float) -> EstimationResult:
    """Wald intervals estimate +- z * sqrt(Sigma_kk / n) at the given level."""
    if not 0.0 < level < 1.0:
        raise DomainError(f"level must lie in (0, 1), got {level!r}")
    z = NormalDist().inv_cdf(0.5 * (1.0 + level))
    half_conc = z * math.sqrt(max(result.sigma[0, 0], 0.0) / result.n)
    half_skew = z * math.sqrt(max(result.sigma[1, 1], 0.0) / result.n)
    return replace(
        result,
        ci_level=level,
        ci_conc=(result.conc_hat - half_conc, result.conc_hat + half_conc),
        ci_skew=(result.skew_hat - half_skew, result.skew_hat + half_skew),
    )


@dataclass(frozen=True)
class MleDiagnostic:
    """Log-likelihood surface scan over the parameter square.

    The surface is A(skew) + B(conc) - n log 2pi with A, B each concave,
    so the grid argmax is the pair of one-dimensional argmaxes.
    ``loglik`` has skew along rows and conc along columns.
    ``on_boundary`` flags an argmax on the edge of the square, the
    situation that leaves no usable interior ML estimator.
    """

    skew_grid: np.ndarray
    conc_grid: np.ndarray
    loglik: np.ndarray
    argmax_skew: float
    argmax_conc: float
    on_boundary: bool
    reference_value: float


def mle_diagnostic(p0: SscParams, data, grid_points: int = 41) -> MleDiagnostic:
    """Scan the log-likelihood over [-1, 1]^2; diagnostic only.

    ``p0`` picks the reference point whose exact log-likelihood is
    reported alongside the grid.  No estimator is returned.
    """
    if grid_points < 3:
        raise ParameterError(f"grid_points must be >= 3, got {grid_points}")
    arr = np.asarray(data, dtype=float).ravel()
    if arr.size < 1:
        raise DomainError("need at least one observation")
    sin_x = np.sin(arr)
    cos_x = np.cos(arr)
    grid = np.linspace(-1.0, 1.0, grid_points)
    with np.errstate(divide="ignore", invalid="ignore"):
        a_part = np.where(
            grid[:, None] * sin_x[None, :] > -1.0,
            np.log1p(grid[:, None] * sin_x[None, :]),
            -np.inf,
        ).sum(axis=1)
        b_part = np.where(
            grid[:, None] * cos_x[None, :] > -1.0,
            np.log1p(grid[:, None] * cos_x[None, :]),
            -np.inf,
        ).sum(axis=1)
    base = -arr.size * math.log(2.0 * math.pi)
    loglik = a_part[:, None] + b_part[None, :] + base
    i_skew = int(np.argmax(a_part))
    i_conc = int(np.argmax(b_part))
    with np.errstate(divide="ignore", invalid="ignore"):
        ref_terms = np.where(
            p0.skew * sin_x > -1.0, np.log1p(p0.skew * sin_x), -np.inf
        ) + np.where(p0.conc * cos_x > -1.0, np.log1p(p0.conc * cos_x), -np.inf)
    reference = base + float(np.sum(ref_terms))
    return MleDiagnostic(
        skew_grid=grid,
        conc_grid=grid.copy(),
        loglik=loglik,
        argmax_skew=float(grid[i_skew]),
        argmax_conc=float(grid[i_conc]),
        on_boundary=i_skew in (0, grid_points - 1) or i_conc in (0, grid_points - 1),
        reference_value=reference,
    )
