"""Pointwise functions of the sine-skewed cardioid law.

The distribution lives on [-pi, pi] with density

    f(x) = (1 / 2pi) * (1 + skew * sin x) * (1 + conc * cos x),

where both weights lie in [-1, 1]: ``skew`` tilts mass between the two
half-circles through the sine factor, ``conc`` concentrates mass around
0 (or around +-pi for negative values) through the cardioid cosine
factor.  Expanding the product and integrating once gives the closed
cumulative distribution

    F(x) = 1/2 + (1 / 2pi) * (x - skew * (cos x + 1) + conc * sin x
                              - (skew * conc / 4) * (cos 2x - 1)),

which is exact at the endpoints: F(-pi) = 0 and F(pi) = 1.

The characteristic function is a rational combination of shifted
cardinal sines and is implemented in that form, so the removable
singularities at t in {0, +-1, +-2} need no special casing: with
sinc(t) = sin(pi t) / (pi t),

    E e^{itX} = sinc(t) - conc * t * g1(t)
                - i * (skew * g1(t) - skew * conc * g2(t)),
    g1(t) = (sinc(t + 1) - sinc(t - 1)) / 2,
    g2(t) = (sinc(t - 2) - sinc(t + 2)) / 4.

All functions are pure and accept scalars or numpy arrays; they are safe
to call concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ParameterError

# Closed support of the law.
SUPPORT = (-math.pi, math.pi)

_TWO_PI = 2.0 * math.pi
_LOG_TWO_PI = math.log(_TWO_PI)


@dataclass(frozen=True)
class SscParams:
    """Parameter pair of the sine-skewed cardioid law.

    Parameters
    ----------
    skew : float
        Weight of the sine factor, in [-1, 1].
    conc : float
        Weight of the cardioid (cosine) factor, in [-1, 1].

    Both weights at their boundary values are legal; the density then
    touches zero somewhere on the support.
    """

    skew: float
    conc: float

    def __post_init__(self):
        for name, value in (("skew", self.skew), ("conc", self.conc)):
            if not math.isfinite(value):
                raise ParameterError(f"{name} must be finite, got {value!r}")
            if not -1.0 <= value <= 1.0:
                raise ParameterError(f"{name} must lie in [-1, 1], got {value!r}")

    def mirrored(self) -> "SscParams":
        """Parameters of -X: the sine factor flips sign, the cosine one stays."""
        return SscParams(-self.skew, self.conc)


def _validated_array(x, name: str) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} must be finite")
    return arr


def _scalar_like(result: np.ndarray, template) -> float | np.ndarray:
    if np.isscalar(template) or np.ndim(template) == 0:
        return float(result)
    return result


def pdf(p: SscParams, x) -> float | np.ndarray:
    """Density at ``x``; zero outside [-pi, pi].

    Raises DomainError for non-finite ``x``.
    """
    arr = _validated_array(x, "x")
    inside = (arr >= SUPPORT[0]) & (arr <= SUPPORT[1])
    val = (1.0 + p.skew * np.sin(arr)) * (1.0 + p.conc * np.cos(arr)) / _TWO_PI
    return _scalar_like(np.where(inside, val, 0.0), x)


def cdf(p: SscParams, x) -> float | np.ndarray:
    """Cumulative distribution at ``x``.

    Defined on the whole real line: 0 below -pi, 1 above pi.  The result
    is clamped to [0, 1] so that trigonometric round-off can never push
    it outside the unit interval (numerical inversion relies on this).
    """
    arr = _validated_array(x, "x")
    sin_x = np.sin(arr)
    cos_x = np.cos(arr)
    cos_2x = 2.0 * cos_x * cos_x - 1.0
    val = 0.5 + (
        arr
        - p.skew * (cos_x + 1.0)
        + p.conc * sin_x
        - 0.25 * p.skew * p.conc * (cos_2x - 1.0)
    ) / _TWO_PI
    val = np.clip(val, 0.0, 1.0)
    val = np.where(arr <= SUPPORT[0], 0.0, val)
    val = np.where(arr >= SUPPORT[1], 1.0, val)
    return _scalar_like(val, x)


def log_pdf(p: SscParams, x) -> float | np.ndarray:
    """Log-density at ``x``; -inf wherever the density vanishes.

    Boundary weights (|skew| = 1 or |conc| = 1) put genuine zeros inside
    the support, so -inf is a legal return value, not an error.  Points
    outside the support also map to -inf.
    """
    arr = _validated_array(x, "x")
    sin_factor = 1.0 + p.skew * np.sin(arr)
    cos_factor = 1.0 + p.conc * np.cos(arr)
    inside = (arr >= SUPPORT[0]) & (arr <= SUPPORT[1])
    with np.errstate(divide="ignore", invalid="ignore"):
        val = (
            np.where(sin_factor > 0.0, np.log(np.maximum(sin_factor, 0.0)), -np.inf)
            + np.where(cos_factor > 0.0, np.log(np.maximum(cos_factor, 0.0)), -np.inf)
            - _LOG_TWO_PI
        )
    return _scalar_like(np.where(inside, val, -np.inf), x)


def cf(p: SscParams, t) -> complex | np.ndarray:
    """Characteristic function E e^{itX} at real frequency ``t``.

    Uses the shifted-sinc representation from the module docstring, an
    expression that is analytic in t, so the values at t in
    {0, +-1, +-2} are the exact continuity limits (for instance
    cf(p, 0) == 1 and cf(p, 1) == conc/2 + i*skew/2).
    """
    arr = _validated_array(t, "t")
    g1 = 0.5 * (np.sinc(arr + 1.0) - np.sinc(arr - 1.0))
    g2 = 0.25 * (np.sinc(arr - 2.0) - np.sinc(arr + 2.0))
    re = np.sinc(arr) - p.conc * arr * g1
    im = -p.skew * g1 + p.skew * p.conc * g2
    val = re + 1j * im
    if np.isscalar(t) or np.ndim(t) == 0:
        return complex(val)
    return val
