"""Endpoint behaviour: tail expansions, extreme-value constants, ratio test.

Integrating the density from x = pi - t down, the upper tail has the
exact closed form

    1 - F(pi - t) = (1/2pi) * ( t + skew * (1 - cos t) - conc * sin t
                                - (skew * conc / 2) * sin^2 t ),

so its Taylor coefficients in t follow from the three elementary series
for 1 - cos t, sin t and sin^2 t.  The first six are assembled here *from
those series*, at run time, rather than being quoted from any constant
table; truncated variants of these coefficients circulate with flipped
signs on the conc-only terms and a wrong sixth-order denominator (see
ERRATA.md), and the numerical oracles in the test suite adjudicate in
favour of the series assembly.  Spelled out:

    2pi a1 = 1 - conc                2pi a2 = (skew/2)(1 - conc)
    2pi a3 = conc/6                  2pi a4 = (skew/24)(4 conc - 1)
    2pi a5 = -conc/120               2pi a6 = (skew/720)(1 - 16 conc)

The mirrored law -X swaps skew for -skew, so the lower tail F(-pi + t)
expands with the same coefficients taken at (-skew, conc).

Since the density at +pi equals (1 - conc)/2pi > 0 for conc < 1, maxima
are in the Weibull domain of attraction with index -1:

    n * a1 * (X_{n,n} - pi)  -->  G,   G(z) = exp(z) for z <= 0,

which fixes the normalizing rate n * (1 - conc) / (2 pi).  At conc = 1
the density vanishes at both endpoints and this rate degenerates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateRateError, DomainError
from .model import SscParams, pdf

TAIL_ORDER = 6

_TWO_PI = 2.0 * math.pi


def _elementary_series(order: int) -> tuple[list[float], list[float], list[float]]:
    """Taylor coefficients (index = power of t) of 1-cos t, sin t, sin^2 t."""
    one_minus_cos = [0.0] * (order + 1)
    sin_t = [0.0] * (order + 1)
    sin_sq = [0.0] * (order + 1)
    for k in range(1, order + 1):
        if k % 2 == 0:
            m = k // 2
            sign = -1.0 if m % 2 == 0 else 1.0
            one_minus_cos[k] = sign / math.factorial(k)
            sin_sq[k] = sign * 2.0 ** (k - 1) / math.factorial(k)
        else:
            m = (k - 1) // 2
            sin_t[k] = (-1.0) ** m / math.factorial(k)
    return one_minus_cos, sin_t, sin_sq


@dataclass(frozen=True)
class TailExpansion:
    """Coefficients of t^1..t^6 in the tail series of the cdf.

    For ``side == "upper"`` these expand 1 - F(pi - t); for
    ``side == "lower"`` they expand F(-pi + t).
    """

    coefs: tuple[float, ...]
    side: str

    def evaluate(self, t, order: int = TAIL_ORDER):
        """Partial sum of the series up to ``order`` at offset ``t``."""
        if not 1 <= order <= len(self.coefs):
            raise DomainError(f"order must be in 1..{len(self.coefs)}, got {order}")
        t = np.asarray(t, dtype=float)
        acc = np.zeros_like(t)
        for k in range(order, 0, -1):
            acc = (acc + self.coefs[k - 1]) * t
        return acc if acc.ndim else float(acc)


def tail_coefficients(p: SscParams, side: str = "upper") -> TailExpansion:
    """First six tail-series coefficients, assembled from elementary series."""
    if side not in ("upper", "lower"):
        raise DomainError(f"side must be 'upper' or 'lower', got {side!r}")
    skew = p.skew if side == "upper" else -p.skew
    one_minus_cos, sin_t, sin_sq = _elementary_series(TAIL_ORDER)
    coefs = []
    for k in range(1, TAIL_ORDER + 1):
        c = (1.0 if k == 1 else 0.0) + skew * one_minus_cos[k]
        c -= p.conc * sin_t[k]
        c -= 0.5 * skew * p.conc * sin_sq[k]
        coefs.append(c / _TWO_PI)
    return TailExpansion(coefs=tuple(coefs), side=side)


def survival_upper(p: SscParams, t) -> float | np.ndarray:
    """Exact 1 - F(pi - t), evaluated without cancellation near t = 0.

    Algebraically identical to 1 - cdf(p, pi - t), but keeps full relative
    precision for tiny t, which the remainder and ratio diagnostics need.
    """
    t = np.asarray(t, dtype=float)
    sin_t = np.sin(t)
    sin_half = np.sin(0.5 * t)
    # 1 - cos t as 2 sin^2(t/2): no cancellation at small t
    val = (
        t
        + 2.0 * p.skew * sin_half * sin_half
        - p.conc * sin_t
        - 0.5 * p.skew * p.conc * sin_t * sin_t
    ) / _TWO_PI
    return val if val.ndim else float(val)


def tail_survival_approx(p: SscParams, x: float, order: int) -> float:
    """Truncated tail series for 1 - F(x) near the upper endpoint.

    Requires t = pi - x in (0, 1]; the dropped remainder is O(t^(order+1)).
    """
    t = math.pi - x
    if not 0.0 < t <= 1.0:
        raise DomainError(f"x must satisfy 0 < pi - x <= 1, got pi - x = {t!r}")
    return tail_coefficients(p, "upper").evaluate(t, order)


def _poly_mul(a: list[float], b: list[float], order: int) -> list[float]:
    out = [0.0] * (order + 1)
    for i, ai in enumerate(a):
        if ai == 0.0 or i > order:
            continue
        for j, bj in enumerate(b):
            if i + j > order:
                break
            out[i + j] += ai * bj
    return out


def _revert_series(coefs: tuple[float, ...], order: int) -> list[float]:
    """Coefficients of the compositional inverse of S(t) = sum coefs[k] t^(k+1).

    Solves for t(u) = sum c_j u^j term by term so that S(t(u)) = u up to
    O(u^(order+1)).  Requires a nonzero linear coefficient.
    """
    a = [0.0] + list(coefs[:order])
    if a[1] == 0.0:
        raise DomainError("series reversion needs a nonzero linear coefficient")
    c = [0.0, 1.0 / a[1]]
    for m in range(2, order + 1):
        t_poly = c + [0.0] * (order + 1 - len(c))
        power = t_poly[:]
        composed = [0.0] * (order + 1)
        for k in range(1, order + 1):
            if k > 1:
                power = _poly_mul(power, t_poly, order)
            if k < len(a) and a[k] != 0.0:
                for idx in range(order + 1):
                    composed[idx] += a[k] * power[idx]
        c.append(-composed[m] / a[1])
    return c[1:]


def quantile_tail_approx(p: SscParams, u: float, order: int) -> float:
    """Series approximation of the (1 - u)-quantile for small u.

    Inverts the upper tail series by formal reversion, so the error is
    O(u^(order+1)).  Valid for 0 < u < 0.1.
    """
    if not 0.0 < u < 0.1:
        raise DomainError(f"u must lie in (0, 0.1), got {u!r}")
    if not 1 <= order <= TAIL_ORDER:
        raise DomainError(f"order must be in 1..{TAIL_ORDER}, got {order}")
    rev = _revert_series(tail_coefficients(p, "upper").coefs, order)
    t = 0.0
    for j in range(order, 0, -1):
        t = (t + rev[j - 1]) * u if j > 1 else (t + rev[0]) * u
    return math.pi - t


@dataclass(frozen=True)
class EvNormalization:
    """Normalizing rate for block maxima and the extreme-value index."""

    rate: float
    limit_index: int = -1


def ev_normalization(p: SscParams, n: int) -> EvNormalization:
    """Rate r_n with r_n * (X_{n,n} - pi) converging to the Weibull limit law.

    r_n = n * (1 - conc) / (2 pi), the sample size times the leading tail
    coefficient.  Degenerate at conc = 1, where the endpoint density
    vanishes and the tail is no longer linear.
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if p.conc == 1.0:
        raise DegenerateRateError(
            "conc = 1 puts a density zero at the endpoint; the linear-rate "
            "normalization degenerates"
        )
    return EvNormalization(rate=n * tail_coefficients(p, "upper").coefs[0])


def extreme_value_limit_cdf(z) -> float | np.ndarray:
    """cdf of the limit law of normalized maxima: exp(z) for z <= 0, else 1."""
    z = np.asarray(z, dtype=float)
    val = np.where(z <= 0.0, np.exp(np.minimum(z, 0.0)), 1.0)
    return val if val.ndim else float(val)


def von_mises_ratio(p: SscParams, x: float) -> float:
    """(pi - x) * f(x) / (1 - F(x)), the endpoint ratio criterion.

    Tends to 1 as x -> pi whenever conc < 1, whether or not the density
    is monotone near the endpoint.  At x = pi the 0/0 limit value 1 is
    returned directly.
    """
    if not (-math.pi < x <= math.pi):
        raise DomainError(f"x must lie in (-pi, pi], got {x!r}")
    t = math.pi - x
    if t == 0.0:
        return 1.0
    return t * pdf(p, x) / survival_upper(p, t)


def pdf_ultimately_nonincreasing(
    p: SscParams, window: float = 0.25, points: int = 512
) -> bool:
    """Whether the density is non-increasing on (pi - window, pi).

    Dense-grid scan; a small absolute slack absorbs round-off so that a
    constant density counts as non-increasing.
    """
    if not 0.0 < window < 2.0 * math.pi:
        raise DomainError(f"window must lie in (0, 2 pi), got {window!r}")
    xs = np.linspace(math.pi - window, math.pi, points)
    vals = pdf(p, xs)
    return bool(np.all(np.diff(vals) <= 1e-12))
