"""Exact trigonometric integrals and closed-form moments.

Writing the density as (1/2pi) * (1 + skew*sin x + conc*cos x
+ skew*conc*sin x cos x), the k-th raw moment splits into four pieces:

    E X^k = (1/2pi) * ( int x^k dx + skew * J_k + conc * I_k
                        + skew*conc * H_k ),

with the three integral families over [-pi, pi]

    I_k = int x^k cos x dx,
    J_k = int x^k sin x dx,
    H_k = int x^k sin x cos x dx  (= one half of int x^k sin 2x dx).

Parity kills half of every family (odd I, even J, even H are zero);
integration by parts gives two-step recurrences for the rest:

    I_{2n}   = -4n pi^{2n-1} - 2n(2n-1) I_{2n-2},        I_0 = 0,
    J_{2n+1} = 2 pi^{2n+1} - 2n(2n+1) J_{2n-1},          J_1 = 2 pi,
    H_{2n+1} = -pi^{2n+1}/2 - (n(2n+1)/2) H_{2n-1},      H_1 = -pi/2.

Internally the recurrences are run on the values divided by 2pi, so the
final moment assembly involves no 2pi round trip; in particular
E X^2 == pi^2/3 - 2*conc holds to the last bit.  Everything here is a
pure function of immutable inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError
from .model import SscParams

MAX_MOMENT_ORDER = 8


@dataclass(frozen=True)
class TrigIntegralTable:
    """Values of I_n, J_n, H_n for n = 0..order."""

    order: int
    i_vals: tuple[float, ...]
    j_vals: tuple[float, ...]
    h_vals: tuple[float, ...]


@dataclass(frozen=True)
class MomentSet:
    """Raw moments E X^1..E X^8 plus the quadratic summaries used for inference.

    ``var_x2`` is Var(X^2), ``var_lin`` is Var(X + skew*X^2) and
    ``cov_cross`` is Cov(X^2, X + skew*X^2), all expanded in raw moments.
    """

    raw: tuple[float, ...]
    var_x2: float
    var_lin: float
    cov_cross: float

    @property
    def var_x(self) -> float:
        return self.raw[1] - self.raw[0] ** 2

    @property
    def cov_x_x2(self) -> float:
        return self.raw[2] - self.raw[0] * self.raw[1]


@lru_cache(maxsize=None)
def _scaled_tables(max_order: int) -> tuple[tuple[float, ...], ...]:
    """I_n/2pi, J_n/2pi, H_n/2pi for n = 0..max_order, by recurrence."""
    pi = math.pi
    i_s = [0.0] * (max_order + 1)
    j_s = [0.0] * (max_order + 1)
    h_s = [0.0] * (max_order + 1)
    if max_order >= 1:
        j_s[1] = 1.0
        h_s[1] = -0.25
    for m in range(2, max_order + 1):
        if m % 2 == 0:
            n = m // 2
            i_s[m] = -2 * n * pi ** (2 * n - 2) - 2 * n * (2 * n - 1) * i_s[m - 2]
        else:
            n = (m - 1) // 2
            j_s[m] = pi ** (2 * n) - 2 * n * (2 * n + 1) * j_s[m - 2]
            h_s[m] = -(pi ** (2 * n)) / 4.0 - 0.5 * n * (2 * n + 1) * h_s[m - 2]
    return tuple(i_s), tuple(j_s), tuple(h_s)


def trig_table(max_order: int) -> TrigIntegralTable:
    """Exact I_n, J_n, H_n for n = 0..max_order via the recurrences."""
    if max_order < 0:
        raise DomainError(f"max_order must be >= 0, got {max_order}")
    i_s, j_s, h_s = _scaled_tables(max_order)
    two_pi = 2.0 * math.pi
    return TrigIntegralTable(
        order=max_order,
        i_vals=tuple(v * two_pi for v in i_s),
        j_vals=tuple(v * two_pi for v in j_s),
        h_vals=tuple(v * two_pi for v in h_s),
    )


def exact_moment(p: SscParams, k: int) -> float:
    """Closed-form raw moment E X^k for k = 1..8.

    Assembled as plain_part + skew*J + conc*I + skew*conc*H with the
    scaled tables, e.g. E X = skew * (1 - conc/4) and
    E X^2 = pi^2/3 - 2*conc.
    """
    if not isinstance(k, int) or isinstance(k, bool):
        raise DomainError(f"moment order must be an integer, got {k!r}")
    if not 1 <= k <= MAX_MOMENT_ORDER:
        raise DomainError(f"moment order must be in 1..{MAX_MOMENT_ORDER}, got {k}")
    i_s, j_s, h_s = _scaled_tables(MAX_MOMENT_ORDER)
    plain = math.pi**k / (k + 1) if k % 2 == 0 else 0.0
    return plain + p.skew * j_s[k] + p.conc * i_s[k] + p.skew * p.conc * h_s[k]


def moment_set(p: SscParams) -> MomentSet:
    """Raw moments up to order 8 and the derived variances/covariance."""
    raw = tuple(exact_moment(p, k) for k in range(1, MAX_MOMENT_ORDER + 1))
    m1, m2, m3, m4 = raw[:4]
    var_x = m2 - m1 * m1
    cov_x_x2 = m3 - m1 * m2
    var_x2 = m4 - m2 * m2
    var_lin = var_x + 2.0 * p.skew * cov_x_x2 + p.skew**2 * var_x2
    cov_cross = cov_x_x2 + p.skew * var_x2
    return MomentSet(raw=raw, var_x2=var_x2, var_lin=var_lin, cov_cross=cov_cross)
