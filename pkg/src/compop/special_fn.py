"""Stable Gamma ratios, Pochhammer symbols, generalized binomials, and the
Gauss hypergeometric series on [0, 1).

Everything here is a pure scalar function of real arguments; these are the
building blocks of every closed-form limit in the package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "HypParams",
    "NonConvergenceError",
    "gamma_ratio",
    "gauss_2f1_unit",
    "hyp2f1",
    "log_gamma",
    "pochhammer",
    "real_binomial",
]

SERIES_RTOL = 1e-16
SERIES_MAX_TERMS = 10**6

# Integer Gamma-argument separations up to this size are evaluated as plain
# products; beyond it the log-gamma difference is accurate enough anyway.
_RATIO_PRODUCT_MAX = 512


class NonConvergenceError(ArithmeticError):
    """A series hit its term cap before meeting tolerance.

    Carries the partial sum and the number of terms accumulated so far.
    """

    def __init__(self, message: str, partial_sum: float, n_terms: int):
        super().__init__(message)
        self.partial_sum = partial_sum
        self.n_terms = n_terms


def log_gamma(x: float) -> float:
    """Natural log of the Gamma function for x > 0."""
    if x <= 0.0:
        raise ValueError(f"log_gamma requires a positive argument, got {x}")
    return math.lgamma(x)


def gamma_ratio(x: float, y: float) -> float:
    """Gamma(x) / Gamma(y) for positive x and y.

    When x - y is (numerically) a small integer the ratio is an explicit
    product of |x - y| factors, which stays accurate for arguments around
    1e6 where exp(lgamma(x) - lgamma(y)) would lose digits.
    """
    if x <= 0.0 or y <= 0.0:
        raise ValueError(f"gamma_ratio requires positive arguments, got ({x}, {y})")
    diff = x - y
    n = round(diff)
    if abs(diff - n) < 1e-9 and abs(n) <= _RATIO_PRODUCT_MAX:
        if n >= 0:
            return pochhammer(y, int(n))
        return 1.0 / pochhammer(x, int(-n))
    return math.exp(math.lgamma(x) - math.lgamma(y))


def pochhammer(c: float, k: int) -> float:
    """Shifted factorial c(c+1)...(c+k-1), with (c)_0 = 1.

    Computed as an exact product so that zero factors stay exactly zero.
    """
    if k < 0:
        raise ValueError(f"pochhammer order must be non-negative, got {k}")
    out = 1.0
    for j in range(k):
        out *= c + j
    return out


def real_binomial(c: float, k: int) -> float:
    """Generalized binomial coefficient c(c-1)...(c-k+1) / k!.

    Equals 1 at k = 0, matches the integer binomial exactly for integer
    c >= k >= 0, and is exactly zero whenever an integer 0 <= c < k makes a
    factor vanish.
    """
    if k < 0:
        raise ValueError(f"binomial order must be non-negative, got {k}")
    if k == 0:
        return 1.0
    if float(c).is_integer() and c >= 0:
        n = int(c)
        return float(math.comb(n, k)) if k <= n else 0.0
    out = 1.0
    for j in range(k):
        out *= (c - j) / (j + 1)
    return out


def _is_nonpositive_integer(v: float) -> bool:
    return v <= 0.0 and float(v).is_integer()


@dataclass(frozen=True)
class HypParams:
    """Arguments of the Gauss series F(a, b; c; x) restricted to 0 <= x < 1."""

    a: float
    b: float
    c: float
    x: float

    def __post_init__(self):
        if _is_nonpositive_integer(self.c):
            raise ValueError(f"series parameter c must not be a non-positive integer, got {self.c}")
        if not 0.0 <= self.x < 1.0:
            raise ValueError(f"series argument x must lie in [0, 1), got {self.x}")


def gauss_2f1_unit(p: HypParams) -> float:
    """Sum of the Gauss hypergeometric series at p.

    Terminating cases (a or b a non-positive integer) are summed exactly with
    no truncation error.  Otherwise terms are accumulated until the current
    term is below ``SERIES_RTOL`` relative to the partial sum and a geometric
    bound certifies that the discarded tail is below tolerance as well.

    Raises:
        NonConvergenceError: the term cap was reached first; the exception
            carries the partial sum.
    """
    a, b, c, x = p.a, p.b, p.c, p.x
    if x == 0.0:
        return 1.0
    total = 1.0
    term = 1.0
    for k in range(SERIES_MAX_TERMS):
        term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * x
        total += term
        if term == 0.0:
            return total  # terminating series: every later term vanishes
        if abs(term) <= SERIES_RTOL * (1.0 + abs(total)) and _tail_below_tol(
            a, b, c, x, k + 1, term, total
        ):
            return total
    raise NonConvergenceError(
        f"2F1 series did not converge within {SERIES_MAX_TERMS} terms",
        total,
        SERIES_MAX_TERMS,
    )


def _tail_below_tol(
    a: float, b: float, c: float, x: float, j: int, term: float, total: float
) -> bool:
    # From index j on, the term ratio x*(a+j)(b+j)/((c+j)(j+1)) is bounded by
    # q below, and q itself bounds every later ratio once all linear factors
    # are positive.  A geometric tail then certifies the truncation.
    if j <= max(abs(a), abs(b), abs(c)):
        return False
    q = x * (1.0 + max(a - c, 0.0) / (c + j)) * (1.0 + max(b - 1.0, 0.0) / (j + 1))
    if q >= 1.0:
        return False
    return abs(term) * q / (1.0 - q) <= SERIES_RTOL * (1.0 + abs(total))


def hyp2f1(a: float, b: float, c: float, x: float) -> float:
    """Convenience wrapper building HypParams from scalars."""
    return gauss_2f1_unit(HypParams(a, b, c, x))
