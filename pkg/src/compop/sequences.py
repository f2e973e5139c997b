"""Finite-index quadratic forms and closed-form limits for the forward and
adjoint norms of a composition operator along the monomial-direction unit
sequence, unified by the space exponent t.

The index-n forward norm and adjoint form share the ratio factor R(t, n, k)
which tends to 1 as n grows; their limits are hypergeometric or generalized
binomial series in r^2, and the gap between the limits is strictly positive
for r > 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import maps
from .spaces import SpaceSpec
from .special_fn import (
    HypParams,
    NonConvergenceError,
    SERIES_RTOL,
    gauss_2f1_unit,
    pochhammer,
)

__all__ = [
    "SequenceReport",
    "adjoint_form",
    "adjoint_limit",
    "forward_limit",
    "forward_norm_sq",
    "gap_limit",
    "kernel_gap_lower",
    "limits_for_space",
    "ratio_factor",
    "report",
    "report_for_space",
]

MAX_TERMS = 10**6


@dataclass(frozen=True)
class SequenceReport:
    """Per-index record of the forward norm, adjoint form, their gap, and the
    three limit values."""

    t: float
    r: float
    n: int
    forward: float
    adjoint: float
    gap: float
    forward_limit: float
    adjoint_limit: float
    gap_limit: float


def _check_params(t: float, r: float) -> None:
    if not t > 0.0:
        raise ValueError(f"exponent t must be positive, got {t}")
    if not 0.0 <= r < 1.0:
        raise ValueError(f"radius r must lie in [0, 1), got {r}")


def ratio_factor(t: float, n: int, k: int) -> float:
    """R(t, n, k) = Gamma(t+n)Gamma(n+k+1) / (Gamma(n+1)Gamma(t+n+k)).

    Evaluated as a k-factor product (n+1+j)/(t+n+j), so no Gamma calls are
    made and the value stays accurate at n around 1e6.  Tends to 1 as n grows
    with k fixed.
    """
    _check_params(t, 0.0)
    if n < 0 or k < 0:
        raise ValueError(f"indices must be non-negative, got n={n}, k={k}")
    out = 1.0
    for j in range(k):
        out *= (n + 1 + j) / (t + n + j)
    return out


def _tail_ok(term: float, total: float, q: float) -> bool:
    # Geometric certificate: q bounds every later term ratio.
    return q < 1.0 and term * q / (1.0 - q) <= SERIES_RTOL * (1.0 + total)


def forward_norm_sq(t: float, r: float, n: int) -> float:
    """Squared norm of the composed basis function at index n:

        (1-r^2)^t sum_k (Gamma(t+k)/(k! Gamma(t)))^2 r^(2k) R(t, n, k).

    All terms are positive; the series is truncated at relative 1e-16 with a
    geometric tail certificate.
    """
    _check_params(t, r)
    if n < 0:
        raise ValueError(f"index must be non-negative, got {n}")
    x = r * r
    if x == 0.0:
        return 1.0
    coef = 1.0  # pochhammer(t, k) / k!
    ratio = 1.0  # R(t, n, k)
    xp = 1.0
    total = 1.0
    for k in range(1, MAX_TERMS):
        coef *= (t + k - 1) / k
        ratio *= (n + k) / (t + n + k - 1)
        xp *= x
        term = coef * coef * xp * ratio
        total += term
        if term <= SERIES_RTOL * (1.0 + total) and k > t:
            q = (
                x
                * (1.0 + max(t - 1.0, 0.0) / (k + 1)) ** 2
                * (1.0 + max(1.0 - t, 0.0) / (t + n + k))
            )
            if _tail_ok(term, total, q):
                return (1.0 - x) ** t * total
    raise NonConvergenceError(
        f"forward-norm series did not converge within {MAX_TERMS} terms",
        (1.0 - x) ** t * total,
        MAX_TERMS,
    )


def adjoint_form(t: float, r: float, n: int) -> float:
    """Toeplitz quadratic form at index n (the adjoint norm up to o(1)):

        (1-r^2)^(-t) sum_k binom(t, k)^2 r^(2k) R(t, n, k).

    The sum is finite (k <= t) for integer t and truncated at relative 1e-16
    otherwise.
    """
    _check_params(t, r)
    if n < 0:
        raise ValueError(f"index must be non-negative, got {n}")
    x = r * r
    if x == 0.0:
        return 1.0
    b = 1.0  # real_binomial(t, k)
    ratio = 1.0
    xp = 1.0
    total = 1.0
    for k in range(1, MAX_TERMS):
        b *= (t - k + 1) / k
        if b == 0.0:
            break  # integer t: the binomial series terminates
        ratio *= (n + k) / (t + n + k - 1)
        xp *= x
        term = b * b * xp * ratio
        total += term
        if term <= SERIES_RTOL * (1.0 + total) and k > t:
            q = x * (1.0 + max(1.0 - t, 0.0) / (t + n + k))
            if _tail_ok(term, total, q):
                break
    else:
        raise NonConvergenceError(
            f"adjoint-form series did not converge within {MAX_TERMS} terms",
            total / (1.0 - x) ** t,
            MAX_TERMS,
        )
    return total / (1.0 - x) ** t


def forward_limit(t: float, r: float) -> float:
    """Limit of the forward norms: (1-r^2)^(1-t) F(1-t, 1-t; 1; r^2).

    This is the Euler-transformed expression of (1-r^2)^t F(t, t; 1; r^2);
    the transformed series terminates for integer t and is numerically
    preferred in general.
    """
    _check_params(t, r)
    x = r * r
    return (1.0 - x) ** (1.0 - t) * gauss_2f1_unit(HypParams(1.0 - t, 1.0 - t, 1.0, x))


def adjoint_limit(t: float, r: float) -> float:
    """Limit of the adjoint forms: (1-r^2)^(-t) sum_k binom(t, k)^2 r^(2k)."""
    _check_params(t, r)
    x = r * r
    if x == 0.0:
        return 1.0
    b = 1.0
    xp = 1.0
    total = 1.0
    for k in range(1, MAX_TERMS):
        b *= (t - k + 1) / k
        if b == 0.0:
            break
        xp *= x
        term = b * b * xp
        total += term
        if term <= SERIES_RTOL * (1.0 + total) and k > t and _tail_ok(term, total, x):
            break
    else:
        raise NonConvergenceError(
            f"adjoint-limit series did not converge within {MAX_TERMS} terms",
            total / (1.0 - x) ** t,
            MAX_TERMS,
        )
    return total / (1.0 - x) ** t


def gap_limit(t: float, r: float) -> float:
    """Limit of (adjoint form - forward norm), directly from the rearranged
    series:

        (1-r^2)^(-t) [ 2t r^2 + sum_{k>=2} ((t-1)...(t-k+1)/k!)^2 2kt r^(2k) ]

    Strictly positive for r > 0 and zero at r = 0; numerically identical to
    adjoint_limit - forward_limit.
    """
    _check_params(t, r)
    x = r * r
    if x == 0.0:
        return 0.0
    total = 2.0 * t * x
    prod = 1.0  # (t-1)(t-2)...(t-k+1), k-1 factors
    kfac = 1.0
    xp = x
    for k in range(2, MAX_TERMS):
        prod *= t - k + 1
        if prod == 0.0:
            break  # integer t: the product vanishes from k = t+1 on
        kfac *= k
        xp *= x
        coef = prod / kfac
        term = coef * coef * 2.0 * k * t * xp
        total += term
        if term <= SERIES_RTOL * (1.0 + total) and k > t:
            q = x * (1.0 + 1.0 / k)
            if _tail_ok(term, total, q):
                break
    else:
        raise NonConvergenceError(
            f"gap-limit series did not converge within {MAX_TERMS} terms",
            total / (1.0 - x) ** t,
            MAX_TERMS,
        )
    return total / (1.0 - x) ** t


def limits_for_space(space: SpaceSpec, r: float) -> tuple[float, float, float]:
    """(forward, adjoint, gap) limit triple for a space, through its exponent."""
    t = space.t
    return forward_limit(t, r), adjoint_limit(t, r), gap_limit(t, r)


def report(t: float, r: float, n: int) -> SequenceReport:
    """Full per-index record at (t, r, n)."""
    forward = forward_norm_sq(t, r, n)
    adjoint = adjoint_form(t, r, n)
    return SequenceReport(
        t=t,
        r=r,
        n=n,
        forward=forward,
        adjoint=adjoint,
        gap=adjoint - forward,
        forward_limit=forward_limit(t, r),
        adjoint_limit=adjoint_limit(t, r),
        gap_limit=gap_limit(t, r),
    )


def report_for_space(space: SpaceSpec, r: float, n: int) -> SequenceReport:
    return report(space.t, r, n)


def kernel_gap_lower(phi: maps.LinearFractionalMap, space: SpaceSpec, p) -> float:
    """Lower bound for the self-commutator quadratic form at the normalized
    reproducing kernel of the interior point p:

        ((1-|p|^2)/(1-|phi(p)|^2))^t - |g(p)|^2 ||h||_inf^2 ((1-|p|^2)/(1-|sigma(p)|^2))^t

    with sigma, g, h the adjoint symbols of the map and ||h||_inf computed in
    closed form as (|C| + |d|)^t.
    """
    p = np.asarray(p, dtype=complex).reshape(-1)
    t = space.t
    p2 = float(np.vdot(p, p).real)
    if p2 >= 1.0:
        raise ValueError("p must lie strictly inside the ball")
    symbols = maps.adjoint_map(phi, space)
    phi_p = maps.evaluate(phi, p)
    sigma_p = maps.evaluate(symbols.sigma, p)
    phi_p2 = float(np.vdot(phi_p, phi_p).real)
    sigma_p2 = float(np.vdot(sigma_p, sigma_p).real)
    if phi_p2 >= 1.0 or sigma_p2 >= 1.0:
        raise ValueError("phi(p) and sigma(p) must lie strictly inside the ball")
    first = ((1.0 - p2) / (1.0 - phi_p2)) ** t
    second = (
        abs(symbols.g(p)) ** 2
        * symbols.h_sup_norm() ** 2
        * ((1.0 - p2) / (1.0 - sigma_p2)) ** t
    )
    return first - second
