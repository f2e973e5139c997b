"""Independent brute-force validators.

Exact multi-index sphere integrals, exact Toeplitz quadratic forms assembled
from projection coefficients and monomial norms, and seeded Monte-Carlo
quadrature on the sphere.  Nothing here calls the closed-form series in
``sequences``; agreement between the two is a genuine two-path check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .multiindex import enumerate_indices, multinomial
from .spaces import SpaceSpec, monomial_norm_sq, projection_coeff
from .special_fn import SERIES_RTOL, pochhammer, real_binomial

__all__ = [
    "OracleResult",
    "appendix_bound",
    "monte_carlo_sphere",
    "sphere_inner_product_exact",
    "toeplitz_form_exact",
]

TERM_GUARD = 10**8
IMAG_TOL = 1e-12
_MAX_BINOMIAL_ORDER = 400


@dataclass(frozen=True)
class OracleResult:
    """Exact or sampled value of an integral, with the bound it must respect
    (None when no bound applies)."""

    value: float
    bound: Optional[float]
    n_terms: int
    method: str  # "exact_sum" or "monte_carlo"


def _guard(N: int, k: int, m: int) -> None:
    work = math.comb(m + N - 1, N - 1) ** 2 * math.comb(k + N - 1, N - 1) ** 2
    if work > TERM_GUARD:
        raise ValueError(
            f"combinatorial guard exceeded: {work} > {TERM_GUARD} index pairs for N={N}, k={k}, m={m}"
        )


def appendix_bound(N: int, k: int, m: int, a_norm: float) -> float:
    """Upper bound (N-1)!(m+k)!/(N-1+m+k)! * |a|^(2k) for the exact sphere
    integral below; sharp when the second direction is parallel to a."""
    ratio = math.factorial(N - 1) * math.factorial(m + k)
    return ratio / math.factorial(N - 1 + m + k) * a_norm ** (2 * k)


def _power(vec: np.ndarray, idx: tuple[int, ...]) -> complex:
    out = 1.0 + 0.0j
    for v, e in zip(vec, idx):
        if e:
            out *= v**e
    return out


def sphere_inner_product_exact(N: int, k: int, m: int, a, eta) -> OracleResult:
    """Exact value of the sphere integral of |<zeta, a>^k <zeta, eta>^m|^2.

    Expands both inner products into multi-index sums and applies the exact
    monomial sphere integrals: the surviving terms pair indices (gamma, delta)
    of degree k with (alpha, beta) of degree m subject to
    gamma + alpha = delta + beta.  Coefficients are exact integers, and the
    accumulation order (graded-lex) is fixed for reproducibility.
    """
    a = np.asarray(a, dtype=complex).reshape(-1)
    eta = np.asarray(eta, dtype=complex).reshape(-1)
    if a.size != N or eta.size != N:
        raise ValueError(f"direction vectors must have length {N}")
    if abs(float(np.linalg.norm(eta)) - 1.0) > 1e-12:
        raise ValueError("eta must be a unit vector")
    if k < 0 or m < 0:
        raise ValueError("powers must be non-negative")
    _guard(N, k, m)

    gammas = [
        (idx, multinomial(k, idx), _power(np.conj(a), idx)) for idx in enumerate_indices(N, k)
    ]
    deltas = [(idx, multinomial(k, idx), _power(a, idx)) for idx in enumerate_indices(N, k)]
    alphas = [
        (idx, multinomial(m, idx), _power(np.conj(eta), idx)) for idx in enumerate_indices(N, m)
    ]
    beta_data = {idx: (multinomial(m, idx), _power(eta, idx)) for idx in enumerate_indices(N, m)}

    meas_den = math.factorial(N - 1 + m + k)
    fac_head = math.factorial(N - 1)
    total = 0.0 + 0.0j
    n_terms = 0
    for gamma, cg, pow_g in gammas:
        for delta, cd, pow_d in deltas:
            for alpha, ca, pow_a in alphas:
                beta = tuple(g + al - de for g, al, de in zip(gamma, alpha, delta))
                if any(v < 0 for v in beta):
                    continue
                cb, pow_b = beta_data[beta]
                top_fac = 1
                for g, al in zip(gamma, alpha):
                    top_fac *= math.factorial(g + al)
                weight = (cg * cd * ca * cb * fac_head * top_fac) / meas_den
                total += weight * pow_g * pow_d * pow_a * pow_b
                n_terms += 1
    if abs(total.imag) > IMAG_TOL * max(1.0, abs(total.real)):
        raise ArithmeticError(
            f"exact sphere sum has non-negligible imaginary part {total.imag}"
        )
    bound = appendix_bound(N, k, m, float(np.linalg.norm(a)))
    return OracleResult(total.real, bound, n_terms, "exact_sum")


def toeplitz_form_exact(space: SpaceSpec, a, m: int) -> float:
    """Brute-force Toeplitz quadratic form along the monomial-direction unit
    sequence, for the involution symbol

        f(z) = (|1 - <z, a>|^2 / (1 - |a|^2))^t.

    The two binomial expansions of the symbol are crossed with the monomial
    expansion of <z, a>^m; each surviving term is resolved by a projection
    coefficient and a monomial norm.  The binomial order sum is finite for
    integer t and truncated at relative 1e-16 otherwise.
    """
    a = np.asarray(a, dtype=complex).reshape(-1)
    N = space.N
    if a.size != N:
        raise ValueError(f"base point must have length {N}")
    r2 = float(np.vdot(a, a).real)
    if not 0.0 < r2 < 1.0:
        raise ValueError("base point must satisfy 0 < |a| < 1")
    if m < 0:
        raise ValueError("index must be non-negative")
    t = space.t
    a_conj = np.conj(a)
    amp = pochhammer(t, m) / math.factorial(m)  # squared normalization of e_m
    alphas = [
        (idx, multinomial(m, idx), _power(a_conj, idx)) for idx in enumerate_indices(N, m)
    ]
    beta_data = {
        idx: (multinomial(m, idx), _power(a, idx), monomial_norm_sq(space, idx))
        for idx in enumerate_indices(N, m)
    }

    total = 0.0
    small_streak = 0
    for k in range(_MAX_BINOMIAL_ORDER + 1):
        b = real_binomial(t, k)
        if b == 0.0:
            break  # integer t: expansion terminates at k = t
        _guard(N, k, m)
        gammas = [
            (idx, multinomial(k, idx), _power(a_conj, idx)) for idx in enumerate_indices(N, k)
        ]
        deltas = [(idx, multinomial(k, idx), _power(a, idx)) for idx in enumerate_indices(N, k)]
        inner = 0.0 + 0.0j
        for gamma, cg, pow_g in gammas:
            for alpha, ca, pow_a in alphas:
                top = tuple(g + al for g, al in zip(gamma, alpha))
                for delta, cd, pow_d in deltas:
                    beta = tuple(tp - de for tp, de in zip(top, delta))
                    if any(v < 0 for v in beta):
                        continue
                    cb, pow_b, norm_b = beta_data[beta]
                    proj = projection_coeff(space, top, delta)
                    inner += (
                        (cg * cd * ca * cb)
                        * pow_g
                        * pow_a
                        * pow_d
                        * pow_b
                        * proj
                        * norm_b
                    )
        if abs(inner.imag) > IMAG_TOL * max(1.0, abs(inner.real)):
            raise ArithmeticError(
                f"Toeplitz expansion term k={k} has non-negligible imaginary part {inner.imag}"
            )
        term = b * b * inner.real / r2**m * amp
        total += term
        if k >= 1 and abs(term) <= SERIES_RTOL * (1.0 + abs(total)):
            small_streak += 1
            if small_streak >= 2:
                break
        else:
            small_streak = 0
    else:
        raise ArithmeticError(
            f"Toeplitz expansion did not settle within {_MAX_BINOMIAL_ORDER} binomial orders"
        )
    return total / (1.0 - r2) ** t


def monte_carlo_sphere(
    N: int,
    integrand: Callable[[np.ndarray], np.ndarray],
    samples: int,
    seed: int,
) -> tuple[float, float]:
    """Sample mean and standard error of an integrand over the unit sphere.

    Points are normalized N-dimensional complex standard Gaussians from a
    PCG64 generator, so results are deterministic given (seed, samples).
    ``integrand`` receives the full (samples, N) complex array and must
    return a real array of length ``samples``.
    """
    if samples < 10**3:
        raise ValueError(f"at least 1000 samples required, got {samples}")
    rng = np.random.default_rng(seed)
    raw = rng.standard_normal((samples, 2 * N))
    pts = raw[:, :N] + 1j * raw[:, N:]
    pts /= np.linalg.norm(pts, axis=1)[:, None]
    vals = np.asarray(integrand(pts), dtype=float).reshape(-1)
    if vals.size != samples:
        raise ValueError(
            f"integrand returned {vals.size} values for {samples} sample points"
        )
    estimate = float(vals.mean())
    stderr = float(vals.std(ddof=1) / math.sqrt(samples))
    return estimate, stderr
