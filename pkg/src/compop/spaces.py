"""Space parameters, exact monomial norms and sphere integrals, projection
coefficients, and the slice-weight translation between balls of different
dimension."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional

from .special_fn import gamma_ratio

__all__ = [
    "SpaceSpec",
    "exponent_t",
    "monomial_norm_sq",
    "projection_coeff",
    "slice_weight",
    "sphere_monomial_integral",
]


@dataclass(frozen=True)
class SpaceSpec:
    """Hardy space of the N-ball (``weight is None``) or the weighted Bergman
    space with radial weight exponent s > -1.

    The derived exponent ``t`` (N for Hardy, N+s+1 for Bergman) is the single
    parameter every limit formula depends on.
    """

    N: int
    weight: Optional[float] = None

    def __post_init__(self):
        if self.N < 1:
            raise ValueError(f"dimension must be a positive integer, got {self.N}")
        if self.weight is not None and not self.weight > -1.0:
            raise ValueError(f"Bergman weight must exceed -1, got {self.weight}")

    @classmethod
    def hardy(cls, N: int) -> "SpaceSpec":
        return cls(N, None)

    @classmethod
    def bergman(cls, N: int, s: float) -> "SpaceSpec":
        return cls(N, float(s))

    @property
    def is_hardy(self) -> bool:
        return self.weight is None

    @property
    def t(self) -> float:
        if self.is_hardy:
            return float(self.N)
        return self.N + self.weight + 1.0

    def describe(self) -> str:
        if self.is_hardy:
            return f"hardy(N={self.N})"
        return f"bergman(N={self.N}, s={self.weight:g})"


def exponent_t(space: SpaceSpec) -> float:
    """Kernel/adjoint exponent of the space: N for Hardy, N+s+1 for Bergman."""
    return space.t


def _check_index(space: SpaceSpec, alpha: Iterable[int]) -> tuple[int, ...]:
    alpha = tuple(int(v) for v in alpha)
    if len(alpha) != space.N:
        raise ValueError(f"multi-index has length {len(alpha)}, expected {space.N}")
    if any(v < 0 for v in alpha):
        raise ValueError(f"multi-index parts must be non-negative, got {alpha}")
    return alpha


def _index_factorial(alpha: tuple[int, ...]) -> int:
    out = 1
    for part in alpha:
        out *= math.factorial(part)
    return out


def monomial_norm_sq(space: SpaceSpec, alpha: Iterable[int]) -> float:
    """Squared norm of the monomial z^alpha in the given space.

    Hardy: (N-1)! alpha! / (N-1+|alpha|)!, evaluated in exact integers with a
    single final division.  Bergman(s): alpha! Gamma(N+s+1) / Gamma(N+s+1+m),
    via the stable Gamma-ratio.
    """
    alpha = _check_index(space, alpha)
    m = sum(alpha)
    if space.is_hardy:
        num = math.factorial(space.N - 1) * _index_factorial(alpha)
        return num / math.factorial(space.N - 1 + m)
    base = space.N + space.weight + 1.0
    return _index_factorial(alpha) * gamma_ratio(base, base + m)


def sphere_monomial_integral(N: int, alpha: Iterable[int]) -> float:
    """Integral of |zeta^alpha|^2 over the unit sphere of C^N against the
    normalized surface measure: (N-1)! alpha! / (N-1+|alpha|)!."""
    return monomial_norm_sq(SpaceSpec.hardy(N), alpha)


def projection_coeff(space: SpaceSpec, top: Iterable[int], bottom: Iterable[int]) -> float:
    """Scalar c with P(conj(z)^bottom z^top) = c * z^(top-bottom).

    Zero unless bottom <= top componentwise.  Hardy uses the factorial form,
    Bergman the Gamma-ratio form; both reduce to

        c = top!/(top-bottom)! * ratio(t + |top| - |bottom|, t + |top|)

    in the respective exact arithmetic.
    """
    top = _check_index(space, top)
    bottom = _check_index(space, bottom)
    if any(b > t for t, b in zip(top, bottom)):
        return 0.0
    mt = sum(top)
    mb = sum(bottom)
    shift = 1
    for t_i, b_i in zip(top, bottom):
        shift *= math.factorial(t_i) // math.factorial(t_i - b_i)
    if space.is_hardy:
        num = math.factorial(space.N + mt - mb - 1) * shift
        return num / math.factorial(space.N + mt - 1)
    base = space.N + space.weight + 1.0
    return shift * gamma_ratio(base + mt - mb, base + mt)


def slice_weight(space: SpaceSpec, k: int) -> SpaceSpec:
    """Space on the k-ball carrying the same integrals for functions that
    depend only on the first k coordinates.

    Hardy on the N-ball restricts to Bergman(N-k-1) on the k-ball; Bergman(s)
    restricts to Bergman(N-k+s).  In both cases the exponent t is preserved.
    """
    if not 1 <= k < space.N:
        raise ValueError(f"slice dimension must satisfy 1 <= k < {space.N}, got {k}")
    if space.is_hardy:
        return SpaceSpec.bergman(k, float(space.N - k - 1))
    return SpaceSpec.bergman(k, space.N - k + space.weight)
