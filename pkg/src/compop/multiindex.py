"""Multi-index enumeration, exact multinomial coefficients, and the
falling-factorial decomposition of (m+k)!/m!.

All combinatorics here is exact arbitrary-precision integer arithmetic;
callers convert to floating point only in final expressions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Tuple

__all__ = [
    "FallingDecomposition",
    "MultiIndex",
    "enumerate_indices",
    "falling_decomposition",
    "falling_factorial",
    "index_factorial",
    "multinomial",
]

MultiIndex = Tuple[int, ...]


def index_factorial(alpha: Iterable[int]) -> int:
    """alpha! = product of the componentwise factorials."""
    out = 1
    for part in alpha:
        out *= math.factorial(part)
    return out


def enumerate_indices(dim: int, total: int) -> list[MultiIndex]:
    """All multi-indices of length ``dim`` with component sum ``total``.

    Order is graded lexicographic with the first coordinate largest first,
    e.g. (2,0), (1,1), (0,2); the list has length C(total+dim-1, dim-1).
    The order is fixed so that downstream sums and CSV outputs are
    reproducible bit for bit.
    """
    if dim < 1:
        raise ValueError(f"dimension must be at least 1, got {dim}")
    if total < 0:
        raise ValueError(f"degree must be non-negative, got {total}")
    if dim == 1:
        return [(total,)]
    out: list[MultiIndex] = []
    for first in range(total, -1, -1):
        for rest in enumerate_indices(dim - 1, total - first):
            out.append((first, *rest))
    return out


def multinomial(m: int, alpha: Iterable[int]) -> int:
    """Exact integer m!/alpha! for a multi-index with |alpha| = m."""
    alpha = tuple(alpha)
    if sum(alpha) != m:
        raise ValueError(f"multi-index has degree {sum(alpha)}, expected {m}")
    out = math.factorial(m)
    for part in alpha:
        out //= math.factorial(part)
    return out


def falling_factorial(m: int, j: int) -> int:
    """M_j(m) = m(m-1)...(m-j+1), with M_0 = 1."""
    out = 1
    for i in range(j):
        out *= m - i
    return out


@dataclass(frozen=True)
class FallingDecomposition:
    """Coefficients [a_0=1, a_1, ..., a_k] expressing the rising block
    (m+k)!/m! as sum_{i=0}^{k} a_i * M_{k-i}(m) for every integer m >= 0."""

    k: int
    coeffs: Tuple[int, ...]

    def evaluate(self, m: int) -> int:
        """Right-hand side of the decomposition at integer m, exactly."""
        return sum(a * falling_factorial(m, self.k - i) for i, a in enumerate(self.coeffs))


def falling_decomposition(k: int) -> FallingDecomposition:
    """Build the decomposition coefficients for a given k >= 1.

    Starts from [1, 1] at k = 1 and climbs one order at a time with the
    recurrence a'_i = a_i + (2k - i + 2) a_{i-1} and a'_{k+1} = (k+1) a_k,
    so a_k = k! and all interior coefficients are positive integers.
    """
    if k < 1:
        raise ValueError(f"order must be at least 1, got {k}")
    coeffs = [1, 1]
    for order in range(1, k):
        nxt = [1]
        for i in range(1, order + 1):
            nxt.append(coeffs[i] + (2 * order - i + 2) * coeffs[i - 1])
        nxt.append((order + 1) * coeffs[order])
        coeffs = nxt
    return FallingDecomposition(k, tuple(coeffs))
