"""Linear fractional self-maps of the complex unit ball.

Covers evaluation, the adjoint (Cowen) symbols, composition and iteration
through the associated projective matrix, Jacobians, interior fixed points,
the unitary-space dimension, sup-norm estimation on the sphere, the
block-structure detector for invariant slices, and the map-spec JSON format
used by the CLI and test fixtures.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy import optimize

from .spaces import SpaceSpec

__all__ = [
    "CowenSymbols",
    "LinearFractionalMap",
    "MapSpecError",
    "adjoint_map",
    "compose",
    "evaluate",
    "interior_fixed_points",
    "inverse_image_of_zero",
    "involution",
    "iterate",
    "jacobian",
    "load_map",
    "map_from_json_dict",
    "map_to_json_dict",
    "projective_distance",
    "self_map_check",
    "slice_restriction_check",
    "sup_norm",
    "unitary_space_dim",
]

BLOCK_TOL = 1e-12
BOUNDARY_TOL = 1e-10
FIXED_POINT_TOL = 1e-10
UNIT_CIRCLE_TOL = 1e-8
_INTERIOR_MARGIN = 1e-10
_GRID_SEED = 0x5FE11


class MapSpecError(ValueError):
    """Raised when map-spec JSON is malformed; the message names the field."""


@dataclass
class LinearFractionalMap:
    """phi(z) = (A z + B) / (<z, C> + d), with <z, C> = sum_i z_i conj(C_i).

    Values are treated as immutable after construction; comparisons between
    maps are projective (the associated matrix is defined up to a scalar).
    """

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    d: complex

    def __post_init__(self):
        self.A = np.array(self.A, dtype=complex)
        self.B = np.array(self.B, dtype=complex).reshape(-1)
        self.C = np.array(self.C, dtype=complex).reshape(-1)
        self.d = complex(self.d)
        n = self.B.size
        if self.A.shape != (n, n):
            raise ValueError(f"matrix block has shape {self.A.shape}, expected ({n}, {n})")
        if self.C.size != n:
            raise ValueError(f"denominator vector has length {self.C.size}, expected {n}")

    @property
    def N(self) -> int:
        return self.B.size

    @property
    def matrix(self) -> np.ndarray:
        """Associated (N+1)x(N+1) matrix [[A, B], [C*, d]] acting projectively."""
        N = self.N
        M = np.zeros((N + 1, N + 1), dtype=complex)
        M[:N, :N] = self.A
        M[:N, N] = self.B
        M[N, :N] = np.conj(self.C)
        M[N, N] = self.d
        return M

    @classmethod
    def from_matrix(cls, M: np.ndarray) -> "LinearFractionalMap":
        M = np.asarray(M, dtype=complex)
        if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] < 2:
            raise ValueError(f"associated matrix must be square of size >= 2, got {M.shape}")
        N = M.shape[0] - 1
        return cls(M[:N, :N], M[:N, N], np.conj(M[N, :N]), M[N, N])

    @classmethod
    def identity(cls, N: int) -> "LinearFractionalMap":
        return cls(np.eye(N, dtype=complex), np.zeros(N), np.zeros(N), 1.0)

    @classmethod
    def unitary(cls, U: np.ndarray) -> "LinearFractionalMap":
        U = np.asarray(U, dtype=complex)
        return cls(U, np.zeros(U.shape[0]), np.zeros(U.shape[0]), 1.0)

    def __call__(self, z) -> np.ndarray:
        return evaluate(self, z)


def evaluate(phi: LinearFractionalMap, z) -> np.ndarray:
    """Value of the map at a point of C^N with non-vanishing denominator."""
    z = np.asarray(z, dtype=complex).reshape(-1)
    if z.size != phi.N:
        raise ValueError(f"point has dimension {z.size}, expected {phi.N}")
    den = complex(np.vdot(phi.C, z)) + phi.d
    if den == 0:
        raise ZeroDivisionError("map denominator vanishes at the given point")
    return (phi.A @ z + phi.B) / den


def _evaluate_rows(phi: LinearFractionalMap, Z: np.ndarray) -> np.ndarray:
    """Vectorized evaluation on an (n, N) array of points."""
    den = Z @ np.conj(phi.C) + phi.d
    num = Z @ phi.A.T + phi.B
    return num / den[:, None]


def involution(a) -> LinearFractionalMap:
    """Ball automorphism interchanging the interior point a and 0.

    Equal to its own inverse; the denominator is 1 - <z, a>, so the stored
    data is A = -s I - (1-s) a a*/|a|^2 with s = sqrt(1-|a|^2), B = a,
    C = -a, d = 1 (and plain negation when a = 0).
    """
    a = np.asarray(a, dtype=complex).reshape(-1)
    norm2 = float(np.vdot(a, a).real)
    if norm2 >= 1.0:
        raise ValueError("involution base point must lie strictly inside the ball")
    N = a.size
    if norm2 == 0.0:
        return LinearFractionalMap(-np.eye(N, dtype=complex), np.zeros(N), np.zeros(N), 1.0)
    s = math.sqrt(1.0 - norm2)
    A = -s * np.eye(N, dtype=complex) - ((1.0 - s) / norm2) * np.outer(a, np.conj(a))
    return LinearFractionalMap(A, a.copy(), -a.copy(), 1.0)


@dataclass
class CowenSymbols:
    """Adjoint-formula data: the adjoint of the composition operator factors
    as T_g C_sigma T_h^* with

        g(z) = (<z, g_vector> + g_scalar)^(-t)
        h(z) = (<z, h_vector> + h_scalar)^(+t)

    and t the exponent of the underlying space.
    """

    sigma: LinearFractionalMap
    g_vector: np.ndarray
    g_scalar: complex
    h_vector: np.ndarray
    h_scalar: complex
    t: float

    def g(self, z) -> complex:
        z = np.asarray(z, dtype=complex).reshape(-1)
        base = complex(np.vdot(self.g_vector, z)) + self.g_scalar
        return base ** (-self.t)

    def h(self, z) -> complex:
        z = np.asarray(z, dtype=complex).reshape(-1)
        base = complex(np.vdot(self.h_vector, z)) + self.h_scalar
        return base**self.t

    def h_sup_norm(self) -> float:
        """Exact sup of |h| over the closed ball: (|C| + |d|)^t, attained at
        the boundary point aligned with C and the phase of d."""
        return (float(np.linalg.norm(self.h_vector)) + abs(self.h_scalar)) ** self.t


def adjoint_map(phi: LinearFractionalMap, space: SpaceSpec) -> CowenSymbols:
    """Adjoint map sigma(z) = (A* z - C) / (<z, -B> + conj(d)) together with
    the Toeplitz symbols g, h and the space exponent t."""
    sigma = LinearFractionalMap(
        phi.A.conj().T, -phi.C.copy(), -phi.B.copy(), np.conj(phi.d)
    )
    return CowenSymbols(
        sigma=sigma,
        g_vector=-phi.B.copy(),
        g_scalar=complex(np.conj(phi.d)),
        h_vector=phi.C.copy(),
        h_scalar=phi.d,
        t=space.t,
    )


def compose(phi: LinearFractionalMap, psi: LinearFractionalMap) -> LinearFractionalMap:
    """phi after psi, via the product of the associated matrices.

    The result is a projective representative; no rescaling is applied.
    """
    if phi.N != psi.N:
        raise ValueError(f"dimension mismatch: {phi.N} vs {psi.N}")
    return LinearFractionalMap.from_matrix(phi.matrix @ psi.matrix)


def iterate(phi: LinearFractionalMap, n: int) -> LinearFractionalMap:
    """n-th iterate (n >= 1) by repeated matrix products."""
    if n < 1:
        raise ValueError(f"iterate count must be at least 1, got {n}")
    out = phi
    for _ in range(n - 1):
        out = compose(out, phi)
    return out


def projective_distance(phi: LinearFractionalMap, psi: LinearFractionalMap) -> float:
    """Scale-invariant Frobenius distance between associated matrices."""
    M1 = phi.matrix
    M2 = psi.matrix
    M1 = M1 / np.linalg.norm(M1)
    M2 = M2 / np.linalg.norm(M2)
    inner = np.vdot(M2, M1)
    if abs(inner) == 0.0:
        return math.sqrt(2.0)
    return float(np.linalg.norm(M1 - (inner / abs(inner)) * M2))


def jacobian(phi: LinearFractionalMap, z) -> np.ndarray:
    """Complex-linear differential at z:
    A/(den) - (A z + B) C* / den^2 with den = <z, C> + d."""
    z = np.asarray(z, dtype=complex).reshape(-1)
    den = complex(np.vdot(phi.C, z)) + phi.d
    if den == 0:
        raise ZeroDivisionError("map denominator vanishes at the given point")
    num = phi.A @ z + phi.B
    return phi.A / den - np.outer(num, np.conj(phi.C)) / den**2


def _is_identity(phi: LinearFractionalMap) -> bool:
    return projective_distance(phi, LinearFractionalMap.identity(phi.N)) < 1e-12


def interior_fixed_points(phi: LinearFractionalMap) -> list[np.ndarray]:
    """Fixed points of the map strictly inside the ball.

    Candidates come from eigenvectors (v, w) of the associated matrix with
    w != 0, as v/w; they are filtered by |z| < 1 - 1e-10, verified against
    the map, and clustered to 1e-10.  The identity map is rejected.
    """
    if _is_identity(phi):
        raise ValueError("identity map fixes every point of the ball")
    M = phi.matrix
    _, vecs = np.linalg.eig(M)
    points: list[np.ndarray] = []
    for col in vecs.T:
        w = col[-1]
        if abs(w) <= 1e-12 * np.linalg.norm(col):
            continue
        z = col[:-1] / w
        if float(np.linalg.norm(z)) >= 1.0 - _INTERIOR_MARGIN:
            continue
        try:
            residual = float(np.linalg.norm(evaluate(phi, z) - z))
        except ZeroDivisionError:
            continue
        if residual > FIXED_POINT_TOL:
            continue
        points.append(z)
    deduped: list[np.ndarray] = []
    for z in sorted(points, key=lambda v: tuple(np.concatenate([v.real, v.imag]))):
        if all(np.linalg.norm(z - other) > FIXED_POINT_TOL for other in deduped):
            deduped.append(z)
    return deduped


def unitary_space_dim(phi: LinearFractionalMap, z0) -> int:
    """Total algebraic multiplicity of differential eigenvalues on the unit
    circle at the fixed point z0."""
    z0 = np.asarray(z0, dtype=complex).reshape(-1)
    if float(np.linalg.norm(evaluate(phi, z0) - z0)) > 1e-8:
        raise ValueError("z0 is not a fixed point of the map")
    lam = np.linalg.eigvals(jacobian(phi, z0))
    return int(np.sum(np.abs(np.abs(lam) - 1.0) < UNIT_CIRCLE_TOL))


def _canonical_directions(N: int) -> np.ndarray:
    eye = np.eye(N, dtype=complex)
    return np.concatenate([eye, -eye, 1j * eye], axis=0)


def _sphere_grid(N: int, count: int) -> np.ndarray:
    """Deterministic quasi-uniform unit vectors: the coordinate directions
    plus points from a fixed-seed generator."""
    rng = np.random.default_rng(_GRID_SEED)
    extra = max(count, 1)
    raw = rng.standard_normal((extra, 2 * N))
    pts = raw[:, :N] + 1j * raw[:, N:]
    pts = np.concatenate([_canonical_directions(N), pts], axis=0)
    norms = np.linalg.norm(pts, axis=1)
    return pts / norms[:, None]


def sup_norm(phi: LinearFractionalMap, grid_density: int = 512) -> float:
    """Estimated sup of |phi| over the unit sphere.

    A deterministic grid of at least ``grid_density`` directions is scanned
    and the best one is refined by derivative-free local ascent on the real
    parametrization of the sphere.  The value is advisory (hypothesis checks
    only) and never enters a formula.
    """
    N = phi.N
    grid = _sphere_grid(N, grid_density)
    vals = np.linalg.norm(_evaluate_rows(phi, grid), axis=1)
    best = int(np.argmax(vals))
    best_val = float(vals[best])

    def negated(x: np.ndarray) -> float:
        vec = x[:N] + 1j * x[N:]
        nrm = np.linalg.norm(vec)
        if nrm < 1e-9:
            return 0.0
        zeta = vec / nrm
        den = complex(np.vdot(phi.C, zeta)) + phi.d
        if den == 0:
            return 0.0
        return -float(np.linalg.norm((phi.A @ zeta + phi.B) / den))

    x0 = np.concatenate([grid[best].real, grid[best].imag])
    res = optimize.minimize(
        negated,
        x0,
        method="Nelder-Mead",
        options={"xatol": 1e-12, "fatol": 1e-14, "maxiter": 5000},
    )
    return max(best_val, -float(res.fun))


def self_map_check(phi: LinearFractionalMap, samples: int = 256, seed: int = 7) -> bool:
    """Spot check that phi maps the closed ball into itself: the denominator
    must be zero-free (|C| < |d|) and |phi| <= 1 + 1e-12 on seeded boundary
    points."""
    if float(np.linalg.norm(phi.C)) >= abs(phi.d):
        return False
    rng = np.random.default_rng(seed)
    raw = rng.standard_normal((samples, 2 * phi.N))
    pts = raw[:, : phi.N] + 1j * raw[:, phi.N :]
    pts = pts / np.linalg.norm(pts, axis=1)[:, None]
    pts = np.concatenate([_canonical_directions(phi.N), pts], axis=0)
    vals = np.linalg.norm(_evaluate_rows(phi, pts), axis=1)
    return bool(np.max(vals) <= 1.0 + 1e-12)


def inverse_image_of_zero(phi: LinearFractionalMap) -> Optional[np.ndarray]:
    """Solve phi(a) = 0, i.e. A a = -B; None when A is singular."""
    try:
        a = np.linalg.solve(phi.A, -phi.B)
    except np.linalg.LinAlgError:
        return None
    if not np.all(np.isfinite(a)):
        return None
    return a


def _is_unitary_map(phi: LinearFractionalMap, tol: float = 1e-8) -> bool:
    scale = abs(phi.d)
    if scale == 0.0:
        return False
    if float(np.linalg.norm(phi.B)) > tol * scale or float(np.linalg.norm(phi.C)) > tol * scale:
        return False
    U = phi.A / phi.d
    return float(np.linalg.norm(U.conj().T @ U - np.eye(phi.N))) <= tol


def _is_nonrotation_automorphism(phi: LinearFractionalMap) -> bool:
    # Automorphisms factor as U . involution(a) with a the preimage of 0;
    # composing with the involution must therefore leave a unitary map.
    a = inverse_image_of_zero(phi)
    if a is None or float(np.linalg.norm(a)) >= 1.0:
        return False
    if float(np.linalg.norm(a)) <= 1e-12:
        return False  # rotation: excluded by definition
    if not _is_unitary_map(compose(phi, involution(a))):
        return False
    boundary = _sphere_grid(phi.N, 64)
    vals = np.linalg.norm(_evaluate_rows(phi, boundary), axis=1)
    return bool(np.max(np.abs(vals - 1.0)) <= BOUNDARY_TOL)


def slice_restriction_check(
    phi: LinearFractionalMap, k: int
) -> Optional[tuple[LinearFractionalMap, bool]]:
    """Detect the invariant-slice block pattern for the first k coordinates.

    After normalizing the denominator constant to 1, the matrix block must be
    diagonal across the split and the last N-k entries of the numerator
    offset and denominator vector must vanish (to 1e-12).  Returns the
    restricted map on the k-ball and a flag marking it a non-rotation
    automorphism; None when the structure is absent.
    """
    N = phi.N
    if not 1 <= k < N:
        raise ValueError(f"slice dimension must satisfy 1 <= k < {N}, got {k}")
    if phi.d == 0:
        return None
    A = phi.A / phi.d
    B = phi.B / phi.d
    C = phi.C / np.conj(phi.d)
    scale = max(1.0, float(np.abs(A).max()), float(np.abs(B).max()), float(np.abs(C).max()))
    off = max(
        float(np.abs(A[k:, :k]).max(initial=0.0)),
        float(np.abs(A[:k, k:]).max(initial=0.0)),
        float(np.abs(B[k:]).max(initial=0.0)),
        float(np.abs(C[k:]).max(initial=0.0)),
    )
    if off > BLOCK_TOL * scale:
        return None
    reduced = LinearFractionalMap(A[:k, :k], B[:k], C[:k], 1.0)
    return reduced, _is_nonrotation_automorphism(reduced)


# Map-spec JSON: complex numbers are always [re, im] pairs.


def _complex_from_json(value, field: str) -> complex:
    if (
        not isinstance(value, (list, tuple))
        or len(value) != 2
        or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)
    ):
        raise MapSpecError(f"field '{field}': expected a [re, im] pair, got {value!r}")
    return complex(value[0], value[1])


def map_from_json_dict(data: dict) -> LinearFractionalMap:
    if not isinstance(data, dict):
        raise MapSpecError("map spec must be a JSON object")
    for key in ("N", "A", "B", "C", "d"):
        if key not in data:
            raise MapSpecError(f"field '{key}': missing")
    N = data["N"]
    if not isinstance(N, int) or N < 1:
        raise MapSpecError(f"field 'N': expected a positive integer, got {N!r}")
    A_rows = data["A"]
    if not isinstance(A_rows, list) or len(A_rows) != N:
        raise MapSpecError(f"field 'A': expected {N} rows")
    A = np.zeros((N, N), dtype=complex)
    for i, row in enumerate(A_rows):
        if not isinstance(row, list) or len(row) != N:
            raise MapSpecError(f"field 'A': row {i} must have {N} entries")
        for j, entry in enumerate(row):
            A[i, j] = _complex_from_json(entry, f"A[{i}][{j}]")
    vectors = {}
    for key in ("B", "C"):
        entries = data[key]
        if not isinstance(entries, list) or len(entries) != N:
            raise MapSpecError(f"field '{key}': expected {N} entries")
        vectors[key] = np.array(
            [_complex_from_json(entry, f"{key}[{i}]") for i, entry in enumerate(entries)]
        )
    d = _complex_from_json(data["d"], "d")
    return LinearFractionalMap(A, vectors["B"], vectors["C"], d)


def map_to_json_dict(phi: LinearFractionalMap) -> dict:
    pair = lambda c: [float(np.real(c)), float(np.imag(c))]
    return {
        "N": phi.N,
        "A": [[pair(v) for v in row] for row in phi.A],
        "B": [pair(v) for v in phi.B],
        "C": [pair(v) for v in phi.C],
        "d": pair(phi.d),
    }


def load_map(path) -> LinearFractionalMap:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise MapSpecError(f"invalid JSON in map spec: {exc}") from exc
    return map_from_json_dict(data)


def dump_map(phi: LinearFractionalMap, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(map_to_json_dict(phi), fh, indent=2)
        fh.write("\n")
