"""Verdict assembly for essential-normality questions.

A verdict is a certificate of a sufficient condition, never a decision
procedure: Inconclusive is an honest third state.  NotEssentiallyNormal is
only ever emitted with a strictly positive gap or kernel bound.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import maps, sequences
from .spaces import SpaceSpec, slice_weight

__all__ = [
    "ESSENTIALLY_NORMAL",
    "INCONCLUSIVE",
    "NOT_ESSENTIALLY_NORMAL",
    "Verdict",
    "automorphism_verdict",
    "iterate_sup_norms",
    "kernel_bound_scan",
    "slice_verdict",
]

ESSENTIALLY_NORMAL = "EssentiallyNormal"
NOT_ESSENTIALLY_NORMAL = "NotEssentiallyNormal"
INCONCLUSIVE = "Inconclusive"

GAP_FLOOR = 1e-9
KERNEL_BOUND_FLOOR = 1e-6
SUP_ATTAINS_ONE_TOL = 1e-6
# sigma must stay uniformly inside the ball along the scanned ray
SIGMA_INTERIOR_CAP = 1e-3
ITERATE_SCAN_CAP = 20
DEFAULT_RADII = tuple(1.0 - 10.0**-j for j in range(1, 7))


@dataclass
class Verdict:
    """Outcome plus the checked hypotheses; ``gap`` carries the numeric
    witness when one exists (it is also embedded in the witness text)."""

    status: str
    witness: str
    hypotheses: list[dict]
    gap: Optional[float] = field(default=None)

    def to_json(self) -> str:
        payload = {
            "status": self.status,
            "witness": self.witness,
            "hypotheses": self.hypotheses,
        }
        return json.dumps(payload)


def _hypothesis(name: str, passed: bool, detail: str = "") -> dict:
    entry = {"name": name, "passed": bool(passed)}
    if detail:
        entry["detail"] = detail
    return entry


def automorphism_verdict(space: SpaceSpec, a) -> Verdict:
    """Verdict for the automorphism with a = phi^{-1}(0).

    a = 0 is the unitary case (essentially normal); otherwise the gap of the
    limits along the monomial-direction sequence is the witness.
    """
    a = np.asarray(a, dtype=complex).reshape(-1)
    r = float(np.linalg.norm(a))
    if r >= 1.0:
        raise ValueError("automorphism base point must lie strictly inside the ball")
    t = space.t
    hypotheses = [_hypothesis("interior_base_point", True, f"|a| = {r:.6g}")]
    if r == 0.0:
        hypotheses.append(_hypothesis("unitary_symbol", True, "a = 0: rotation"))
        return Verdict(
            ESSENTIALLY_NORMAL,
            "unitary symbol: the operator is normal, gap 0 along every direction",
            hypotheses,
            gap=0.0,
        )
    gap = sequences.gap_limit(t, r)
    hypotheses.append(_hypothesis("positive_gap", gap > GAP_FLOOR, f"gap = {gap:.12g}"))
    if gap <= GAP_FLOOR:
        return Verdict(INCONCLUSIVE, "gap not strictly positive", hypotheses, gap=gap)
    witness = (
        f"monomial-direction unit sequence toward a/|a|, |a| = {r:.12g}, "
        f"t = {t:g}: limit gap {gap:.12g}"
    )
    return Verdict(NOT_ESSENTIALLY_NORMAL, witness, hypotheses, gap=gap)


def slice_verdict(phi: maps.LinearFractionalMap, space: SpaceSpec) -> Verdict:
    """Scan slice dimensions for a non-rotation automorphic restriction.

    The first hit yields NotEssentiallyNormal with the gap of the restricted
    map on the slice-weight space (same exponent t, so the same gap code
    path as the full automorphism case).
    """
    if phi.N != space.N:
        raise ValueError(f"map dimension {phi.N} does not match space dimension {space.N}")
    hypotheses = [
        _hypothesis("self_map", maps.self_map_check(phi), "seeded boundary sample")
    ]
    for k in range(1, phi.N):
        result = maps.slice_restriction_check(phi, k)
        if result is None:
            hypotheses.append(_hypothesis(f"slice_structure_k{k}", False, "no block pattern"))
            continue
        reduced, nonrotation = result
        hypotheses.append(_hypothesis(f"slice_structure_k{k}", True, "block pattern holds"))
        if not nonrotation:
            hypotheses.append(
                _hypothesis(f"nonrotation_automorphism_k{k}", False, "restriction is not one")
            )
            continue
        hypotheses.append(_hypothesis(f"nonrotation_automorphism_k{k}", True))
        a = maps.inverse_image_of_zero(reduced)
        r = float(np.linalg.norm(a))
        reduced_space = slice_weight(space, k)
        gap = sequences.gap_limit(reduced_space.t, r)
        if gap <= GAP_FLOOR:
            continue
        witness = (
            f"restriction to the {k}-slice is a non-rotation automorphism with "
            f"|a| = {r:.12g}; reduced space {reduced_space.describe()}, "
            f"limit gap {gap:.12g}"
        )
        return Verdict(NOT_ESSENTIALLY_NORMAL, witness, hypotheses, gap=gap)
    return Verdict(
        INCONCLUSIVE,
        "no slice restriction is a non-rotation automorphism",
        hypotheses,
    )


def iterate_sup_norms(phi: maps.LinearFractionalMap, cap: int = ITERATE_SCAN_CAP) -> list[float]:
    """Sup norms of the iterates phi, phi^2, ..., stopping at the first one
    strictly below 1 (or at ``cap``).  Diagnostic metadata only."""
    out: list[float] = []
    current = phi
    for _ in range(cap):
        value = maps.sup_norm(current)
        out.append(value)
        if value < 1.0 - SUP_ATTAINS_ONE_TOL:
            break
        current = maps.compose(current, phi)
    return out


def kernel_bound_scan(
    phi: maps.LinearFractionalMap,
    space: SpaceSpec,
    zeta,
    radii=None,
) -> tuple[Verdict, list[tuple[float, float]]]:
    """Check the fixed-point/contraction hypotheses and scan the kernel lower
    bound along the ray r * zeta.

    All four hypotheses (unique interior fixed point, zero unitary-space
    dimension there, sup norm reaching 1, adjoint-map values staying inside
    the ball along the ray) must pass and the bound at the largest radius
    must exceed 1e-6 for a NotEssentiallyNormal verdict; otherwise the
    verdict is Inconclusive and names the failures.
    """
    zeta = np.asarray(zeta, dtype=complex).reshape(-1)
    if abs(float(np.linalg.norm(zeta)) - 1.0) > 1e-12:
        raise ValueError("zeta must be a unit vector")
    radii = sorted(DEFAULT_RADII if radii is None else tuple(float(r) for r in radii))
    if not radii or not all(0.0 < r < 1.0 for r in radii):
        raise ValueError("radii must lie in (0, 1)")

    hypotheses = []
    fixed_points = None
    try:
        fixed_points = maps.interior_fixed_points(phi)
    except ValueError as exc:
        hypotheses.append(_hypothesis("unique_interior_fixed_point", False, str(exc)))
    if fixed_points is not None:
        hypotheses.append(
            _hypothesis(
                "unique_interior_fixed_point",
                len(fixed_points) == 1,
                f"found {len(fixed_points)}",
            )
        )
    unique = bool(fixed_points) and len(fixed_points) == 1

    if unique:
        dim = maps.unitary_space_dim(phi, fixed_points[0])
        hypotheses.append(_hypothesis("zero_unitary_dimension", dim == 0, f"dim = {dim}"))
    else:
        hypotheses.append(_hypothesis("zero_unitary_dimension", False, "no unique fixed point"))

    sup = maps.sup_norm(phi)
    hypotheses.append(
        _hypothesis(
            "sup_norm_attains_one", sup >= 1.0 - SUP_ATTAINS_ONE_TOL, f"sup = {sup:.9g}"
        )
    )

    symbols = maps.adjoint_map(phi, space)
    sigma_max = max(
        float(np.linalg.norm(maps.evaluate(symbols.sigma, r * zeta))) for r in radii
    )
    hypotheses.append(
        _hypothesis(
            "adjoint_ray_stays_interior",
            sigma_max <= 1.0 - SIGMA_INTERIOR_CAP,
            f"max |sigma(r zeta)| = {sigma_max:.9g}",
        )
    )

    table: list[tuple[float, float]] = []
    for r in radii:
        try:
            bound = sequences.kernel_gap_lower(phi, space, r * zeta)
        except (ValueError, ZeroDivisionError):
            bound = float("nan")
        table.append((r, bound))

    iterates = iterate_sup_norms(phi)
    contraction_index = (
        len(iterates) if iterates and iterates[-1] < 1.0 - SUP_ATTAINS_ONE_TOL else None
    )
    iterate_note = (
        f"first strict-contraction iterate: {contraction_index} "
        f"(sup norms {', '.join(f'{v:.9g}' for v in iterates)})"
        if contraction_index
        else "no iterate contracted within the scan cap"
    )

    all_pass = all(entry["passed"] for entry in hypotheses)
    last_bound = table[-1][1]
    usable = all_pass and np.isfinite(last_bound) and last_bound > KERNEL_BOUND_FLOOR
    if usable:
        witness = (
            f"kernel lower bound {last_bound:.9g} at r = {radii[-1]:.9g} along zeta; "
            + iterate_note
        )
        return Verdict(NOT_ESSENTIALLY_NORMAL, witness, hypotheses, gap=last_bound), table
    failing = [entry["name"] for entry in hypotheses if not entry["passed"]]
    if not failing:
        failing = ["kernel_bound_positive"]
    witness = "failed: " + ", ".join(failing) + "; " + iterate_note
    return Verdict(INCONCLUSIVE, witness, hypotheses, gap=None), table
