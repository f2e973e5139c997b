"""Command-line front end.

Emits CSV or JSON tables that realize each closed form numerically: limit
triples, finite-index convergence rows, exact sphere-integral oracles with
optional Monte-Carlo cross-checks, slice and kernel-bound verdicts, and a
self-contained identity verification suite.

Exit codes: 0 success / all checks pass, 1 verification failure, 2 usage or
input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import diagnostics, maps, oracle, sequences
from .multiindex import falling_decomposition, falling_factorial
from .spaces import (
    SpaceSpec,
    monomial_norm_sq,
    slice_weight,
    sphere_monomial_integral,
)
from .special_fn import hyp2f1

CSV_COLUMNS = ["t", "r", "n", "forward", "adjoint", "gap", "forward_limit", "adjoint_limit", "gap_limit"]
LIMIT_COLUMNS = ["t", "r", "forward_limit", "adjoint_limit", "gap_limit"]


def _fmt(value) -> str:
    return format(float(value), ".12g")


def _parse_floats(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part != ""]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated reals, got {text!r}") from exc


def _parse_ints(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part != ""]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _parse_vector(text: str) -> np.ndarray:
    try:
        return np.array([complex(part) for part in text.split(",") if part != ""])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated complex components, got {text!r}"
        ) from exc


def _emit(text: str, output) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv_table(columns: list[str], rows: list[list]) -> str:
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def _json_table(columns: list[str], rows: list[list]) -> str:
    payload = [{col: float(v) for col, v in zip(columns, row)} for row in rows]
    return json.dumps({"rows": payload}) + "\n"


def _thread_count() -> int:
    raw = os.environ.get("COMPOP_THREADS", "")
    try:
        return max(1, int(raw)) if raw else 1
    except ValueError:
        return 1


def _space_from_args(args, N: int) -> SpaceSpec:
    if args.space == "hardy":
        return SpaceSpec.hardy(N)
    if args.s is None:
        raise _UsageError("--s is required for Bergman spaces")
    return SpaceSpec.bergman(N, args.s)


class _UsageError(Exception):
    pass


def _cmd_limits(args) -> int:
    rows = []
    for t in args.t:
        for r in args.r:
            fwd = sequences.forward_limit(t, r)
            adj = sequences.adjoint_limit(t, r)
            gap = sequences.gap_limit(t, r)
            rows.append([t, r, fwd, adj, gap])
    if args.format == "csv":
        _emit(_csv_table(LIMIT_COLUMNS, rows), args.output)
    else:
        _emit(_json_table(LIMIT_COLUMNS, rows), args.output)
    return 0


def _cmd_converge(args) -> int:
    t = args.t[0]
    r = args.r[0]

    def row(n: int) -> list:
        rep = sequences.report(t, r, n)
        return [
            rep.t,
            rep.r,
            rep.n,
            rep.forward,
            rep.adjoint,
            rep.gap,
            rep.forward_limit,
            rep.adjoint_limit,
            rep.gap_limit,
        ]

    threads = _thread_count()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(row, args.n))
    else:
        rows = [row(n) for n in args.n]
    if args.format == "csv":
        _emit(_csv_table(CSV_COLUMNS, rows), args.output)
    else:
        _emit(_json_table(CSV_COLUMNS, rows), args.output)
    return 0


def _cmd_oracle(args) -> int:
    result = oracle.sphere_inner_product_exact(args.N, args.k, args.m, args.a, args.eta)
    payload = {
        "N": args.N,
        "k": args.k,
        "m": args.m,
        "value": result.value,
        "bound": result.bound,
        "n_terms": result.n_terms,
        "method": result.method,
    }
    if args.mc:
        a = np.asarray(args.a, dtype=complex)
        eta = np.asarray(args.eta, dtype=complex)

        def integrand(pts: np.ndarray) -> np.ndarray:
            inner_a = pts @ np.conj(a)
            inner_eta = pts @ np.conj(eta)
            return np.abs(inner_a ** args.k * inner_eta ** args.m) ** 2

        estimate, stderr = oracle.monte_carlo_sphere(args.N, integrand, args.mc, args.seed)
        payload["mc_estimate"] = estimate
        payload["mc_stderr"] = stderr
    if args.format == "csv":
        columns = list(payload.keys())
        values = [payload[c] for c in columns]
        lines = [",".join(columns)]
        lines.append(",".join(str(v) if isinstance(v, (int, str)) else _fmt(v) for v in values))
        _emit("\n".join(lines) + "\n", args.output)
    else:
        _emit(json.dumps(payload) + "\n", args.output)
    return 0


def _cmd_slice_check(args) -> int:
    phi = maps.load_map(args.map)
    space = _space_from_args(args, phi.N)
    verdict = diagnostics.slice_verdict(phi, space)
    _emit(verdict.to_json() + "\n", args.output)
    return 0


def _cmd_kernel_bound(args) -> int:
    phi = maps.load_map(args.map)
    space = _space_from_args(args, phi.N)
    radii = args.radii if args.radii else None
    verdict, table = diagnostics.kernel_bound_scan(phi, space, args.zeta, radii)
    payload = {
        "verdict": json.loads(verdict.to_json()),
        "table": [[r, bound] for r, bound in table],
    }
    _emit(json.dumps(payload) + "\n", args.output)
    return 0


def _verify_euler_transform() -> tuple[bool, str]:
    worst = 0.0
    for t in (1.5, 2.0, 3.0, 4.7):
        for i in range(1, 19):
            x = 0.05 * i
            lhs = (1.0 - x) ** t * hyp2f1(t, t, 1.0, x)
            rhs = (1.0 - x) ** (1.0 - t) * hyp2f1(1.0 - t, 1.0 - t, 1.0, x)
            worst = max(worst, abs(lhs - rhs) / abs(rhs))
    return worst < 1e-12, f"max relative error {worst:.3e}"


def _verify_falling_decomposition() -> tuple[bool, str]:
    import math

    for k in range(1, 13):
        dec = falling_decomposition(k)
        if dec.coeffs[-1] != math.factorial(k):
            return False, f"a_k != k! at k={k}"
        for m in range(0, 21):
            if dec.evaluate(m) != math.factorial(m + k) // math.factorial(m):
                return False, f"identity fails at k={k}, m={m}"
    return True, "exact for k <= 12, m <= 20"


def _verify_slice_integration() -> tuple[bool, str]:
    worst = 0.0
    for N in (2, 3):
        for k in range(1, N):
            for s in (-0.5, 0.0, 1.0):
                big = SpaceSpec.bergman(N, s)
                small = slice_weight(big, k)
                if small.t != big.t:
                    return False, f"exponent not preserved at N={N}, k={k}, s={s}"
                for beta_head in range(0, 7):
                    beta_small = (beta_head,) + (0,) * (k - 1)
                    beta_big = beta_small + (0,) * (N - k)
                    lhs = monomial_norm_sq(big, beta_big)
                    rhs = monomial_norm_sq(small, beta_small)
                    worst = max(worst, abs(lhs - rhs) / abs(rhs))
            hardy = SpaceSpec.hardy(N)
            reduced = slice_weight(hardy, k)
            for beta_head in range(0, 7):
                beta_small = (beta_head,) + (0,) * (k - 1)
                beta_big = beta_small + (0,) * (N - k)
                lhs = sphere_monomial_integral(N, beta_big)
                rhs = monomial_norm_sq(reduced, beta_small)
                worst = max(worst, abs(lhs - rhs) / abs(rhs))
    return worst < 1e-12, f"max relative error {worst:.3e}"


def _verify_oracle_equivalence() -> tuple[bool, str]:
    worst = 0.0
    for space in (SpaceSpec.hardy(2), SpaceSpec.bergman(2, 0.5)):
        for r in (0.3, 0.5):
            a = np.array([r, 0.0])
            for m in (0, 1, 3):
                exact = oracle.toeplitz_form_exact(space, a, m)
                series = sequences.adjoint_form(space.t, r, m)
                worst = max(worst, abs(exact - series) / abs(series))
    return worst < 1e-12, f"max relative error {worst:.3e}"


def _verify_appendix_inequality() -> tuple[bool, str]:
    rng = np.random.default_rng(314159)
    for case in range(100):
        N = int(rng.integers(1, 4))
        k = int(rng.integers(0, 5))
        m = int(rng.integers(0, 9))
        a = (rng.standard_normal(N) + 1j * rng.standard_normal(N)) * 0.3
        eta = rng.standard_normal(N) + 1j * rng.standard_normal(N)
        eta = eta / np.linalg.norm(eta)
        result = oracle.sphere_inner_product_exact(N, k, m, a, eta)
        if result.value > result.bound + 1e-12:
            return False, f"bound violated at case {case}"
    return True, "100 seeded cases within bound"


_VERIFY_SUITES = [
    ("euler_transform", _verify_euler_transform),
    ("falling_factorial_decomposition", _verify_falling_decomposition),
    ("slice_integration", _verify_slice_integration),
    ("oracle_equivalence", _verify_oracle_equivalence),
    ("appendix_inequality", _verify_appendix_inequality),
]


def _cmd_verify(args) -> int:
    failures = 0
    lines = []
    for name, suite in _VERIFY_SUITES:
        ok, detail = suite()
        lines.append(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
        if not ok:
            failures += 1
    lines.append(f"{len(_VERIFY_SUITES) - failures}/{len(_VERIFY_SUITES)} suites passed")
    _emit("\n".join(lines) + "\n", args.output)
    return 0 if failures == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="compop",
        description="Numerical composition-operator norms, limits, and verdicts.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--format", choices=["csv", "json"], default="csv")
        p.add_argument("--output", default=None, help="write to a file instead of stdout")

    p_limits = sub.add_parser("limits", help="closed-form limit triples")
    p_limits.add_argument("--t", type=_parse_floats, required=True)
    p_limits.add_argument("--r", type=_parse_floats, required=True)
    add_common(p_limits)
    p_limits.set_defaults(func=_cmd_limits)

    p_conv = sub.add_parser("converge", help="finite-index sequence rows")
    p_conv.add_argument("--t", type=_parse_floats, required=True)
    p_conv.add_argument("--r", type=_parse_floats, required=True)
    p_conv.add_argument("--n", type=_parse_ints, required=True)
    add_common(p_conv)
    p_conv.set_defaults(func=_cmd_converge)

    p_oracle = sub.add_parser("oracle", help="exact sphere integral and bound")
    p_oracle.add_argument("--N", type=int, required=True)
    p_oracle.add_argument("--k", type=int, required=True)
    p_oracle.add_argument("--m", type=int, required=True)
    p_oracle.add_argument("--a", type=_parse_vector, required=True)
    p_oracle.add_argument("--eta", type=_parse_vector, required=True)
    p_oracle.add_argument("--mc", type=int, default=0, help="Monte-Carlo sample count")
    p_oracle.add_argument("--seed", type=int, default=0)
    add_common(p_oracle)
    p_oracle.set_defaults(func=_cmd_oracle)

    p_slice = sub.add_parser("slice-check", help="slice-automorphism verdict")
    p_slice.add_argument("--map", required=True)
    p_slice.add_argument("--space", choices=["hardy", "bergman"], required=True)
    p_slice.add_argument("--s", type=float, default=None)
    add_common(p_slice)
    p_slice.set_defaults(func=_cmd_slice_check)

    p_kernel = sub.add_parser("kernel-bound", help="kernel lower-bound scan")
    p_kernel.add_argument("--map", required=True)
    p_kernel.add_argument("--space", choices=["hardy", "bergman"], required=True)
    p_kernel.add_argument("--s", type=float, default=None)
    p_kernel.add_argument("--zeta", type=_parse_vector, required=True)
    p_kernel.add_argument("--radii", type=_parse_floats, default=None)
    add_common(p_kernel)
    p_kernel.set_defaults(func=_cmd_kernel_bound)

    p_verify = sub.add_parser("verify", help="run the identity suites")
    add_common(p_verify)
    p_verify.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except maps.MapSpecError as exc:
        print(f"map-spec error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
