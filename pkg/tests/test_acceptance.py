"""Acceptance criteria, one test per criterion at its stated tolerance.

Each test prints a single PASS line on success (run with ``pytest -s`` to see
them); a failing criterion surfaces as an ordinary pytest failure.
"""

import math
import time

import numpy as np
import pytest

from compop.diagnostics import (
    ESSENTIALLY_NORMAL,
    NOT_ESSENTIALLY_NORMAL,
    automorphism_verdict,
    iterate_sup_norms,
    kernel_bound_scan,
    slice_verdict,
)
from compop.maps import LinearFractionalMap
from compop.multiindex import enumerate_indices, falling_decomposition
from compop.oracle import monte_carlo_sphere, sphere_inner_product_exact, toeplitz_form_exact
from compop.sequences import (
    adjoint_form,
    adjoint_limit,
    forward_limit,
    forward_norm_sq,
    kernel_gap_lower,
    limits_for_space,
)
from compop.spaces import (
    SpaceSpec,
    monomial_norm_sq,
    slice_weight,
    sphere_monomial_integral,
)
from compop.special_fn import hyp2f1


def _report(number: int, text: str) -> None:
    print(f"ACCEPTANCE {number:02d} PASS: {text}")


def witness_1d():
    return LinearFractionalMap(np.array([[-1.0]]), [0.0], [-1.0], 2.0)


def witness_2d():
    return LinearFractionalMap(np.array([[-1.0, 0.0], [0.0, 1.0]]), [0, 0], [-1.0, 0], 2.0)


def slice_witness():
    return LinearFractionalMap(np.array([[-1.0, 0.0], [0.0, 0.5]]), [0.5, 0], [-0.5, 0], 1.0)


def test_criterion_01_gap_limit_disk():
    start = time.perf_counter()
    n = 10**5
    gap_n = adjoint_form(2.0, 0.5, n) - forward_norm_sq(2.0, 0.5, n)
    adj = adjoint_limit(2.0, 0.5)
    fwd = forward_limit(2.0, 0.5)
    elapsed = time.perf_counter() - start
    assert gap_n == pytest.approx(2.0, abs=1e-3)
    assert adj == pytest.approx(11.0 / 3.0, abs=1e-9)
    assert fwd == pytest.approx(5.0 / 3.0, abs=1e-9)
    assert elapsed < 1.0
    _report(1, f"gap at n=1e5 is {gap_n:.9f}, limits {fwd:.9f}/{adj:.9f}, {elapsed*1e3:.0f} ms")


def test_criterion_02_finite_index_paper_formula():
    explicit = (1 + 4 * (2 / 3) * 0.25 + (2 / 4) * 0.0625) / 0.5625
    series = adjoint_form(2.0, 0.5, 1)
    assert series == pytest.approx(explicit, abs=1e-9)
    brute = toeplitz_form_exact(SpaceSpec.bergman(1, 0.0), [0.5], 1)
    assert series == pytest.approx(brute, abs=1e-12)
    _report(2, f"adjoint_form(2, 0.5, 1) = {series:.12f} on both paths")


def test_criterion_03_euler_transform():
    worst = 0.0
    for t in (1.5, 2.0, 3.0, 4.7):
        for i in range(1, 19):
            x = 0.05 * i
            lhs = (1 - x) ** t * hyp2f1(t, t, 1.0, x)
            rhs = (1 - x) ** (1 - t) * hyp2f1(1 - t, 1 - t, 1.0, x)
            worst = max(worst, abs(lhs - rhs) / abs(rhs))
    assert worst < 1e-12
    _report(3, f"Euler transform grid, max relative error {worst:.3e}")


def test_criterion_04_falling_decomposition():
    assert falling_decomposition(2).coeffs == (1, 4, 2)
    for k in range(1, 13):
        dec = falling_decomposition(k)
        assert dec.coeffs[-1] == math.factorial(k)
        for m in range(0, 21):
            assert dec.evaluate(m) == math.factorial(m + k) // math.factorial(m)
    _report(4, "rising-block identity exact for k <= 12, m <= 20; k=2 gives [1, 4, 2]")


def test_criterion_05_appendix_inequality():
    aligned_case = sphere_inner_product_exact(2, 2, 1, [0.6, 0.0], [1.0, 0.0])
    assert aligned_case.value == pytest.approx(0.0324, abs=1e-12)
    orthogonal_case = sphere_inner_product_exact(2, 2, 1, [0.6, 0.0], [0.0, 1.0])
    assert orthogonal_case.value == pytest.approx(0.0108, abs=1e-12)

    rng = np.random.default_rng(177013)
    checked_equalities = 0
    for _ in range(1000):
        N = int(rng.integers(1, 4))
        k = int(rng.integers(0, 5))
        m = int(rng.integers(0, 9))
        a = (rng.standard_normal(N) + 1j * rng.standard_normal(N)) * 0.3
        a_norm = float(np.linalg.norm(a))
        if a_norm >= 0.95:
            a *= 0.9 / a_norm
        eta = rng.standard_normal(N) + 1j * rng.standard_normal(N)
        eta /= np.linalg.norm(eta)
        result = sphere_inner_product_exact(N, k, m, a, eta)
        assert result.value <= result.bound + 1e-12
        if float(np.linalg.norm(a)) > 1e-6 and k <= 3 and m <= 6:
            aligned = sphere_inner_product_exact(N, k, m, a, a / np.linalg.norm(a))
            assert aligned.value == pytest.approx(aligned.bound, abs=1e-12)
            checked_equalities += 1
    _report(5, f"1000 seeded bound checks, {checked_equalities} aligned equality checks")


def test_criterion_06_two_path_oracle_equivalence():
    worst = 0.0
    for t in (2.0, 3.5):
        space = SpaceSpec.hardy(2) if t == 2.0 else SpaceSpec.bergman(2, 0.5)
        for r in (0.3, 0.6):
            a = np.array([r * 0.6, r * 0.8j])
            for m in range(0, 7):
                brute = toeplitz_form_exact(space, a, m)
                series = adjoint_form(t, r, m)
                worst = max(worst, abs(brute - series) / abs(series))
    assert worst < 1e-12
    _report(6, f"Toeplitz brute force vs adjoint series, max relative error {worst:.3e}")


def test_criterion_07_slice_integration():
    worst = 0.0
    for N in (2, 3):
        for k in range(1, N):
            for s in (-0.5, 0.0, 1.0):
                big = SpaceSpec.bergman(N, s)
                small = slice_weight(big, k)
                assert small.t == big.t
                for total in range(0, 7):
                    for beta in enumerate_indices(k, total):
                        padded = beta + (0,) * (N - k)
                        lhs = monomial_norm_sq(big, padded)
                        rhs = monomial_norm_sq(small, beta)
                        worst = max(worst, abs(lhs - rhs) / abs(rhs))
            hardy = SpaceSpec.hardy(N)
            reduced = slice_weight(hardy, k)
            assert reduced.t == hardy.t
            for total in range(0, 7):
                for beta in enumerate_indices(k, total):
                    padded = beta + (0,) * (N - k)
                    lhs = sphere_monomial_integral(N, padded)
                    rhs = monomial_norm_sq(reduced, beta)
                    worst = max(worst, abs(lhs - rhs) / abs(rhs))
    assert worst < 1e-12
    _report(7, f"slice integration identities, max relative error {worst:.3e}")


def test_criterion_08_slice_verdict_witness():
    verdict = slice_verdict(slice_witness(), SpaceSpec.hardy(2))
    assert verdict.status == NOT_ESSENTIALLY_NORMAL
    assert verdict.gap == pytest.approx(2.0, abs=1e-9)
    assert "1-slice" in verdict.witness
    assert "bergman(N=1, s=0)" in verdict.witness
    _report(8, f"slice witness: {verdict.status}, gap {verdict.gap:.9f} on the reduced disk")


def test_criterion_09_kernel_bound_witnesses():
    r = 1.0 - 1e-6
    one_d = kernel_gap_lower(witness_1d(), SpaceSpec.hardy(1), [r])
    assert one_d == pytest.approx(0.5, abs=1e-3)
    two_d = kernel_gap_lower(witness_2d(), SpaceSpec.hardy(2), [r, 0.0])
    assert two_d == pytest.approx(0.25, abs=1e-3)

    verdict_1d, _ = kernel_bound_scan(witness_1d(), SpaceSpec.hardy(1), [1.0])
    verdict_2d, _ = kernel_bound_scan(witness_2d(), SpaceSpec.hardy(2), [1.0, 0.0])
    for verdict in (verdict_1d, verdict_2d):
        assert verdict.status == NOT_ESSENTIALLY_NORMAL
        by_name = {h["name"]: h["passed"] for h in verdict.hypotheses}
        assert by_name["unique_interior_fixed_point"]
        assert by_name["zero_unitary_dimension"]
        assert by_name["sup_norm_attains_one"]

    sups = iterate_sup_norms(witness_1d())
    assert len(sups) == 2
    assert sups[1] == pytest.approx(1.0 / 3.0, abs=1e-6)
    _report(9, f"kernel bounds {one_d:.6f}/{two_d:.6f}, iterate sup norm {sups[1]:.9f}")


def test_criterion_10_space_unification():
    hardy = SpaceSpec.hardy(2)
    bergman = SpaceSpec.bergman(1, 0.0)
    for i in range(1, 10):
        r = 0.1 * i
        for vh, vb in zip(limits_for_space(hardy, r), limits_for_space(bergman, r)):
            assert vh == pytest.approx(vb, rel=1e-15)
    spaces = [SpaceSpec.hardy(1), SpaceSpec.hardy(2), SpaceSpec.bergman(1, 0.0),
              SpaceSpec.bergman(2, 0.5), SpaceSpec.bergman(3, -0.5)]
    for space in spaces:
        unit = automorphism_verdict(space, np.zeros(space.N))
        assert unit.status == ESSENTIALLY_NORMAL
        a = np.zeros(space.N)
        a[0] = 0.5
        moved = automorphism_verdict(space, a)
        assert moved.status == NOT_ESSENTIALLY_NORMAL
    _report(10, "matched-exponent spaces agree to 1e-15; verdicts split on a = 0")


def test_criterion_11_monte_carlo_consistency():
    def monomial(pts):
        return np.abs(pts[:, 0] * pts[:, 1]) ** 2

    est_1, err_1 = monte_carlo_sphere(2, monomial, 10**6, seed=424242)
    exact_1 = sphere_monomial_integral(2, (1, 1))
    assert abs(est_1 - exact_1) <= 4.0 * err_1

    a = np.array([0.6, 0.0])
    eta = np.array([1.0, 0.0])
    exact_2 = sphere_inner_product_exact(2, 2, 1, a, eta).value

    def appendix_integrand(pts):
        return np.abs((pts @ np.conj(a)) ** 2 * (pts @ np.conj(eta))) ** 2

    est_2, err_2 = monte_carlo_sphere(2, appendix_integrand, 10**6, seed=31337)
    assert abs(est_2 - exact_2) <= 4.0 * err_2

    repeat = monte_carlo_sphere(2, monomial, 10**6, seed=424242)
    assert repeat == (est_1, err_1)
    _report(
        11,
        f"Monte-Carlo within {abs(est_1 - exact_1) / err_1:.2f} and "
        f"{abs(est_2 - exact_2) / err_2:.2f} standard errors, seed-stable",
    )
