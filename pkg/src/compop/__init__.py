"""Numerical composition-operator toolkit for Hardy and weighted Bergman
spaces of the disk and ball: finite-index norms, closed-form limits,
essential-normality verdicts, and independent brute-force oracles."""

from .diagnostics import (
    ESSENTIALLY_NORMAL,
    INCONCLUSIVE,
    NOT_ESSENTIALLY_NORMAL,
    Verdict,
    automorphism_verdict,
    iterate_sup_norms,
    kernel_bound_scan,
    slice_verdict,
)
from .maps import (
    CowenSymbols,
    LinearFractionalMap,
    MapSpecError,
    adjoint_map,
    compose,
    evaluate,
    interior_fixed_points,
    inverse_image_of_zero,
    involution,
    iterate,
    jacobian,
    load_map,
    projective_distance,
    self_map_check,
    slice_restriction_check,
    sup_norm,
    unitary_space_dim,
)
from .multiindex import (
    FallingDecomposition,
    MultiIndex,
    enumerate_indices,
    falling_decomposition,
    falling_factorial,
    index_factorial,
    multinomial,
)
from .oracle import (
    OracleResult,
    appendix_bound,
    monte_carlo_sphere,
    sphere_inner_product_exact,
    toeplitz_form_exact,
)
from .sequences import (
    SequenceReport,
    adjoint_form,
    adjoint_limit,
    forward_limit,
    forward_norm_sq,
    gap_limit,
    kernel_gap_lower,
    limits_for_space,
    ratio_factor,
    report,
    report_for_space,
)
from .spaces import (
    SpaceSpec,
    exponent_t,
    monomial_norm_sq,
    projection_coeff,
    slice_weight,
    sphere_monomial_integral,
)
from .special_fn import (
    HypParams,
    NonConvergenceError,
    gamma_ratio,
    gauss_2f1_unit,
    hyp2f1,
    log_gamma,
    pochhammer,
    real_binomial,
)

__version__ = "0.1.0"
