"""Theta functions, rotation-algebra symbolics, Harper spectra, and
Fourier-invariant projections."""

from .theta import (
    ThetaValue,
    Characteristics,
    BoundFunctions,
    eval_theta,
    eval_theta_char,
    eval_theta_parity,
    extreme_values,
    bound_suite,
    find_threshold,
    check_classical_identities,
    default_tol,
)
from .nctorus import (
    NCPoly,
    SL2Matrix,
    SIGMA,
    unit,
    monomial,
    mul,
    adjoint,
    trace,
    apply_sl2,
    sigma,
    expectation,
    bracket,
    curly,
    harper,
    to_float,
    check_bracket_identities,
)
from .witness import generation_witness, eval_expr
from .repmat import (
    TwistedRep,
    SpectrumEstimate,
    TruncatedHeisenberg,
    clock_shift,
    build_rep,
    represent,
    harper_norm,
    spectrum,
    check_duality,
    truncated_heisenberg,
)
from .projector import (
    BoundReport,
    ProjectionCheck,
    UnsupportedCaseError,
    gaussian_coeff,
    symbol_a,
    symbol_a_shifted,
    fourier_coeff_alpha,
    projection_series,
    projection_matrix,
    projection_coeffs,
    projection_check,
    invertibility_alpha,
    invertibility_pq,
    phi_bounds,
    phi0_curve,
    phi1_curve,
    compression_bound,
    partition_checks,
    parity_fourier_sums,
    theta_identity_checks,
)
from .exprparse import parse_expr, serialize_witness

__version__ = "1.0.0"
