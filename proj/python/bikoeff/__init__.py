"""Coefficient bounds and numerical checks for bi-univalent function classes."""

from ._core import (
    ClassSpec,
    DegenerateError,
    DomainError,
    ParseError,
    SearchError,
    boundary_scale,
    bounds,
    bounds_json,
    fit_atoms,
    generator_series,
    implied_q,
    is_admissible,
    max_coeff,
    min_eigenvalue,
    revert,
    run_cli,
    sample,
    solve_coefficients,
    ss_beta_a5,
    st_rho_a5,
)

__all__ = [
    "ClassSpec",
    "DegenerateError",
    "DomainError",
    "ParseError",
    "SearchError",
    "boundary_scale",
    "bounds",
    "bounds_json",
    "fit_atoms",
    "generator_series",
    "implied_q",
    "is_admissible",
    "max_coeff",
    "min_eigenvalue",
    "revert",
    "run_cli",
    "sample",
    "solve_coefficients",
    "ss_beta_a5",
    "st_rho_a5",
]
