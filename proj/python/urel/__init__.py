"""Uncertainty-relation bounds for mixed quantum states."""

from ._urel import (
    InvalidStateError,
    NotHermitianError,
    NotPsdError,
    NumericError,
    ParameterError,
    ShapeError,
    closed_forms,
    convergence_sweep,
    evaluate_all,
    hs_inner,
    matrix_sqrt,
    pq_ops,
    run_cli,
    sample_density,
    sample_hermitian,
    skew_information,
    thermal_state,
    verify,
)

__all__ = [
    "InvalidStateError",
    "NotHermitianError",
    "NotPsdError",
    "NumericError",
    "ParameterError",
    "ShapeError",
    "closed_forms",
    "convergence_sweep",
    "evaluate_all",
    "hs_inner",
    "matrix_sqrt",
    "pq_ops",
    "run_cli",
    "sample_density",
    "sample_hermitian",
    "skew_information",
    "thermal_state",
    "verify",
]
