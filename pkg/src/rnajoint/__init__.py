"""Exact enumeration and asymptotics of RNA secondary, shape and joint structures."""

from .asymptotics import (
    SingularityReport,
    asymptotic_constant,
    asymptotic_estimate,
    compare_table,
    growth_rate_grid,
    singularity_report,
    solve_gamma,
)
from .joint import joint_by_recurrence, joint_gf, joint_series, recurrence_coefficients
from .secondary import (
    DomainError,
    ParameterError,
    PreconditionError,
    StructureParams,
    T_eval_real,
    T_series,
)
from .series import TrivariateSeries, UnivariateSeries
from .shapes import U_series, rho, shape_gf

__all__ = [
    "DomainError",
    "ParameterError",
    "PreconditionError",
    "SingularityReport",
    "StructureParams",
    "TrivariateSeries",
    "T_eval_real",
    "T_series",
    "U_series",
    "UnivariateSeries",
    "asymptotic_constant",
    "asymptotic_estimate",
    "compare_table",
    "growth_rate_grid",
    "joint_by_recurrence",
    "joint_gf",
    "joint_series",
    "recurrence_coefficients",
    "rho",
    "shape_gf",
    "singularity_report",
    "solve_gamma",
]
