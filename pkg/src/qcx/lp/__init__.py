"""Exact LP solving plus the LP families of the extreme-volume problem."""

from .certificate import CertificateError
from .model import Constraint, LinearProgram, Relation, Sense, SimplexResult, Status
from .simplex import solve_simplex

__all__ = [
    "CertificateError",
    "Constraint",
    "LinearProgram",
    "Relation",
    "Sense",
    "SimplexResult",
    "Status",
    "solve_simplex",
]
