"""Post-hoc verification of simplex outcomes, independent of the pivot path."""

from __future__ import annotations

from fractions import Fraction
from typing import TYPE_CHECKING, Sequence

from .model import LinearProgram, Relation, Sense

if TYPE_CHECKING:
    from .simplex import StandardForm

__all__ = ["CertificateError", "certify_optimal", "certify_infeasible", "certify_unbounded", "duality_gap"]


class CertificateError(RuntimeError):
    """A solver outcome failed its exact certificate check."""


def _max_objective(lp: LinearProgram) -> list[Fraction]:
    return lp.objective if lp.sense is Sense.MAXIMIZE else [-c for c in lp.objective]


def duality_gap(lp: LinearProgram, x: Sequence[Fraction], y_max: Sequence[Fraction]) -> Fraction:
    """Lagrangian dual bound minus primal value, both in the maximization sense.

    ``y_max`` are row multipliers for ``max c x``: <= rows need y >= 0, >= rows
    y <= 0.  Raises if the multipliers are not dual feasible.
    """
    c = _max_objective(lp)
    reduced = list(c)
    dual_value = Fraction(0)
    for con, y in zip(lp.constraints, y_max):
        if con.relation is Relation.LE and y < 0:
            raise CertificateError(f"row {con.name!r}: <= multiplier {y} is negative")
        if con.relation is Relation.GE and y > 0:
            raise CertificateError(f"row {con.name!r}: >= multiplier {y} is positive")
        if y:
            dual_value += y * con.rhs
            for j, a in enumerate(con.coeffs):
                if a:
                    reduced[j] -= y * a
    for j, r in enumerate(reduced):
        if r > 0:
            if lp.upper[j] is None:
                raise CertificateError(f"variable {lp.variable_names[j]!r} has positive reduced cost and no upper bound")
            dual_value += r * lp.upper[j]
        elif r < 0:
            if lp.lower[j] is None:
                raise CertificateError(f"variable {lp.variable_names[j]!r} has negative reduced cost and no lower bound")
            dual_value += r * lp.lower[j]
    primal = sum((cj * xj for cj, xj in zip(c, x)), Fraction(0))
    return dual_value - primal


def certify_optimal(lp: LinearProgram, x, y_max) -> dict:
    if not lp.is_feasible(x):
        raise CertificateError("reported optimum is not primal feasible")
    gap = duality_gap(lp, x, y_max)
    if gap != 0:
        raise CertificateError(f"nonzero duality gap {gap}")
    return {"kind": "optimal", "primal_feasible": True, "dual_feasible": True, "gap": "0"}


def certify_infeasible(std: "StandardForm", y: Sequence[Fraction]) -> dict:
    """Farkas check on the standard form: y'[A | slack] >= 0 columnwise and y'b < 0."""
    m = len(std.rows)
    if sum((yi * bi for yi, bi in zip(y, std.rhs)), Fraction(0)) >= 0:
        raise CertificateError("Farkas multiplier does not separate the rhs")
    for j in range(std.n):
        if sum((y[i] * std.rows[i][j] for i in range(m) if std.rows[i][j]), Fraction(0)) < 0:
            raise CertificateError(f"Farkas multiplier fails on column {j}")
    for i, rel in enumerate(std.relations):
        # slack (+e_i) for <= rows, surplus (-e_i) for >= rows
        if rel is Relation.LE and y[i] < 0:
            raise CertificateError(f"Farkas multiplier fails on slack of row {i}")
        if rel is Relation.GE and y[i] > 0:
            raise CertificateError(f"Farkas multiplier fails on surplus of row {i}")
    return {"kind": "infeasible", "farkas": True}


def certify_unbounded(lp: LinearProgram, x, ray) -> dict:
    if not lp.is_feasible(x):
        raise CertificateError("unbounded certificate base point is infeasible")
    for con in lp.constraints:
        v = con.lhs(ray)
        if (con.relation is Relation.LE and v > 0) or (con.relation is Relation.GE and v < 0) or (
            con.relation is Relation.EQ and v != 0
        ):
            raise CertificateError(f"ray leaves row {con.name!r}")
    for r, lo, hi in zip(ray, lp.lower, lp.upper):
        if (lo is not None and r < 0) or (hi is not None and r > 0):
            raise CertificateError("ray leaves a variable bound")
    c = _max_objective(lp)
    if sum((cj * rj for cj, rj in zip(c, ray)), Fraction(0)) <= 0:
        raise CertificateError("ray does not improve the objective")
    return {"kind": "unbounded", "ray": True}
