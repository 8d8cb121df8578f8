"""Duality checks tying the reduced LP, its dual and the constructed profile."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..construction import SymmetricVertexProfile
from ..extremes import Sign, extreme_volume
from ..rational import format_rational
from ..verify import FeasibilityReport, difference_triangle
from .builders import build_dual_lp, build_reduced_lp
from .model import Constraint, LinearProgram, Relation, Sense, SimplexResult, Status
from .simplex import solve_simplex

__all__ = [
    "DualSolution",
    "check_strong_duality",
    "check_complementary_slackness",
    "reduced_point_from_profile",
    "dual_from_reduced_result",
    "canonical_dual",
    "dual_structure_holds",
]


@dataclass(frozen=True)
class DualSolution:
    y1: Fraction
    y2: Fraction
    y3: Fraction
    y4: Fraction

    def as_list(self) -> list[Fraction]:
        return [self.y1, self.y2, self.y3, self.y4]

    def objective_magnitude(self, d: int) -> Fraction:
        """y1 + (d-1) y4, which equals |w| at an optimum."""
        return self.y1 + (d - 1) * self.y4

    def to_json(self) -> dict:
        return {f"y{i + 1}": format_rational(v) for i, v in enumerate(self.as_list())}


def check_strong_duality(primal: SimplexResult, dual: SimplexResult) -> bool:
    if primal.status is not Status.OPTIMAL or dual.status is not Status.OPTIMAL:
        raise ValueError("strong duality check needs two optimal results")
    return primal.optimum == dual.optimum


def dual_from_reduced_result(lp: LinearProgram, result: SimplexResult) -> DualSolution:
    """Row multipliers of the reduced LP, in the y >= 0 convention of its dual."""
    if result.status is not Status.OPTIMAL:
        raise ValueError("no dual solution for a non-optimal result")
    y = result.dual_solution
    # a minimization reports <= multipliers as nonpositive
    if lp.sense is Sense.MINIMIZE:
        y = [-v for v in y]
    return DualSolution(*y)


def canonical_dual(d: int, k: int, sign) -> DualSolution:
    """An optimal dual point with every component strictly positive.

    y1 = y4 = |w| / d and y2 = y3 = y1 + d y4, so that y1 + (d-1) y4 = |w|.
    """
    w = abs(extreme_volume(d, k, sign).value)
    if w == 0:
        raise ValueError("the zero optimum has no strictly positive dual point of this form")
    y1 = y4 = w / d
    y2 = y1 + d * y4
    return DualSolution(y1, y2, y2, y4)


def reduced_point_from_profile(p: SymmetricVertexProfile) -> list[Fraction]:
    """Map (a, q) with b = 1 to the variables of the reduced LP, in builder order."""
    d, k = p.d, p.k
    tri = difference_triangle(p.q, k)
    point = [p.a, Fraction(1), p.q[0], tri.delta[1, 1]]
    point += [tri.delta[i, i] for i in range(2, k)]
    point += [tri.delta[k, i] for i in range(k, d + 1)]
    return point


def check_complementary_slackness(
    reduced: LinearProgram, primal_sol: Sequence[Fraction], dual_sol: DualSolution
) -> FeasibilityReport:
    """Multiplier x slack and variable x reduced cost must all vanish.

    Also reports primal or dual infeasibility, since slackness is only
    meaningful between two feasible points.
    """
    rep = FeasibilityReport()
    x = list(primal_sol)
    y = dual_sol.as_list()
    if len(y) != len(reduced.constraints):
        raise ValueError("dual solution size does not match the reduced LP rows")
    for j, v in enumerate(x):
        rep.checked += 1
        if v < 0:
            rep.add("primal-sign", (reduced.variable_names[j],), v, 0)
    for con, yi in zip(reduced.constraints, y):
        slack = con.rhs - con.lhs(x)
        rep.checked += 3
        if slack < 0:
            rep.add("primal-row", (con.name,), con.lhs(x), con.rhs)
        if yi < 0:
            rep.add("dual-sign", (con.name,), yi, 0)
        if yi * slack != 0:
            rep.add("row-slackness", (con.name,), yi * slack, 0)
    sgn = 1 if reduced.sense is Sense.MINIMIZE else -1
    for j, name in enumerate(reduced.variable_names):
        # min: c + A^T y >= 0 ; max: A^T y - c >= 0
        reduced_cost = sgn * reduced.objective[j] + sum(
            (yi * con.coeffs[j] for con, yi in zip(reduced.constraints, y)), Fraction(0)
        )
        rep.checked += 2
        if reduced_cost < 0:
            rep.add("dual-row", (name,), reduced_cost, 0)
        if reduced_cost * x[j] != 0:
            rep.add("variable-slackness", (name,), reduced_cost * x[j], 0)
    rep.violations.sort()
    return rep


def dual_structure_holds(d: int, k: int, sign) -> dict:
    """Re-solve the dual with y2 = y3 and y2 = y1 + d y4 added and compare optima."""
    dual = build_dual_lp(d, k, sign)
    base = solve_simplex(dual)
    rows = [
        Constraint((Fraction(0), Fraction(1), Fraction(-1), Fraction(0)), Relation.EQ, Fraction(0), "y2=y3"),
        Constraint((Fraction(-1), Fraction(1), Fraction(0), Fraction(-d)), Relation.EQ, Fraction(0), "y2=y1+d*y4"),
    ]
    restricted = solve_simplex(dual.with_constraints(rows))
    y = DualSolution(*base.primal_solution)
    w = extreme_volume(d, k, sign).value
    return {
        "optimum": base.optimum,
        "restricted_optimum": restricted.optimum,
        "restricted_optimum_unchanged": restricted.status is Status.OPTIMAL and restricted.optimum == base.optimum,
        "magnitude": y.objective_magnitude(d),
        "magnitude_matches": y.objective_magnitude(d) == abs(w),
    }
