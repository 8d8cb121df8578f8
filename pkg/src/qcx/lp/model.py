"""Exact linear program container and solver result types."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from ..rational import as_rational, format_rational

__all__ = ["Sense", "Relation", "Status", "Constraint", "LinearProgram", "SimplexResult"]


class Sense(enum.Enum):
    MINIMIZE = "min"
    MAXIMIZE = "max"


class Relation(enum.Enum):
    LE = "<="
    GE = ">="
    EQ = "="


class Status(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[Fraction, ...]
    relation: Relation
    rhs: Fraction
    name: str = ""

    def lhs(self, x: Sequence[Fraction]) -> Fraction:
        return sum((a * v for a, v in zip(self.coeffs, x) if a), Fraction(0))

    def satisfied(self, x: Sequence[Fraction]) -> bool:
        lhs = self.lhs(x)
        if self.relation is Relation.LE:
            return lhs <= self.rhs
        if self.relation is Relation.GE:
            return lhs >= self.rhs
        return lhs == self.rhs


@dataclass
class LinearProgram:
    """An LP over named variables with exact rational data.

    Bounds default to ``[0, +inf)``; ``None`` stands for an infinite bound.
    """

    sense: Sense
    objective: list[Fraction]
    variable_names: list[str]
    constraints: list[Constraint] = field(default_factory=list)
    lower: list[Optional[Fraction]] = field(default_factory=list)
    upper: list[Optional[Fraction]] = field(default_factory=list)

    def __post_init__(self):
        n = len(self.objective)
        self.objective = [as_rational(c) for c in self.objective]
        if len(self.variable_names) != n:
            raise ValueError("objective and variable_names differ in length")
        if len(set(self.variable_names)) != n:
            raise ValueError("variable names must be unique")
        if not self.lower:
            self.lower = [Fraction(0)] * n
        if not self.upper:
            self.upper = [None] * n
        if len(self.lower) != n or len(self.upper) != n:
            raise ValueError("bounds do not match the number of variables")
        for con in self.constraints:
            if len(con.coeffs) != n:
                raise ValueError(f"constraint {con.name!r} has {len(con.coeffs)} coefficients, expected {n}")

    @property
    def n(self) -> int:
        return len(self.objective)

    def index(self, name: str) -> int:
        return self.variable_names.index(name)

    def add(self, coeffs, relation: Relation | str, rhs, name: str = "") -> None:
        """Append a row; ``coeffs`` is a dense sequence or a ``{name: coeff}`` dict."""
        if isinstance(coeffs, dict):
            dense = [Fraction(0)] * self.n
            for key, value in coeffs.items():
                dense[self.index(key)] += as_rational(value)
        else:
            dense = [as_rational(v) for v in coeffs]
        if len(dense) != self.n:
            raise ValueError(f"constraint {name!r} has {len(dense)} coefficients, expected {self.n}")
        self.constraints.append(Constraint(tuple(dense), Relation(relation), as_rational(rhs), name))

    def objective_value(self, x: Sequence[Fraction]) -> Fraction:
        return sum((c * v for c, v in zip(self.objective, x) if c), Fraction(0))

    def is_feasible(self, x: Sequence[Fraction]) -> bool:
        for v, lo, hi in zip(x, self.lower, self.upper):
            if lo is not None and v < lo:
                return False
            if hi is not None and v > hi:
                return False
        return all(con.satisfied(x) for con in self.constraints)

    def with_constraints(self, extra: Sequence[Constraint]) -> "LinearProgram":
        return LinearProgram(
            self.sense,
            list(self.objective),
            list(self.variable_names),
            list(self.constraints) + list(extra),
            list(self.lower),
            list(self.upper),
        )


@dataclass
class SimplexResult:
    status: Status
    optimum: Optional[Fraction] = None
    primal_solution: Optional[list[Fraction]] = None
    # one multiplier per constraint, sign convention of the stated sense:
    # for a minimization >= rows carry y >= 0, for a maximization <= rows do
    dual_solution: Optional[list[Fraction]] = None
    pivot_count: int = 0
    certified: bool = False
    certificate: dict = field(default_factory=dict)

    def to_json(self, lp: Optional[LinearProgram] = None) -> dict:
        out = {
            "status": self.status.value,
            "optimum": None if self.optimum is None else format_rational(self.optimum),
            "pivot_count": self.pivot_count,
            "certified": self.certified,
        }
        if self.primal_solution is not None:
            values = [format_rational(v) for v in self.primal_solution]
            out["primal"] = dict(zip(lp.variable_names, values)) if lp else values
        if self.dual_solution is not None:
            values = [format_rational(v) for v in self.dual_solution]
            if lp:
                out["dual"] = {(c.name or f"row{i}"): v for i, (c, v) in enumerate(zip(lp.constraints, values))}
            else:
                out["dual"] = values
        return out
