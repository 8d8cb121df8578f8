"""Builders for the four LP families of the extreme-volume problem.

* ``full``      -- one variable per box vertex plus the lower corner a_1..a_d
* ``symmetric`` -- permutation-symmetric vertex values q_0..q_d and one a
* ``reduced``   -- a, b, q_0 and the difference variables delta
* ``dual``      -- the four-variable dual of ``reduced`` (y_1..y_4)

In ``full`` and ``symmetric`` the upper corner b is fixed to 1 and the
strict inequality a < b is relaxed to a <= 1.
"""

from __future__ import annotations

import os
from fractions import Fraction
from itertools import product

from ..extremes import Sign
from ..rational import binom
from ..recursions import build_tables, check_range
from .model import Constraint, LinearProgram, Relation, Sense

__all__ = [
    "FULL_LP_DMAX",
    "build_full_lp",
    "build_symmetric_lp",
    "build_reduced_lp",
    "build_dual_lp",
    "transpose_dual",
    "reduced_variable_names",
    "build_lp",
]

FULL_LP_DMAX = int(os.environ.get("QCX_FULL_LP_DMAX", "5"))


def _sense(sign: Sign) -> Sense:
    return Sense.MINIMIZE if Sign.parse(sign) is Sign.MINUS else Sense.MAXIMIZE


def _bits(I: tuple[int, ...]) -> str:
    return "".join(map(str, I))


def build_full_lp(d: int, k: int, sign, *, d_max: int | None = None) -> LinearProgram:
    check_range(d, k)
    cap = FULL_LP_DMAX if d_max is None else d_max
    if d > cap:
        raise ValueError(f"full LP has 2^d + d variables; d={d} exceeds the cap {cap}")
    sign = Sign.parse(sign)
    vertices = list(product((0, 1), repeat=d))
    names = [f"a{m + 1}" for m in range(d)] + [f"q{_bits(I)}" for I in vertices]
    col = {I: d + t for t, I in enumerate(vertices)}
    objective = [Fraction(0)] * d + [Fraction((-1) ** (d - sum(I))) for I in vertices]
    lp = LinearProgram(
        _sense(sign),
        objective,
        names,
        lower=[Fraction(0)] * len(names),
        upper=[Fraction(1)] * d + [None] * len(vertices),
    )
    n = len(names)

    def row(entries: dict[int, int]) -> tuple[Fraction, ...]:
        dense = [Fraction(0)] * n
        for j, v in entries.items():
            dense[j] += v
        return tuple(dense)

    rows: list[Constraint] = []
    for ell in range(d):
        for I in vertices:
            if I[ell] == 0:
                J = I[:ell] + (1,) + I[ell + 1 :]
                rows.append(
                    Constraint(row({col[J]: 1, col[I]: -1, ell: 1}), Relation.LE, Fraction(1), f"lip[{ell + 1}:{_bits(I)}]")
                )
    for j in range(1, k + 1):
        for free in _subsets(d, j):
            others = [m for m in range(d) if m not in free]
            for fixed in product((0, 1), repeat=len(others)):
                entries: dict[int, int] = {}
                for bits in product((0, 1), repeat=j):
                    J = [0] * d
                    for m, v in zip(others, fixed):
                        J[m] = v
                    for m, v in zip(free, bits):
                        J[m] = v
                    entries[col[tuple(J)]] = (-1) ** (j - sum(bits))
                label = "".join("*" if m in free else str(fixed[others.index(m)]) for m in range(d))
                rows.append(Constraint(row(entries), Relation.GE, Fraction(0), f"face{j}[{label}]"))
    for I in vertices:
        zeros = [m for m in range(d) if I[m] == 0]
        entries = {col[I]: 1}
        for m in zeros:
            entries[m] = -1
        rows.append(Constraint(row(entries), Relation.GE, Fraction(sum(I) - d + 1), f"lower[{_bits(I)}]"))
        if zeros:
            for m in zeros:
                rows.append(Constraint(row({col[I]: 1, m: -1}), Relation.LE, Fraction(0), f"upper[{_bits(I)}:{m + 1}]"))
        else:
            rows.append(Constraint(row({col[I]: 1}), Relation.LE, Fraction(1), f"upper[{_bits(I)}]"))
    lp.constraints = rows
    return lp


def _subsets(d: int, j: int):
    from itertools import combinations

    return [list(c) for c in combinations(range(d), j)]


def build_symmetric_lp(d: int, k: int, sign) -> LinearProgram:
    check_range(d, k)
    names = ["a"] + [f"q{i}" for i in range(d + 1)]
    objective = [Fraction(0)] + [Fraction((-1) ** (d - i) * binom(d, i)) for i in range(d + 1)]
    lp = LinearProgram(_sense(sign), objective, names, upper=[Fraction(1)] + [None] * (d + 1))
    for i in range(1, d + 1):
        lp.add({f"q{i}": 1, f"q{i - 1}": -1, "a": 1}, "<=", 1, f"lip[{i}]")
    for j in range(1, k + 1):
        for ell in range(j, d + 1):
            lp.add({f"q{ell - t}": (-1) ** t * binom(j, t) for t in range(j + 1)}, ">=", 0, f"diff{j}[{ell}]")
    for i in range(d):
        lp.add({f"q{i}": 1, "a": -(d - i)}, ">=", i - d + 1, f"lower[{i}]")
        lp.add({f"q{i}": 1, "a": -1}, "<=", 0, f"upper[{i}]")
    lp.add({f"q{d}": 1}, ">=", 1, f"lower[{d}]")
    lp.add({f"q{d}": 1}, "<=", 1, f"upper[{d}]")
    return lp


def reduced_variable_names(d: int, k: int) -> list[str]:
    return (
        ["a", "b", "q0", "delta1^(1)"]
        + [f"delta{i}^({i})" for i in range(2, k)]
        + [f"delta{i}^({k})" for i in range(k, d + 1)]
    )


def build_reduced_lp(d: int, k: int, sign) -> LinearProgram:
    t = build_tables(d, k)
    names = reduced_variable_names(d, k)
    lower_deltas = [f"delta{i}^({i})" for i in range(2, k)]
    top = {i: f"delta{i}^({k})" for i in range(k, d + 1)}
    objective = [Fraction(0)] * 4 + [Fraction(0)] * len(lower_deltas)
    objective += [Fraction((-1) ** (d + i) * binom(d - k, i - k)) for i in range(k, d + 1)]
    lp = LinearProgram(_sense(sign), objective, names)
    lp.add({"b": 1}, "<=", 1, "y1")
    row = {"a": 1, "b": -1, "delta1^(1)": 1}
    row.update({f"delta{i}^({i})": t.alpha[k, i] for i in range(2, k)})
    row.update({top[i]: t.alpha[k, i] for i in range(k, d + 1)})
    lp.add(row, "<=", 0, "y2")
    row = {"a": -1, "q0": 1, "delta1^(1)": d - 1}
    row.update({f"delta{i}^({i})": t.beta[k, i] for i in range(2, k)})
    row.update({top[i]: t.beta[k, i] for i in range(k, d)})
    lp.add(row, "<=", 0, "y3")
    row = {"b": d, "q0": -1, "delta1^(1)": -d}
    row.update({f"delta{i}^({i})": -t.gamma[k, i] for i in range(2, k)})
    row.update({top[i]: -t.gamma[k, i] for i in range(k, d + 1)})
    lp.add(row, "<=", d - 1, "y4")
    return lp


def build_dual_lp(d: int, k: int, sign) -> LinearProgram:
    """The four-variable dual, transcribed row by row from its printed form."""
    t = build_tables(d, k)
    sign = Sign.parse(sign)
    names = ["y1", "y2", "y3", "y4"]
    if sign is Sign.MINUS:
        lp = LinearProgram(Sense.MAXIMIZE, [-1, 0, 0, -(d - 1)], names)
    else:
        lp = LinearProgram(Sense.MINIMIZE, [1, 0, 0, d - 1], names)
    lp.add([1, -1, 0, d], ">=", 0, "b")
    lp.add([0, 1, -1, 0], ">=", 0, "a")
    lp.add([0, 0, 1, -1], ">=", 0, "q0")
    lp.add([0, 1, d - 1, -d], ">=", 0, "delta1^(1)")
    for i in range(2, k):
        lp.add([0, t.alpha[k, i], t.beta[k, i], -t.gamma[k, i]], ">=", 0, f"delta{i}^({i})")
    for i in range(k, d + 1):
        parity = d + 1 + i if sign is Sign.MINUS else d + i
        lp.add(
            [0, t.alpha[k, i], t.beta[k, i], -t.gamma[k, i]],
            ">=",
            (-1) ** parity * binom(d - k, i - k),
            f"delta{i}^({k})",
        )
    return lp


def transpose_dual(primal: LinearProgram) -> LinearProgram:
    """Mechanical dual of an LP with only <= rows and x >= 0.

    ``min c x, A x <= b`` becomes ``max -b y, A^T y >= -c``;
    ``max c x, A x <= b`` becomes ``min b y, A^T y >= c``; y >= 0 in both.
    Dual rows are named after the primal variables, dual variables after
    the primal rows.
    """
    for con in primal.constraints:
        if con.relation is not Relation.LE:
            raise ValueError("transpose_dual expects <= rows only")
    if any(lo != 0 for lo in primal.lower) or any(hi is not None for hi in primal.upper):
        raise ValueError("transpose_dual expects x >= 0 with no upper bounds")
    names = [c.name for c in primal.constraints]
    b = [c.rhs for c in primal.constraints]
    if primal.sense is Sense.MINIMIZE:
        dual = LinearProgram(Sense.MAXIMIZE, [-v for v in b], names)
        rhs = [-c for c in primal.objective]
    else:
        dual = LinearProgram(Sense.MINIMIZE, list(b), names)
        rhs = list(primal.objective)
    for j, var in enumerate(primal.variable_names):
        dual.add([c.coeffs[j] for c in primal.constraints], ">=", rhs[j], var)
    return dual


def build_lp(variant: str, d: int, k: int, sign) -> LinearProgram:
    builders = {
        "full": build_full_lp,
        "symmetric": build_symmetric_lp,
        "reduced": build_reduced_lp,
        "dual": build_dual_lp,
    }
    try:
        return builders[variant](d, k, sign)
    except KeyError:
        raise ValueError(f"unknown LP variant {variant!r}") from None
