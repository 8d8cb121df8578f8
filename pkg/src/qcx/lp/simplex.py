"""Two-phase primal simplex on an exact fraction-free integer tableau.

The LP is first brought to ``max c x, A x (<=|>=|=) b, x >= 0, b >= 0`` with
integer rows (each row scaled by the lcm of its denominators).  The tableau
then holds integers only: every entry is the true value times a common
denominator ``D`` (the current basis determinant), and a pivot on ``p``
updates the other rows as ``(p*row - f*pivot_row) / D`` with exact division.

Bland's rule picks both the entering column (smallest index with negative
reduced cost) and the leaving row (minimum ratio, smallest basic index on
ties), so the method terminates on degenerate programs.

Pivots run through the compiled int64 kernel when available and switch to
Python ints for the rest of the solve on the first overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .. import kernels
from .certificate import CertificateError, certify_infeasible, certify_optimal, certify_unbounded
from .model import LinearProgram, Relation, Sense, SimplexResult, Status

__all__ = ["solve_simplex", "StandardForm", "to_standard_form"]

_I64 = 2**62


@dataclass
class StandardForm:
    """``max c t`` over ``t >= 0`` with integer rows and nonnegative rhs."""

    rows: list[list[int]]
    relations: list[Relation]
    rhs: list[int]
    cost: list[int]
    cost_scale: int
    # x_j = offset_j + sum(coef * t_col); one entry per original variable
    var_map: list[tuple[Fraction, list[tuple[int, int]]]]
    # std row r came from original row row_origin[r] (None for a bound row)
    # multiplied by row_factor[r]
    row_origin: list[Optional[int]]
    row_factor: list[Fraction]

    @property
    def n(self) -> int:
        return len(self.cost)


def _lcm_den(values) -> int:
    out = 1
    for v in values:
        if v:
            out = math.lcm(out, v.denominator)
    return out


def to_standard_form(lp: LinearProgram) -> StandardForm:
    var_map: list[tuple[Fraction, list[tuple[int, int]]]] = []
    bound_rows: list[tuple[int, Fraction]] = []
    ncols = 0
    for lo, hi in zip(lp.lower, lp.upper):
        if lo is not None:
            var_map.append((lo, [(ncols, 1)]))
            if hi is not None:
                bound_rows.append((ncols, hi - lo))
            ncols += 1
        elif hi is not None:
            var_map.append((hi, [(ncols, -1)]))
            ncols += 1
        else:
            var_map.append((Fraction(0), [(ncols, 1), (ncols + 1, -1)]))
            ncols += 2

    raw: list[tuple[list[Fraction], Relation, Fraction, Optional[int]]] = []
    for idx, con in enumerate(lp.constraints):
        coeffs = [Fraction(0)] * ncols
        rhs = con.rhs
        for j, a in enumerate(con.coeffs):
            if not a:
                continue
            off, parts = var_map[j]
            rhs -= a * off
            for col, sgn in parts:
                coeffs[col] += a * sgn
        raw.append((coeffs, con.relation, rhs, idx))
    for col, ub in bound_rows:
        coeffs = [Fraction(0)] * ncols
        coeffs[col] = Fraction(1)
        raw.append((coeffs, Relation.LE, ub, None))

    rows, relations, rhs_out, origin, factor = [], [], [], [], []
    flip = {Relation.LE: Relation.GE, Relation.GE: Relation.LE, Relation.EQ: Relation.EQ}
    for coeffs, rel, rhs, idx in raw:
        sgn = 1
        if rhs < 0:
            sgn, rel = -1, flip[rel]
        scale = _lcm_den(coeffs + [rhs])
        f = sgn * scale
        rows.append([int(a * f) for a in coeffs])
        relations.append(rel)
        rhs_out.append(int(rhs * f))
        origin.append(idx)
        factor.append(Fraction(f))

    c_max = lp.objective if lp.sense is Sense.MAXIMIZE else [-c for c in lp.objective]
    cost = [Fraction(0)] * ncols
    for c, (_, parts) in zip(c_max, var_map):
        for col, sgn in parts:
            cost[col] += c * sgn
    cscale = _lcm_den(cost)
    return StandardForm(
        rows, relations, rhs_out, [int(c * cscale) for c in cost], cscale, var_map, origin, factor
    )


class _Tableau:
    """Integer tableau with a kernel backend; promotes int64 -> Python ints on overflow."""

    def __init__(self, rows: list[list[int]], use_compiled: bool):
        self.D = 1
        self.compiled = use_compiled and kernels.ck is not None and _fits(rows)
        if self.compiled:
            self.M = np.array(rows, dtype=np.int64)
            self._scratch = np.empty_like(self.M)
        else:
            self.M = rows

    def _promote(self):
        self.M = self.M.tolist()
        self.compiled = False

    def set_row(self, i: int, values: list[int]) -> None:
        if self.compiled:
            if not _fits([values]):
                self._promote()
            else:
                self.M[i, :] = values
                return
        self.M[i] = list(values)

    def row(self, i: int) -> list[int]:
        return self.M[i].tolist() if self.compiled else self.M[i]

    def column(self, j: int) -> list[int]:
        if self.compiled:
            return self.M[:, j].tolist()
        return [r[j] for r in self.M]

    def entering(self, eligible: np.ndarray) -> int:
        if self.compiled:
            return kernels.ck.entering(self.M[-1], eligible)
        return kernels.py.entering(self.M[-1], eligible.tolist())

    def leaving(self, c: int, basis: list[int]) -> int:
        rhs = len(self.row(0)) - 1 if not self.compiled else self.M.shape[1] - 1
        if self.compiled:
            return kernels.ck.leaving(self.M, c, np.asarray(basis, dtype=np.int64), rhs)
        return kernels.py.leaving(self.M, c, basis, rhs)

    def pivot(self, r: int, c: int) -> None:
        p = int(self.M[r][c])
        if self.compiled:
            if kernels.ck.pivot(self.M, self._scratch, r, c, self.D):
                self.M, self._scratch = self._scratch, self.M
            else:
                self._promote()
        if not self.compiled:
            kernels.py.pivot(self.M, None, r, c, self.D)
        self.D = p
        if self.D < 0:
            self._negate()

    def _negate(self):
        self.D = -self.D
        if self.compiled:
            if np.any(self.M == np.iinfo(np.int64).min):
                self._promote()
            else:
                np.negative(self.M, out=self.M)
                return
        self.M = [[-v for v in row] for row in self.M]


def _fits(rows) -> bool:
    return all(-_I64 < v < _I64 for row in rows for v in row)


def solve_simplex(lp: LinearProgram, *, compiled: Optional[bool] = None) -> SimplexResult:
    """Solve ``lp`` exactly and certify the outcome.

    ``compiled`` forces (True) or forbids (False) the int64 kernel; the
    default uses it when the extension is importable.  A certificate that
    fails to verify raises :class:`CertificateError`.
    """
    if compiled is None:
        compiled = kernels.ck is not None
    std = to_standard_form(lp)
    m, n = len(std.rows), std.n
    ge_rows = [i for i, rel in enumerate(std.relations) if rel is Relation.GE]
    n_sur = len(ge_rows)
    unit0 = n + n_sur
    width = unit0 + m + 1
    rhs_col = width - 1

    rows = []
    for i in range(m):
        row = list(std.rows[i]) + [0] * (n_sur + m) + [std.rhs[i]]
        row[unit0 + i] = 1
        rows.append(row)
    for t, i in enumerate(ge_rows):
        rows[i][n + t] = -1
    artificial = [std.relations[i] is not Relation.LE for i in range(m)]

    # phase-1 objective row: maximize -sum(artificials)
    obj = [0] * width
    for i in range(m):
        if artificial[i]:
            for j in range(width):
                if j < unit0 or j == rhs_col:
                    obj[j] -= rows[i][j]
    rows.append(obj)
    tab = _Tableau(rows, compiled)
    basis = [unit0 + i for i in range(m)]
    eligible = np.ones(width - 1, dtype=np.uint8)
    for i in range(m):
        if artificial[i]:
            eligible[unit0 + i] = 0
    pivots = 0

    if any(artificial):
        while True:
            c = tab.entering(eligible)
            if c < 0:
                break
            r = tab.leaving(c, basis)
            tab.pivot(r, c)
            basis[r] = c
            pivots += 1
        objrow = tab.row(m)
        if objrow[rhs_col] != 0:
            y = [Fraction(objrow[unit0 + i], tab.D) - (1 if artificial[i] else 0) for i in range(m)]
            cert = certify_infeasible(std, y)
            return SimplexResult(Status.INFEASIBLE, pivot_count=pivots, certified=True, certificate=cert)
        # drive zero-valued artificials out of the basis
        for r in range(m):
            if basis[r] >= unit0 and artificial[basis[r] - unit0]:
                row = tab.row(r)
                for j in range(unit0 + m):
                    if eligible[j] and row[j] != 0:
                        tab.pivot(r, j)
                        basis[r] = j
                        pivots += 1
                        break

    full_cost = list(std.cost) + [0] * (n_sur + m)
    objrow = [0] * width
    for i in range(m):
        cb = full_cost[basis[i]]
        if cb:
            row = tab.row(i)
            for j in range(width):
                if row[j]:
                    objrow[j] += cb * row[j]
    for j in range(width - 1):
        objrow[j] -= full_cost[j] * tab.D
    tab.set_row(m, objrow)

    while True:
        c = tab.entering(eligible)
        if c < 0:
            break
        r = tab.leaving(c, basis)
        if r < 0:
            x_std = _basic_solution(tab, basis, n, rhs_col)
            col = tab.column(c)
            ray_std = [Fraction(0)] * n
            if c < n:
                ray_std[c] = Fraction(1)
            for i in range(m):
                if basis[i] < n:
                    ray_std[basis[i]] = Fraction(-col[i], tab.D)
            x = _to_original(std, x_std)
            ray = _to_original(std, ray_std, direction=True)
            cert = certify_unbounded(lp, x, ray)
            return SimplexResult(Status.UNBOUNDED, None, x, None, pivots, True, cert)
        tab.pivot(r, c)
        basis[r] = c
        pivots += 1

    x = _to_original(std, _basic_solution(tab, basis, n, rhs_col))
    objrow = tab.row(m)
    y_std = [Fraction(objrow[unit0 + i], tab.D * std.cost_scale) for i in range(m)]
    y_max = [Fraction(0)] * len(lp.constraints)
    for i, (orig, f) in enumerate(zip(std.row_origin, std.row_factor)):
        if orig is not None:
            y_max[orig] += y_std[i] * f
    optimum = lp.objective_value(x)
    cert = certify_optimal(lp, x, y_max)
    dual = y_max if lp.sense is Sense.MAXIMIZE else [-v for v in y_max]
    return SimplexResult(Status.OPTIMAL, optimum, x, dual, pivots, True, cert)


def _basic_solution(tab: _Tableau, basis, n, rhs_col) -> list[Fraction]:
    x = [Fraction(0)] * n
    col = tab.column(rhs_col)
    for i, b in enumerate(basis):
        if b < n:
            x[b] = Fraction(col[i], tab.D)
    return x


def _to_original(std: StandardForm, t: list[Fraction], direction: bool = False) -> list[Fraction]:
    out = []
    for off, parts in std.var_map:
        v = Fraction(0) if direction else off
        for col, sgn in parts:
            v += sgn * t[col]
        out.append(v)
    return out


__all__.append("CertificateError")
