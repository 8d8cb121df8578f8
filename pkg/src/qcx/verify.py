"""Independent checkers for profiles and their piecewise-multilinear extensions.

Three levels of evidence, from cheap to brute force:

* the symmetric constraint set on the profile (a, q_0..q_d) itself;
* the quasi-copula axioms on the extension, checked on the 3^d grid and
  along every subbox edge (a multilinear function attains its extreme
  slopes on edges, so this is a complete finite check);
* k-increasingness of the extension, by computing the volume of every
  j-face of every subbox for j = 1..k.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import lcm
from typing import Iterator, Optional, Sequence

from . import kernels
from .construction import DensityField, SymmetricVertexProfile, evaluate_Q
from .rational import as_rational, binom, format_rational

__all__ = [
    "BRUTE_FORCE_DMAX",
    "FaceDescriptor",
    "FeasibilityReport",
    "Violation",
    "DifferenceTriangle",
    "difference_triangle",
    "difference_closed_form",
    "frechet_bounds",
    "check_symmetric_feasibility",
    "enumerate_k_faces",
    "face_volume",
    "grid_values",
    "check_k_increasing_extension",
    "check_quasi_copula_axioms",
]

BRUTE_FORCE_DMAX = int(os.environ.get("QCX_BRUTE_FORCE_DMAX", "7"))
MAX_REPORTED = 100


@dataclass(frozen=True, order=True)
class Violation:
    constraint: str
    index: tuple
    lhs: Fraction
    rhs: Fraction

    def to_json(self) -> dict:
        return {
            "constraint": self.constraint,
            "index": list(self.index),
            "lhs": format_rational(self.lhs),
            "rhs": format_rational(self.rhs),
        }


@dataclass
class FeasibilityReport:
    violations: list[Violation] = field(default_factory=list)
    # violations beyond the reporting cap are counted, not listed
    unreported: int = 0
    checked: int = 0

    @property
    def passed(self) -> bool:
        return not self.violations and not self.unreported

    def __bool__(self) -> bool:
        return self.passed

    def add(self, constraint: str, index: tuple, lhs, rhs) -> None:
        if len(self.violations) < MAX_REPORTED:
            self.violations.append(Violation(constraint, tuple(index), as_rational(lhs), as_rational(rhs)))
        else:
            self.unreported += 1

    def merge(self, other: "FeasibilityReport") -> "FeasibilityReport":
        out = FeasibilityReport(sorted(self.violations + other.violations), self.unreported + other.unreported)
        out.checked = self.checked + other.checked
        return out

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "checked": self.checked,
            "violations": [v.to_json() for v in sorted(self.violations)],
            "unreported": self.unreported,
        }


@dataclass(frozen=True)
class FaceDescriptor:
    """A j-face of subbox ``parent_subbox``.

    ``base_vertex`` has one entry per axis: 0 or 1 picks the lower or upper
    end of the subbox's interval on that axis; entries on free axes are
    ignored.
    """

    free_axes: frozenset[int]
    base_vertex: tuple[int, ...]
    parent_subbox: tuple[int, ...]

    def grid_vertices(self) -> Iterator[tuple[tuple[int, ...], int]]:
        """Grid indices (in {0,1,2}^d) of the face corners with their face signs."""
        axes = sorted(self.free_axes)
        j = len(axes)
        for bits in product((0, 1), repeat=j):
            g = [I + b for I, b in zip(self.parent_subbox, self.base_vertex)]
            for m, bit in zip(axes, bits):
                g[m] = self.parent_subbox[m] + bit
            yield tuple(g), (-1) ** (j - sum(bits))


@dataclass(frozen=True)
class DifferenceTriangle:
    k: int
    d: int
    delta: dict[tuple[int, int], Fraction]


def difference_triangle(q: Sequence, k: int) -> DifferenceTriangle:
    q = [as_rational(v) for v in q]
    d = len(q) - 1
    if not 1 <= k <= d:
        raise ValueError(f"need 1 <= k <= d, got k={k}, d={d}")
    delta = {(1, i): q[i] - q[i - 1] for i in range(1, d + 1)}
    for j in range(2, k + 1):
        for i in range(j, d + 1):
            delta[j, i] = delta[j - 1, i] - delta[j - 1, i - 1]
    return DifferenceTriangle(k, d, delta)


def difference_closed_form(q: Sequence, j: int, i: int) -> Fraction:
    return sum((binom(j, t) * (-1) ** t * as_rational(q[i - t]) for t in range(j + 1)), Fraction(0))


def frechet_bounds(x: Sequence) -> tuple[Fraction, Fraction]:
    x = [as_rational(v) for v in x]
    return max(Fraction(0), sum(x) - len(x) + 1), min(x)


def check_symmetric_feasibility(p: SymmetricVertexProfile) -> FeasibilityReport:
    """Symmetric constraint set with the upper corner b fixed to 1."""
    d, k, a, q = p.d, p.k, p.a, p.q
    rep = FeasibilityReport()
    rep.checked += 2
    if a < 0:
        rep.add("a>=0", (), a, 0)
    if a > 1:
        rep.add("a<=1", (), a, 1)
    for i in range(1, d + 1):
        rep.checked += 1
        if q[i] - q[i - 1] > 1 - a:
            rep.add("Lipschitz", (i,), q[i] - q[i - 1], 1 - a)
    tri = difference_triangle(q, k)
    for (j, ell), v in sorted(tri.delta.items()):
        rep.checked += 1
        if v < 0:
            rep.add("increasing", (j, ell), v, 0)
    for i in range(d):
        low = max(Fraction(0), (d - i) * a + i - d + 1)
        rep.checked += 2
        if q[i] < low:
            rep.add("lower-envelope", (i,), q[i], low)
        if q[i] > a:
            rep.add("upper-envelope", (i,), q[i], a)
    rep.checked += 1
    if q[d] != 1:
        rep.add("top-vertex", (d,), q[d], 1)
    return rep


def enumerate_k_faces(d: int, a, j: int) -> Iterator[FaceDescriptor]:
    """Every j-face of every subbox with positive width (a = 0 leaves only the top subbox)."""
    if not 1 <= j <= d:
        raise ValueError(f"need 1 <= j <= d, got j={j}, d={d}")
    a = as_rational(a)
    bits = (0, 1) if a > 0 else (1,)
    if a >= 1:
        bits = (0,)
    for I in product(bits, repeat=d):
        for axes in combinations(range(d), j):
            others = [m for m in range(d) if m not in axes]
            for fixed in product((0, 1), repeat=len(others)):
                base = [0] * d
                for m, v in zip(others, fixed):
                    base[m] = v
                yield FaceDescriptor(frozenset(axes), tuple(base), I)


def face_volume(f: DensityField, face: FaceDescriptor) -> Fraction:
    coords = (Fraction(0), f.a, Fraction(1))
    total = Fraction(0)
    for g, sign in face.grid_vertices():
        total += sign * evaluate_Q(f, [coords[t] for t in g])
    return total


def grid_values(f: DensityField) -> dict[tuple[int, ...], Fraction]:
    """The extension evaluated on {0, a, 1}^d through the integral itself."""
    coords = (Fraction(0), f.a, Fraction(1))
    return {g: evaluate_Q(f, [coords[t] for t in g]) for g in product((0, 1, 2), repeat=f.d)}


def _flat_integer_grid(values: dict[tuple[int, ...], Fraction], d: int) -> tuple[list[int], int]:
    scale = 1
    for v in values.values():
        scale = lcm(scale, v.denominator)
    flat = [0] * 3**d
    for g, v in values.items():
        flat[sum(t * 3**m for m, t in enumerate(g))] = int(v * scale)
    return flat, scale


def _decode_cell(d: int, mask: int, base: int) -> FaceDescriptor:
    digits = [(base // 3**m) % 3 for m in range(d)]
    parent, vertex = [], []
    for m, g in enumerate(digits):
        if mask >> m & 1:
            parent.append(g)
            vertex.append(0)
        else:
            # a fixed coordinate at grid index 1 is shared by both slabs; name
            # it as the upper end of the lower slab unless it sits at 2
            parent.append(0 if g <= 1 else 1)
            vertex.append(g - parent[-1])
    return FaceDescriptor(frozenset(m for m in range(d) if mask >> m & 1), tuple(vertex), tuple(parent))


def check_k_increasing_extension(
    f: DensityField,
    k: int,
    *,
    values: Optional[dict] = None,
    compiled: Optional[bool] = None,
) -> FeasibilityReport:
    """Every j-face (j = 1..k) of every positive-width subbox has volume >= 0.

    Faces shared by neighbouring subboxes are checked once.  ``values``
    may pass precomputed :func:`grid_values`.
    """
    d = f.d
    if not 1 <= k <= d:
        raise ValueError(f"need 1 <= k <= d, got k={k}, d={d}")
    if values is None:
        values = grid_values(f)
    flat, scale = _flat_integer_grid(values, d)
    use_c = kernels.ck is not None if compiled is None else compiled
    if use_c and max(map(abs, flat), default=0) * 2**d >= 2**62:
        use_c = False
    backend = kernels.ck if use_c and kernels.ck is not None else kernels.py
    if use_c and backend is kernels.ck:
        import numpy as np

        grid = np.asarray(flat, dtype=np.int64)
    else:
        grid = flat
    full = f.a > 0
    rep = FeasibilityReport()
    for j in range(1, k + 1):
        count, _, cells = backend.face_scan(grid, d, j, full, MAX_REPORTED)
        rep.checked += binom(d, j) * (2 if full else 1) ** j * (3 if full else 2) ** (d - j)
        for mask, base, vol in cells:
            face = _decode_cell(d, mask, base)
            rep.add(f"{j}-increasing", (sorted(face.free_axes), face.base_vertex, face.parent_subbox), Fraction(vol, scale), 0)
        rep.unreported += count - len(cells)
    rep.violations.sort()
    return rep


def check_quasi_copula_axioms(f: DensityField, *, values: Optional[dict] = None) -> FeasibilityReport:
    d, a = f.d, f.a
    coords = (Fraction(0), a, Fraction(1))
    if values is None:
        values = grid_values(f)
    rep = FeasibilityReport()
    for g, v in values.items():
        x = [coords[t] for t in g]
        rep.checked += 1
        if 0 in g and v != 0:
            rep.add("boundary-zero", g, v, 0)
        ones = [m for m in range(d) if g[m] != 2]
        if len(ones) <= 1:
            expected = x[ones[0]] if ones else Fraction(1)
            rep.checked += 1
            if v != expected:
                rep.add("boundary-margin", g, v, expected)
        lo, hi = frechet_bounds(x)
        rep.checked += 2
        if v < lo:
            rep.add("frechet-lower", g, v, lo)
        if v > hi:
            rep.add("frechet-upper", g, v, hi)
    # margins at midpoints of the grid intervals on each top edge
    for m in range(d):
        for u in ((a / 2), (1 + a) / 2):
            x = [Fraction(1)] * d
            x[m] = u
            rep.checked += 1
            got = evaluate_Q(f, x)
            if got != u:
                rep.add("boundary-margin", (m, format_rational(u)), got, u)
    # monotone and 1-Lipschitz along every grid edge of positive length
    for g in values:
        for m in range(d):
            if g[m] == 2:
                continue
            h = g[:m] + (g[m] + 1,) + g[m + 1 :]
            length = coords[g[m] + 1] - coords[g[m]]
            if length == 0:
                continue
            rise = values[h] - values[g]
            rep.checked += 2
            if rise < 0:
                rep.add("monotone", (g, m), rise, 0)
            if rise > length:
                rep.add("Lipschitz", (g, m), rise, length)
    rep.violations.sort()
    return rep
