"""The extremal realization: box [a, 1]^d, vertex profile, and its extension.

The extension to the whole cube splits [0, 1]^d at ``a`` on every axis into
2^d subboxes, puts a constant density on each one so that it carries the
mass the vertex values dictate, and integrates that density from the
origin.  Within each subbox the result is multilinear.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Mapping, Sequence

from .extremes import ExtremeVolume, Sign, extreme_volume
from .rational import as_rational, binom, format_rational
from .recursions import build_tables

__all__ = [
    "NoNegativeMass",
    "DegenerateSubdivision",
    "SymmetricVertexProfile",
    "GridFunction",
    "DensityField",
    "build_profile",
    "profile_volume",
    "grid_vertex_values",
    "subbox_volumes",
    "evaluate_Q",
    "density_field",
]


class NoNegativeMass(ValueError):
    """No box has negative volume at this (d, k), so there is nothing to build."""


class DegenerateSubdivision(ValueError):
    """A zero-width subbox would have to carry nonzero mass."""


@dataclass(frozen=True)
class SymmetricVertexProfile:
    d: int
    k: int
    sign: Sign
    a: Fraction
    q: tuple[Fraction, ...]
    i0: int
    candidates: tuple[tuple[int, Fraction], ...] = ()

    def replace(self, **changes) -> "SymmetricVertexProfile":
        fields = {f: getattr(self, f) for f in ("d", "k", "sign", "a", "q", "i0", "candidates")}
        fields.update(changes)
        fields["q"] = tuple(as_rational(v) for v in fields["q"])
        fields["a"] = as_rational(fields["a"])
        return SymmetricVertexProfile(**fields)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "k": self.k,
            "sign": self.sign.value,
            "a": format_rational(self.a),
            "q": [format_rational(v) for v in self.q],
            "i0": self.i0,
            "volume": format_rational(profile_volume(self)),
            "candidates": [[i, format_rational(v)] for i, v in self.candidates],
        }


def build_profile(d: int, k: int, sign) -> SymmetricVertexProfile:
    ev: ExtremeVolume = extreme_volume(d, k, sign)
    if ev.witness_index is None:
        raise NoNegativeMass(f"every box has nonnegative volume for d={d}, k={k}")
    i0 = ev.witness_index
    t = build_tables(d, k)
    # a = beta/gamma: this is what the tight rows of the reduced LP force
    a = Fraction(t.beta[k, i0], t.gamma[k, i0])
    q = [Fraction(0)] * (d + 1)
    q[i0] = Fraction(1, t.gamma[k, i0])
    for i in range(i0 + 1, d + 1):
        q[i] = sum(
            (binom(k, j) * (-1) ** (j + 1) * q[i - j] for j in range(1, k + 1) if i - j >= 0),
            Fraction(0),
        )
    return SymmetricVertexProfile(d, k, ev.sign, a, tuple(q), i0, ev.candidates)


def profile_volume(p: SymmetricVertexProfile) -> Fraction:
    d = p.d
    return sum(((-1) ** (d - i) * binom(d, i) * p.q[i] for i in range(d + 1)), Fraction(0))


@dataclass(frozen=True)
class GridFunction:
    """Values on the grid {0, a, 1}^d, keyed by grid index tuples in {0, 1, 2}^d."""

    d: int
    a: Fraction
    values: Mapping[tuple[int, ...], Fraction]

    def point(self, g: tuple[int, ...]) -> tuple[Fraction, ...]:
        coords = (Fraction(0), self.a, Fraction(1))
        return tuple(coords[t] for t in g)


def grid_vertex_values(p: SymmetricVertexProfile) -> GridFunction:
    values = {}
    for g in product((0, 1, 2), repeat=p.d):
        if 0 in g or (p.a == 0 and 1 in g):
            values[g] = Fraction(0)
        else:
            values[g] = p.q[g.count(2)]
    return GridFunction(p.d, p.a, values)


@dataclass(frozen=True)
class DensityField:
    d: int
    a: Fraction
    rho: Mapping[tuple[int, ...], Fraction]
    subbox_volume: Mapping[tuple[int, ...], Fraction]

    def lebesgue(self, I: tuple[int, ...]) -> Fraction:
        out = Fraction(1)
        for bit in I:
            out *= (1 - self.a) if bit else self.a
        return out

    @cached_property
    def _terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return [(I, r) for I, r in self.rho.items() if r]


def subbox_volumes(g: GridFunction) -> DensityField:
    d, a = g.d, g.a
    rho, vol = {}, {}
    for I in product((0, 1), repeat=d):
        total = Fraction(0)
        for corner in product((0, 1), repeat=d):
            idx = tuple(bit + c for bit, c in zip(I, corner))
            total += (-1) ** (d - sum(corner)) * g.values[idx]
        vol[I] = total
        width = Fraction(1)
        for bit in I:
            width *= (1 - a) if bit else a
        if width == 0:
            if total != 0:
                raise DegenerateSubdivision(f"zero-width subbox {I} carries mass {total}")
            rho[I] = Fraction(0)
        else:
            rho[I] = total / width
    return DensityField(d, a, rho, vol)


def evaluate_Q(f: DensityField, x: Sequence) -> Fraction:
    """Integral of the density over [0, x]; exact for rational x."""
    x = [as_rational(v) for v in x]
    if len(x) != f.d:
        raise ValueError(f"point has {len(x)} coordinates, expected {f.d}")
    for v in x:
        if not 0 <= v <= 1:
            raise ValueError(f"coordinate {v} outside [0, 1]")
    a = f.a
    lower = [min(v, a) for v in x]
    upper = [max(Fraction(0), v - a) for v in x]
    total = Fraction(0)
    for I, r in f._terms:
        term = r
        for bit, lo, hi in zip(I, lower, upper):
            term *= hi if bit else lo
            if not term:
                break
        total += term
    return total


def density_field(p: SymmetricVertexProfile) -> DensityField:
    return subbox_volumes(grid_vertex_values(p))
