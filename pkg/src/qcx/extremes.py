"""Closed-form extreme box volumes over k-increasing d-quasi-copulas."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .rational import binom, format_rational
from .recursions import RecursionTables, build_tables, check_range

__all__ = [
    "Sign",
    "ExtremeVolume",
    "candidate_value",
    "extreme_volume",
    "extreme_table",
]


class Sign(enum.Enum):
    MINUS = "minus"
    PLUS = "plus"

    @classmethod
    def parse(cls, value) -> "Sign":
        if isinstance(value, cls):
            return value
        return cls(str(value).lower())


@dataclass(frozen=True)
class ExtremeVolume:
    sign: Sign
    d: int
    k: int
    value: Fraction
    witness_index: Optional[int]
    candidates: tuple[tuple[int, Fraction], ...]

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "k": self.k,
            "sign": self.sign.value,
            "value": format_rational(self.value),
            "i0": self.witness_index,
            "candidates": [[i, format_rational(v)] for i, v in self.candidates],
        }


def candidate_value(d: int, k: int, i: int, tables: Optional[RecursionTables] = None) -> Fraction:
    """(-1)^(d-i) C(d-k, i-k) / gamma_i^(k)."""
    if not k <= i <= d:
        raise ValueError(f"candidate index i={i} outside [{k}, {d}]")
    if tables is None:
        tables = build_tables(d, k)
    return Fraction((-1) ** (d - i) * binom(d - k, i - k), tables.gamma[k, i])


@lru_cache(maxsize=None)
def _extreme(d: int, k: int, sign: Sign) -> ExtremeVolume:
    check_range(d, k)
    tables = build_tables(d, k)
    candidates = tuple((i, candidate_value(d, k, i, tables)) for i in range(k, d + 1))
    if sign is Sign.MINUS:
        best = min(v for _, v in candidates)
        if best >= 0:
            return ExtremeVolume(sign, d, k, Fraction(0), None, candidates)
    else:
        best = max(v for _, v in candidates)
    # smallest index attaining the extremum
    i0 = next(i for i, v in candidates if v == best)
    return ExtremeVolume(sign, d, k, best, i0, candidates)


def extreme_volume(d: int, k: int, sign) -> ExtremeVolume:
    return _extreme(d, k, Sign.parse(sign))


def extreme_table(d_max: int, sign) -> dict[tuple[int, int], Optional[Fraction]]:
    """Map ``(k, d)`` to the extreme value, ``None`` above the diagonal."""
    if d_max < 2:
        raise ValueError(f"d_max must be >= 2, got {d_max}")
    sign = Sign.parse(sign)
    return {
        (k, d): extreme_volume(d, k, sign).value if k <= d else None
        for k in range(2, d_max + 1)
        for d in range(2, d_max + 1)
    }
