"""Coefficient families gamma, alpha and beta for a fixed (d, k).

All three families are triangular arrays indexed by level ``j`` in
``[2, k]`` and position ``i`` in ``[2, d]``.  Level 2 is an explicit base
row; every higher level copies the positions ``i <= j - 2`` from the level
below and replaces the rest by suffix sums of the level below.  The suffix
sums for gamma and alpha run up to ``d``; the one for beta stops at ``d - 1``.
beta is only defined up to ``i = d - 1``; position ``d`` is stored as 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from types import MappingProxyType
from typing import Mapping

__all__ = ["RecursionTables", "build_tables", "verify_alpha_beta_gamma", "check_range"]

Table = Mapping[tuple[int, int], int]


def check_range(d: int, k: int) -> None:
    if k == 1:
        raise ValueError("k = 1 (plain quasi-copulas) is not covered here; it needs the separate k = 1 theory")
    if d < 2 or k < 2 or k > d:
        raise ValueError(f"need 2 <= k <= d, got d={d}, k={k}")


@dataclass(frozen=True)
class RecursionTables:
    d: int
    k: int
    gamma: Table
    alpha: Table
    beta: Table

    def row(self, family: str, j: int) -> tuple[int, ...]:
        """Entries ``(i=2, ..., i=d)`` of one level of a family."""
        table = getattr(self, family)
        return tuple(table[j, i] for i in range(2, self.d + 1))

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "k": self.k,
            **{
                name: {str(j): list(self.row(name, j)) for j in range(2, self.k + 1)}
                for name in ("gamma", "alpha", "beta")
            },
        }


def _unroll(d: int, k: int, base: dict[int, int], top: int) -> dict[tuple[int, int], int]:
    table = {(2, i): base[i] for i in range(2, d + 1)}
    for j in range(3, k + 1):
        for i in range(2, j - 1):
            table[j, i] = table[j - 1, i]
        suffix = 0
        for i in range(d, j - 2, -1):
            if i <= top:
                suffix += table[j - 1, i]
            table[j, i] = suffix
    return table


@lru_cache(maxsize=None)
def build_tables(d: int, k: int) -> RecursionTables:
    check_range(d, k)
    gamma = _unroll(d, k, {i: d + 1 - i for i in range(2, d + 1)}, top=d)
    alpha = _unroll(d, k, {i: 1 for i in range(2, d + 1)}, top=d)
    # beta(2, d) := 0 extends the base row to i = d.
    beta = _unroll(d, k, {i: d - i for i in range(2, d + 1)}, top=d - 1)
    return RecursionTables(
        d, k, MappingProxyType(gamma), MappingProxyType(alpha), MappingProxyType(beta)
    )


def verify_alpha_beta_gamma(tables: RecursionTables) -> bool:
    return all(
        tables.alpha[key] + tables.beta[key] == tables.gamma[key] for key in tables.gamma
    )
