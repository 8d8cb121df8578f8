"""Exact rational scalars and the binomial combinatorics used throughout.

``Rational`` is :class:`fractions.Fraction`: it is always stored in lowest
terms with a positive denominator, which is the canonical form every other
module relies on.  The text form is ``"p/q"`` (``"p"`` when ``q == 1``).
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

Rational = Fraction

__all__ = [
    "Rational",
    "as_rational",
    "format_rational",
    "parse_rational",
    "binom",
    "alt_binom_tail",
    "alt_binom_tail_closed",
]

_RATIONAL_RE = re.compile(r"^\s*(-?\d+)(?:/(\d+))?\s*$")


def as_rational(x) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are rejected: no binary floating-point value is allowed to leak
    into exact computations.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def format_rational(x) -> str:
    x = as_rational(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ValueError(f"not a rational in p/q form: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def binom(n: int, k: int) -> int:
    """C(n, k), with the convention C(n, k) = 0 for k < 0 or k > n."""
    if n < 0:
        raise ValueError(f"binom needs n >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def alt_binom_tail(r: int, n: int) -> int:
    """Sum of (-1)^j C(r, j) for j = n..r, by direct summation."""
    if not 0 <= n <= r:
        raise ValueError(f"alt_binom_tail needs 0 <= n <= r, got r={r}, n={n}")
    return sum((-1) ** j * math.comb(r, j) for j in range(n, r + 1))


def alt_binom_tail_closed(r: int, n: int) -> int:
    """Closed form (-1)^n C(r-1, n-1) of :func:`alt_binom_tail`.

    For r = 0 the full alternating sum is 1 (the empty-row case), which the
    closed form cannot express; it is returned directly.
    """
    if not 0 <= n <= r:
        raise ValueError(f"alt_binom_tail needs 0 <= n <= r, got r={r}, n={n}")
    if r == 0:
        return 1
    return (-1) ** n * binom(r - 1, n - 1)
