from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qcx.rational import (
    alt_binom_tail,
    alt_binom_tail_closed,
    as_rational,
    binom,
    format_rational,
    parse_rational,
)

rationals = st.fractions(max_denominator=10**6).filter(lambda x: abs(x) < 10**9)


@pytest.mark.parametrize("n,k,expected", [(4, 2, 6), (0, 0, 1), (5, 7, 0), (5, -1, 0), (10, 10, 1)])
def test_binom(n, k, expected):
    assert binom(n, k) == expected


def test_binom_rejects_negative_n():
    with pytest.raises(ValueError):
        binom(-1, 0)


@pytest.mark.parametrize("r,n,expected", [(4, 0, 0), (4, 2, 3), (3, 1, -1), (0, 0, 1)])
def test_alt_binom_tail_examples(r, n, expected):
    assert alt_binom_tail(r, n) == expected


@pytest.mark.parametrize("r,n", [(3, -1), (3, 4)])
def test_alt_binom_tail_rejects_out_of_range(r, n):
    with pytest.raises(ValueError):
        alt_binom_tail(r, n)


def test_alt_binom_identity_sweep():
    for r in range(21):
        for n in range(r + 1):
            assert alt_binom_tail(r, n) == alt_binom_tail_closed(r, n)


@pytest.mark.parametrize(
    "x,text", [(Fraction(-35, 4), "-35/4"), (Fraction(1), "1"), (Fraction(0), "0"), (Fraction(21, 10), "21/10")]
)
def test_format_and_parse(x, text):
    assert format_rational(x) == text
    assert parse_rational(text) == x


@pytest.mark.parametrize("bad", ["1.5", "1/0", "", "1/-2", "a/b", "+3"])
def test_parse_rejects(bad):
    with pytest.raises((ValueError, ZeroDivisionError)):
        parse_rational(bad)


def test_as_rational_rejects_floats():
    with pytest.raises(TypeError):
        as_rational(0.5)
    assert as_rational(3) == Fraction(3)


@given(rationals)
def test_round_trip(x):
    assert parse_rational(format_rational(x)) == x


@given(rationals, rationals, rationals)
def test_field_laws(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x * y == y * x
    assert x * (y + z) == x * y + x * z
    s = x * y + z
    assert s.denominator > 0
