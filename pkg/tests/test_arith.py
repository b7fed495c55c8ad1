from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from subsums import (
    CONTINUUM, OMEGA, InvalidArgument, RangeSet, Unsupported, finite, format_rational,
    is_dyadic, is_prime_set, parse_rational, product_range,
)
from subsums.arith import CardinalValue

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=100)
pos_rationals = st.fractions(min_value=Fraction(1, 100), max_value=50, max_denominator=100)
small_ranges = st.frozensets(st.integers(2, 12), max_size=4).map(lambda s: RangeSet(s | {1}))


@pytest.mark.parametrize("x, scale, expected", [
    ("3/4", 1, True),
    ("1/3", 1, False),
    ("1/6", "1/3", True),
    (0, 1, True),
    ("5", "3", False),
])
def test_is_dyadic(x, scale, expected):
    assert is_dyadic(x, scale) is expected


@pytest.mark.parametrize("scale", [0, "-1/2"])
def test_is_dyadic_rejects_bad_scale(scale):
    with pytest.raises(InvalidArgument):
        is_dyadic("1/2", scale)


@given(pos_rationals, pos_rationals, pos_rationals)
def test_is_dyadic_scale_invariant(x, s, t):
    assert is_dyadic(x, s) == is_dyadic(x * t, s * t)


@given(rationals, rationals)
def test_exact_round_trips(a, b):
    assert (a + b) - b == a
    if b:
        assert (a * b) / b == a


def test_parse_rational_accepts_strings_and_ints():
    assert parse_rational("6/8") == Fraction(3, 4)
    assert parse_rational(" -2 ") == -2
    assert parse_rational(5) == 5
    assert format_rational(Fraction(6, 8)) == "3/4"
    assert format_rational(Fraction(4, 2)) == "2"


@pytest.mark.parametrize("bad", [0.5, True, "1/0", "x", "1.5", None])
def test_parse_rational_refuses(bad):
    with pytest.raises(InvalidArgument):
        parse_rational(bad)


def test_cardinal_order_and_absorption():
    assert finite(3) < finite(10) < OMEGA < CONTINUUM
    assert finite(2) + OMEGA == OMEGA
    assert OMEGA + CONTINUUM == CONTINUUM
    assert finite(2) * OMEGA == OMEGA
    assert finite(0) * CONTINUUM == finite(0)
    assert finite(2) + 3 == finite(5)
    assert str(CONTINUUM) == "𝔠" and OMEGA.to_json() == "omega"
    with pytest.raises(InvalidArgument):
        CardinalValue(0, -1)


@pytest.mark.parametrize("m, l, expected", [
    ("{1,2}", "{1,2}", "{1,2,4}"),
    ("{1,2}", "{1,3}", "{1,2,3,6}"),
    ("{1,2,5}", "{1}", "{1,2,5}"),
    ("{1,ω}", "{1,2}", "{1,2,ω}"),
    ("{1,𝔠}", "{1,ω}", "{1,ω,𝔠}"),
])
def test_product_range(m, l, expected):
    assert product_range(RangeSet.parse(m), RangeSet.parse(l)) == RangeSet.parse(expected)


@given(small_ranges, small_ranges, small_ranges)
def test_product_range_commutative_associative(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * RangeSet.of(1) == a


@pytest.mark.parametrize("m, expected", [
    ("{1,2,4}", False),
    ("{1,2,3,4}", True),
    ("{1}", True),
    ("{1,2,3,6}", False),
    ("{1,3,5,7}", True),
    ("{1,2,3,4,6}", False),
])
def test_is_prime_set(m, expected):
    assert is_prime_set(RangeSet.parse(m)) is expected


@given(small_ranges, small_ranges)
def test_products_of_nontrivial_sets_are_not_prime(a, b):
    if a.finites != {1} and b.finites != {1}:
        assert not is_prime_set(a * b)


def test_is_prime_set_rejects_symbolic():
    with pytest.raises(Unsupported):
        is_prime_set(RangeSet.parse("{1,2,ω}"))


def test_range_set_basics():
    r = RangeSet.parse("{1, 2, omega}")
    assert OMEGA in r and 2 in r and 3 not in r
    assert str(r) == "{1,2,ω}" and r.to_json() == [1, 2, "omega"]
    assert not r.bounded
    with pytest.raises(Unsupported):
        r.max()
    with pytest.raises(InvalidArgument):
        RangeSet(frozenset())
    with pytest.raises(InvalidArgument):
        RangeSet.parse("1,2")
    assert RangeSet.from_values([finite(0), finite(1), CONTINUUM]) == RangeSet.parse("{1,c}")
