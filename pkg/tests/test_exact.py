import warnings
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from cantorbase.errors import MixedFieldError, ParseError
from cantorbase.exact import PHI, ExactReal, compare, floor, format_number, parse_number

RADICANDS = [2, 3, 5, 6, 10, 13]


@st.composite
def quadratics(draw, d=None):
    d = draw(st.sampled_from(RADICANDS)) if d is None else d
    a = Fraction(draw(st.integers(-60, 60)), draw(st.integers(1, 12)))
    b = Fraction(draw(st.integers(-40, 40)), draw(st.integers(1, 12)))
    return ExactReal(a, b, d)


def to_sympy(x: ExactReal):
    d = x.radicand or 1
    a, b = x.rational_part, x.irrational_coefficient
    return sympy.Rational(a.numerator, a.denominator) + sympy.Rational(b.numerator, b.denominator) * sympy.sqrt(d)


def same(a, b) -> bool:
    return sympy.expand(sympy.radsimp(a - b)) == 0


def test_golden_identities():
    assert PHI * PHI == parse_number("(3+sqrt(5))/2")
    assert PHI * PHI == PHI + 1
    assert parse_number("sqrt(6)*(2+sqrt(6))") == parse_number("6+2*sqrt(6)")
    assert floor(parse_number("(16+5*sqrt(10))/9")) == 3
    assert floor(parse_number("(1+sqrt(13))/2")) == 2
    assert compare(PHI, "1.618") == 1
    assert compare(parse_number("(5+sqrt(13))/6"), parse_number("(1+sqrt(13))/2")) == -1


def test_rational_behaves_like_fraction():
    x = ExactReal(Fraction(7, 3))
    assert x == Fraction(7, 3)
    assert hash(x) == hash(Fraction(7, 3))
    assert x.floor() == 2
    assert (-x).floor() == -3


def test_mixed_fields_rejected():
    with pytest.raises(MixedFieldError):
        _ = ExactReal(0, 1, 2) + ExactReal(0, 1, 3)


def test_non_square_free_radicand_is_reduced():
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        x = parse_number("sqrt(8)")
    assert x == ExactReal(0, 2, 2)
    assert caught


@pytest.mark.parametrize("text", ["", "sqrt(", "1+", "2**3", "sqrt(x)", "(1"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_number(text)


@pytest.mark.parametrize("text,expected", [
    ("phi", "(1+sqrt(5))/2"),
    ("1.7", "17/10"),
    ("2*sqrt(2)", "2*sqrt(2)"),
    ("-sqrt(5)/2", "-sqrt(5)/2"),
    ("6/4", "3/2"),
])
def test_format(text, expected):
    assert format_number(parse_number(text)) == expected


@settings(max_examples=1000)
@given(quadratics())
def test_floor_and_sign_match_sympy(x):
    s = to_sympy(x)
    assert x.floor() == sympy.floor(s)
    assert x.sign() == sympy.sign(s)


@settings(max_examples=1000)
@given(st.sampled_from(RADICANDS).flatmap(lambda d: st.tuples(quadratics(d), quadratics(d))))
def test_field_operations_match_sympy(pair):
    x, y = pair
    sx, sy = to_sympy(x), to_sympy(y)
    assert same(to_sympy(x + y), sx + sy)
    assert same(to_sympy(x * y), sx * sy)
    if y:
        assert same(to_sympy(x / y), sx / sy)
    assert compare(x, y) == sympy.sign(sx - sy)


@settings(max_examples=1000)
@given(quadratics())
def test_format_parse_round_trip(x):
    assert parse_number(format_number(x)) == x


@settings(max_examples=300)
@given(quadratics(), st.integers(1, 80))
def test_enclosure_contains_value(x, bits):
    lo, hi = x.enclosure(bits)
    assert lo <= x < hi
    assert hi - lo <= Fraction(1, 2 ** bits)
