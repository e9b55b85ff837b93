from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from cantorbase.bases import UPBase
from cantorbase.errors import SumNotGreaterThanOne, TailInequalityViolated, ZeroPeriod
from cantorbase.exact import ExactReal
from cantorbase.expansion import val, val_prefix
from cantorbase.solver import (
    auto_tail, certified_alpha, construct_alternate_base, construct_cantor_base, single_base_polynomial,
    solve_single_base, tail_inequality_holds, transformed_sum,
)
from cantorbase.words import UPWord, parse_word

W = parse_word
x = sympy.Symbol("x")


def real_roots_above_one(coeffs):
    poly = sympy.Poly(list(coeffs), x)
    return [(lo, hi) for (lo, hi), _ in poly.intervals(eps=sympy.Rational(1, 10**15)) if hi > 1]


def g(beta, word, tail=()):
    return val(UPBase((), (ExactReal(beta),) + tuple(ExactReal(t) for t in tail)), word) - 1


def test_golden_ratio_enclosure():
    enc = solve_single_base(W("11"), Fraction(1, 10**12))
    assert enc.width <= Fraction(1, 10**12)
    assert enc.g_lo_sign == 1 and enc.g_hi_sign == -1
    assert g(enc.lo, W("11")) > 0 > g(enc.hi, W("11"))
    # independent isolation of the positive root of x^2 - x - 1
    (lo, hi), = real_roots_above_one([1, -1, -1])
    assert enc.lo <= Fraction(str(hi)) and Fraction(str(lo)) <= enc.hi
    assert enc.polynomial == (1, -1, -1)


def test_integer_root_is_exact():
    enc = solve_single_base(W("2"))
    assert enc.exact == 2
    assert enc.lo < 2 < enc.hi


def test_cubic_example_against_sympy():
    enc = solve_single_base(W("201"))
    assert enc.polynomial == (1, -2, 0, -1)
    (lo, hi), = real_roots_above_one(enc.polynomial)
    assert enc.lo <= Fraction(str(hi)) and Fraction(str(lo)) <= enc.hi


def test_periodic_polynomial():
    assert single_base_polynomial(W("2(10)")) == (1, -2, -2, 2)
    assert single_base_polynomial(W("(1)")) == (1, -2)


def test_nested_enclosures():
    coarse = solve_single_base(W("1(12)"), Fraction(1, 10**6))
    fine = solve_single_base(W("1(12)"), Fraction(1, 10**7))
    assert coarse.lo <= fine.lo and fine.hi <= coarse.hi


@pytest.mark.parametrize("word", ["1", "01", "0", "001"])
def test_small_sums_rejected_everywhere(word):
    a = W(word)
    with pytest.raises(SumNotGreaterThanOne):
        solve_single_base(a)
    with pytest.raises(SumNotGreaterThanOne):
        construct_alternate_base(a, 2)
    with pytest.raises(ZeroPeriod):
        construct_cantor_base(a)


def test_cantor_base_without_zero_blocks():
    cb = construct_cantor_base(W("(1)"))
    assert [cb.base.beta_at(n) for n in range(5)] == [2] * 5
    assert cb.blocks(0) == []


def test_cantor_base_leading_zero_block():
    cb = construct_cantor_base(W("00(1)"))
    first, = cb.blocks(1)
    assert (first.start, first.length) == (0, 2)
    assert 1 < first.alpha and first.alpha ** 2 < 2


def test_cantor_base_telescopes_at_twenty_boundaries():
    a = W("(102)")
    cb = construct_cantor_base(a)
    blocks = cb.blocks(20)
    assert [b.start for b in blocks] == list(range(1, 60, 3))
    assert all(b.length == 1 for b in blocks)
    for m in cb.boundaries(20):
        assert 1 - val_prefix(cb.base, a, m) == 1 / cb.base.product_prefix(m)


def test_certified_alpha():
    for digit, length in [(1, 1), (1, 5), (9, 3), (2, 12)]:
        alpha = certified_alpha(digit, length)
        assert 1 < alpha and alpha ** length < digit + 1


def test_alternate_base_examples():
    sol = construct_alternate_base(W("11"), 2, [2])
    assert sol.enclosure.exact == Fraction(3, 2) or Fraction(3, 2) in sol.enclosure
    tol = Fraction(1, 10**9)
    sol = construct_alternate_base(W("2(10)"), 2, [2], tol)
    base_lo, base_hi = sol.base_at(sol.enclosure.lo), sol.base_at(sol.enclosure.hi)
    assert val(base_lo, W("2(10)")) > 1 > val(base_hi, W("2(10)"))
    mid = sol.base_at(sol.enclosure.midpoint())
    assert abs(val(mid, W("2(10)")) - 1) <= tol


def test_alternate_p1_delegates():
    sol = construct_alternate_base(W("11"), 1)
    assert sol.tail == ()
    assert sol.enclosure.polynomial == (1, -1, -1)


def test_tail_inequality():
    with pytest.raises(TailInequalityViolated):
        construct_alternate_base(W("2"), 2, [3])
    # equality in the tail inequality can leave no beta_0 > 1
    with pytest.raises(TailInequalityViolated):
        construct_alternate_base(W("02"), 2, [2])
    assert transformed_sum(W("02"), [2]) == 1
    assert auto_tail(3, 0, 2) == (Fraction(4, 3), Fraction(4, 3))
    assert auto_tail(2, 1, 2) == (Fraction(3, 2),)
    assert tail_inequality_holds(auto_tail(3, 0, 2), 3, 0, 2)
    assert not tail_inequality_holds((Fraction(3, 2), Fraction(3, 2)), 3, 0, 2, strict=True)


digit_words = st.builds(
    UPWord, st.lists(st.integers(0, 4), max_size=4).map(tuple), st.lists(st.integers(0, 4), min_size=1, max_size=3).map(tuple)
)


@settings(max_examples=200)
@given(digit_words)
def test_single_base_certificate(a):
    assume(a.digit_sum_exceeds(1))
    enc = solve_single_base(a, Fraction(1, 10**8))
    assert enc.width <= Fraction(1, 10**8)
    if enc.exact is not None:
        assert g(enc.exact, a) == 0
    assert g(enc.lo, a) > 0 > g(enc.hi, a)
    assert enc.hi >= a[0]
    if max(a.preperiod + a.period) <= a[0]:
        assert enc.lo <= a[0] + 1


@settings(max_examples=200)
@given(digit_words, st.integers(2, 3))
def test_alternate_certificate(a, p):
    assume(a.digit_sum_exceeds(1))
    sol = construct_alternate_base(a, p, tol=Fraction(1, 10**6))
    assert all(t > 1 for t in sol.tail)
    assert tail_inequality_holds(sol.tail, p, sol.horizon, sum(a.prefix(sol.horizon + 1)), strict=True)
    assert transformed_sum(a, sol.tail) > 1
    assert g(sol.enclosure.lo, a, sol.tail) >= 0 >= g(sol.enclosure.hi, a, sol.tail)


@settings(max_examples=200)
@given(digit_words)
def test_cantor_base_telescopes(a):
    assume(any(a.period))
    cb = construct_cantor_base(a)
    for m in cb.boundaries(4):
        assert 1 - val_prefix(cb.base, a, m) == 1 / cb.base.product_prefix(m)
    assert all(cb.base.beta_at(n) > 1 for n in range(20))
