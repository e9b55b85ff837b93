from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import PROPERTY_EXAMPLES, TABLE_POOL, base_of, integer_bases, pisot_bases, points_in_unit_interval, table_of
from cantorbase.bases import thue_morse_base
from cantorbase.errors import NegativeInput, XOutOfRange
from cantorbase.exact import PHI, ExactReal, parse_number
from cantorbase.expansion import (
    FINITE, PERIODIC, Unknown, default_max_steps, expansion_of, greedy_digits, quasi_greedy_table, t_step,
    val, val_prefix,
)
from cantorbase.words import UPWord, lex_compare, parse_word

GOLDEN = [
    ("per:[3,phi,phi]", ["3", "110", "1(110)"], ["(210)", "(102)", "1(110)"]),
    ("per:[(1+sqrt(13))/2,(5+sqrt(13))/6]", ["201", "11"], ["200(10)", "(10)"]),
    ("per:[sqrt(6),3,(2+sqrt(6))/3]", ["2(10)", "3", "11002"], None),
    ("pre:[sqrt(13)] per:[(1+sqrt(13))/2,(5+sqrt(13))/6]", ["310101", "2010", "110"], ["31010(01)", "20(01)", "(10)"]),
    ("per:[(16+5*sqrt(10))/9,9]", None, ["34(27)", "834(27)"]),
    ("per:[2,3]", ["2", "3"], ["(12)", "(21)"]),
    ("per:[phi*phi,3+sqrt(5)]", None, ["2(30)", "5(03)"]),
]


@pytest.mark.parametrize("base,greedy,quasi", GOLDEN)
def test_golden_expansions_of_one(base, greedy, quasi):
    table = quasi_greedy_table(base_of(base))
    if greedy is not None:
        assert list(table.expansions) == [parse_word(w) for w in greedy]
    if quasi is not None:
        assert list(table.dstar) == [parse_word(w) for w in quasi]


def test_published_expansion_with_irrational_preperiod_is_not_a_representation():
    # exact greedy run: sqrt(13), then alpha * (4 - sqrt(13)) ... reaches remainder 0 after six digits
    b = base_of("pre:[sqrt(13)] per:[(1+sqrt(13))/2,(5+sqrt(13))/6]")
    assert val(b, parse_word("3(10)")) == parse_number("(13+29*sqrt(13))/117")
    assert val(b, parse_word("3(10)")) > 1
    assert val(b, parse_word("310101")) == 1


def test_thue_morse_prefix():
    trace = greedy_digits(thue_morse_base(), 1, max_steps=50)
    assert trace.status == FINITE
    assert (trace.digits + (0,) * 8)[:8] == (2, 0, 0, 1, 0, 1, 1, 0)


def test_value_of_admissible_example():
    b = base_of("per:[3,phi,phi]")
    expected = parse_number("(19+9*sqrt(5))/(3*(7+3*sqrt(5)))")
    assert val(b, parse_word("210(110)")) == expected
    assert expected == parse_number("(-1+3*sqrt(5))/6")


def test_val_basics():
    assert val(base_of("per:[phi,phi]"), parse_word("11")) == 1
    assert val(base_of("per:[2]"), parse_word("(1)")) == 1
    assert val(base_of("per:[10]"), parse_word("(3)")) == Fraction(1, 3)
    assert val_prefix(base_of("per:[2,3]"), (1, 2), 2) == Fraction(1, 2) + Fraction(2, 6)


def test_t_step():
    assert t_step(PHI, 1) == (1, PHI - 1)
    with pytest.raises(NegativeInput):
        t_step(2, -1)


def test_greedy_input_checks():
    b = base_of("per:[2]")
    with pytest.raises(NegativeInput):
        expansion_of(b, -1)
    with pytest.raises(XOutOfRange):
        expansion_of(b, Fraction(3, 2))


def test_budget_and_environment(monkeypatch):
    b = base_of("per:[31/10,420/341]")
    assert isinstance(expansion_of(b, 1, max_steps=200), Unknown)
    monkeypatch.setenv("CANTOR_MAX_STEPS", "77")
    assert default_max_steps() == 77
    w = expansion_of(b, 1)
    assert isinstance(w, Unknown) and len(w.prefix) == 77


def test_periodic_entry_point():
    trace = greedy_digits(base_of("per:[phi]"), Fraction(1, 2))
    assert trace.status == PERIODIC
    w = trace.word()
    assert val(base_of("per:[phi]"), w) == Fraction(1, 2)


@settings(max_examples=PROPERTY_EXAMPLES)
@given(st.data())
def test_value_of_expansion_is_input(data):
    base = data.draw(pisot_bases)
    x = data.draw(points_in_unit_interval(base))
    w = expansion_of(base, x, 3000)
    assume(isinstance(w, UPWord))
    assert val(base, w) == x


@settings(max_examples=PROPERTY_EXAMPLES)
@given(st.data())
def test_remainders_stay_below_one(data):
    base = data.draw(st.sampled_from(TABLE_POOL).map(base_of) | integer_bases())
    x = data.draw(points_in_unit_interval(base))
    trace = greedy_digits(base, x, 150)
    prod = ExactReal(1)
    for n, (d, r) in enumerate(zip(trace.digits, trace.remainders)):
        prod = prod * base.beta_at(n)
        assert 0 <= r < 1
        assert 0 <= d <= base.beta_at(n).floor()
        # x = digits so far + remainder scaled by the product
        assert val_prefix(base, trace.digits, n + 1) + r / prod == x if n < 6 else True


@settings(max_examples=PROPERTY_EXAMPLES)
@given(st.data())
def test_expansion_is_monotone(data):
    base = data.draw(pisot_bases)
    x = data.draw(points_in_unit_interval(base))
    y = data.draw(points_in_unit_interval(base))
    assume(x != y)
    x, y = min(x, y), max(x, y)
    wx, wy = expansion_of(base, x, 3000), expansion_of(base, y, 3000)
    assume(isinstance(wx, UPWord) and isinstance(wy, UPWord))
    assert lex_compare(wx, wy) < 0


@settings(max_examples=PROPERTY_EXAMPLES)
@given(st.sampled_from(TABLE_POOL).map(base_of) | integer_bases())
def test_quasi_greedy_words_represent_one(base):
    table = table_of(base)
    for c, (d, ds) in enumerate(zip(table.expansions, table.dstar)):
        if isinstance(ds, Unknown):
            continue
        shifted = base.shift(c)
        assert not ds.ends_in_zeros()
        assert val(shifted, ds) == 1
        if isinstance(d, UPWord):
            assert val(shifted, d) == 1
            assert lex_compare(ds, d) <= 0
            if not d.ends_in_zeros():
                assert ds == d
