import functools
import os
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from cantorbase.bases import UPBase, parse_base
from cantorbase.exact import ExactReal
from cantorbase.expansion import quasi_greedy_table

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much]
)
settings.register_profile("quick", parent=settings.get_profile("default"), max_examples=50)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

PROPERTY_EXAMPLES = 1000

# quadratic Pisot-type bases where greedy expansions of field elements are ultimately periodic
PISOT_POOL = [
    "per:[phi,phi]",
    "per:[phi]",
    "per:[1+sqrt(2)]",
    "per:[phi*phi,3+sqrt(5)]",
    "per:[1+phi,2]",
    "per:[(1+sqrt(13))/2,(5+sqrt(13))/6]",
    "per:[(16+5*sqrt(10))/9,9]",
    "pre:[sqrt(13)] per:[(1+sqrt(13))/2,(5+sqrt(13))/6]",
    "per:[2,3]",
    "per:[3,2,5]",
]

# bases whose quasi-greedy table resolves (used for table-level properties)
TABLE_POOL = PISOT_POOL + [
    "per:[3,phi,phi]",
    "per:[sqrt(6),3,(2+sqrt(6))/3]",
    "per:[31/10,420/341]",
]


@functools.lru_cache(maxsize=None)
def base_of(text: str) -> UPBase:
    return parse_base(text)


@functools.lru_cache(maxsize=None)
def table_of(base: UPBase, max_steps: int = 10_000):
    return quasi_greedy_table(base, max_steps)


def integer_bases(max_p: int = 4, max_entry: int = 5):
    return st.lists(st.integers(2, max_entry), min_size=1, max_size=max_p).map(
        lambda xs: UPBase((), tuple(ExactReal(x) for x in xs))
    )


pisot_bases = st.sampled_from(PISOT_POOL).map(base_of)


@st.composite
def points_in_unit_interval(draw, base: UPBase, max_den: int = 30):
    """Rationals, or elements of the base's quadratic field, in [0, 1]."""
    d = base.radicand
    c = draw(st.integers(1, max_den))
    if d is None or draw(st.booleans()):
        return ExactReal(Fraction(draw(st.integers(0, c)), c))
    y = ExactReal(Fraction(draw(st.integers(-20, 20)), c)) + ExactReal(0, Fraction(draw(st.integers(-4, 4)), c), d)
    return y - y.floor()


@pytest.fixture
def phi_triple():
    return base_of("per:[3,phi,phi]")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.write_sep("=", "acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
