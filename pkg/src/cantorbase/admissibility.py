"""Membership in D (greedy expansions), S (its closure) and Pref(D), the
Parry-type tests, and the X/Y factorisation sets.

Every "for all n" condition is reduced to finitely many checks: for a UP word
``a`` and UP base, the pair ``(shift(a, n), class of n)`` is periodic in ``n``
once ``n >= max(P, |u_a|)``, with period ``lcm(|v_a|, p)``.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Sequence

from .bases import UPBase
from .errors import NotAlternateBase, NotARepresentationOf1, UnknownQuasiGreedy, XOutOfRange
from .exact import ExactReal, Number
from .expansion import default_max_steps, Expansion, QuasiGreedyTable, Unknown, quasi_greedy_table, val
from .words import FiniteWord, UPWord, lex_compare


def _table(base: UPBase, table: QuasiGreedyTable | None, max_steps: int | None) -> QuasiGreedyTable:
    if table is None:
        return quasi_greedy_table(base, max_steps)
    if table.base != base:
        raise ValueError("table was computed for a different base")
    return table


def _budgets(max_steps: int | None) -> list[int]:
    top = default_max_steps() if max_steps is None else max_steps
    out = []
    b = 64
    while b < top:
        out.append(b)
        b *= 4
    return out + [top]


def _with_table(func):
    """Run ``func`` with a given table, or with tables of growing step budget.

    Periodic and finite expansions are detected exactly at any budget, so a
    small budget only matters when it leaves an answer undecided.
    """

    @functools.wraps(func)
    def wrapper(base, *args, table=None, max_steps=None, **kwargs):
        if table is not None:
            return func(base, *args, table=_table(base, table, max_steps), **kwargs)
        budgets = _budgets(max_steps)
        for i, budget in enumerate(budgets):
            try:
                return func(base, *args, table=quasi_greedy_table(base, budget), **kwargs)
            except UnknownQuasiGreedy:
                if i == len(budgets) - 1:
                    raise

    return wrapper


def compare_to_expansion(a: UPWord, e: Expansion) -> int:
    """Lexicographic sign of ``a - e``.

    Against an Unknown expansion only the known prefix is used; if the
    comparison is not settled there, UnknownQuasiGreedy is raised.
    """
    if isinstance(e, UPWord):
        return lex_compare(a, e)
    for i, d in enumerate(e.prefix):
        if a[i] != d:
            return -1 if a[i] < d else 1
    raise UnknownQuasiGreedy(f"comparison with an unresolved expansion needs more than {len(e.prefix)} digits")


def _shift_horizon(base: UPBase, a: UPWord, offset: int) -> int:
    return max(base.P, a.m + offset) + math.lcm(a.n, base.p)


def _check_shifts(base: UPBase, table: QuasiGreedyTable, a: UPWord, strict: bool, first: int, offset: int) -> bool:
    # offset: test membership for the shifted base beta^(offset)
    for n in range(first, _shift_horizon(base, a, offset) + 1):
        c = compare_to_expansion(a.shift(n), table.dstar_at_shift(n + offset))
        if c > 0 or (strict and c == 0):
            return False
    return True


@_with_table
def in_D(base: UPBase, a: UPWord, table: QuasiGreedyTable | None = None,
         max_steps: int | None = None, shift: int = 0) -> bool:
    """Whether ``a`` is the greedy expansion of some x in [0, 1).

    ``shift`` selects the base ``beta^(shift)`` while reusing the table of ``base``.
    """
    return _check_shifts(base, table, a, True, 0, shift)


@_with_table
def in_S(base: UPBase, a: UPWord, table: QuasiGreedyTable | None = None,
         max_steps: int | None = None, shift: int = 0) -> bool:
    """Membership in the closure S of D: every shift is ``<=`` its quasi-greedy word."""
    return _check_shifts(base, table, a, False, 0, shift)


@_with_table
def is_greedy_expansion(base: UPBase, a: UPWord, x: Number, table: QuasiGreedyTable | None = None,
                        max_steps: int | None = None) -> bool:
    """Whether ``a`` is ``d_beta(x)``: ``val(a) = x`` and ``shift(a, n) < d*`` for n >= 1."""
    x = ExactReal.coerce(x)
    if x < 0 or x > 1:
        raise XOutOfRange(f"x = {x} is outside [0, 1]")
    if val(base, a) != x:
        return False
    return _check_shifts(base, table, a, True, 1, 0)


@_with_table
def parry2_check(base: UPBase, a: UPWord, table: QuasiGreedyTable | None = None,
                 max_steps: int | None = None) -> bool:
    """Decide ``a == d_beta(1)`` for an alternate base without consulting class 0.

    Conditions: ``shift(a, pm) < a`` for m >= 1 and
    ``shift(a, pm + i) < d*`` of class i for 1 <= i < p.
    """
    if not base.is_alternate():
        raise NotAlternateBase("the refined test needs an alternate base")
    if val(base, a) != 1:
        raise NotARepresentationOf1(f"{a} does not represent 1")
    p = base.p
    for n in range(1, a.m + math.lcm(a.n, p) + 1):
        i = n % p
        ref: Expansion = a if i == 0 else table.dstar[i]
        if compare_to_expansion(a.shift(n), ref) >= 0:
            return False
    return True


@_with_table
def in_pref_D(base: UPBase, w: Sequence[int], table: QuasiGreedyTable | None = None,
              max_steps: int | None = None, shift: int = 0) -> bool:
    """Whether the finite word ``w`` is a prefix of some word of D.

    Uses ``w in Pref(D)  <=>  w 0^w in D``.  Proof: the right side gives the
    left; conversely if ``w x in D`` then each ``shift(w 0^w, n)`` is
    ``<= shift(w x, n) < d*``.  Because no ``d*`` ends in ``0^w``, the test
    ``shift(w 0^w, n) < d*`` reduces to ``w[n:] <= d*[:len(w) - n]``.
    """
    w = tuple(w)
    for n in range(len(w)):
        e = table.dstar_at_shift(n + shift)
        k = len(w) - n
        if isinstance(e, UPWord):
            ref = e.prefix(k)
        else:
            if len(e.prefix) < k:
                # the known prefix may still settle it
                head = e.prefix
                if w[n:n + len(head)] != head:
                    if w[n:n + len(head)] > head:
                        return False
                    continue
                raise UnknownQuasiGreedy(f"need {k} digits of an unresolved quasi-greedy expansion")
            ref = e.prefix[:k]
        if w[n:] > ref:
            return False
    return True


@_with_table
def in_factor_language(base: UPBase, w: Sequence[int], table: QuasiGreedyTable | None = None,
                       max_steps: int | None = None) -> bool:
    """Membership in Fac(Sigma_beta) as the union of Pref(D) over all shift classes."""
    return any(in_pref_D(base, w, table=table, shift=c) for c in range(base.num_classes))


def _dstar_digits(table: QuasiGreedyTable, shift: int, k: int) -> FiniteWord:
    e = table.dstar_at_shift(shift)
    if isinstance(e, UPWord):
        return e.prefix(k)
    if len(e.prefix) < k:
        raise UnknownQuasiGreedy(f"need {k} digits of an unresolved quasi-greedy expansion")
    return e.prefix[:k]


@_with_table
def x_set(base: UPBase, length: int, table: QuasiGreedyTable | None = None,
          max_steps: int | None = None, shift: int = 0) -> list[FiniteWord]:
    """``{t_0 ... t_{l-2} s : 0 <= s < t_{l-1}}`` for ``d* = t_0 t_1 ...``."""
    if length < 1:
        raise ValueError("length must be >= 1")
    t = _dstar_digits(table, shift, length)
    return [t[:-1] + (s,) for s in range(t[-1])]


@_with_table
def y_set(base: UPBase, h: int, max_len: int, table: QuasiGreedyTable | None = None,
          max_steps: int | None = None, shift: int = 0) -> list[FiniteWord]:
    """Union of the X sets with ``length mod p == h``, truncated at ``max_len``."""
    if not base.is_alternate():
        raise NotAlternateBase("Y sets are defined for alternate bases")
    if not 0 <= h < base.p:
        raise ValueError(f"h must lie in [0, {base.p})")
    out: list[FiniteWord] = []
    for length in range(1, max_len + 1):
        if length % base.p == h:
            out.extend(x_set(base, length, table=table, shift=shift))
    return out


@_with_table
def x_decomposition(base: UPBase, a: UPWord, blocks: int, table: QuasiGreedyTable | None = None,
                    max_steps: int | None = None) -> list[FiniteWord]:
    """Split the first ``blocks`` blocks of a word of D into X-set words.

    Block k starts at position n and ends at the first letter where the word
    drops below the quasi-greedy expansion of class n.
    """
    out: list[FiniteWord] = []
    pos = 0
    for _ in range(blocks):
        ref = table.dstar_at_shift(pos)
        k = 0
        limit = _shift_horizon(base, a, pos) + (ref.m + ref.n if isinstance(ref, UPWord) else len(ref.prefix))
        while a[pos + k] == _dstar_digits(table, pos, k + 1)[k]:
            k += 1
            if k > limit:
                raise ValueError(f"{a} is not below its quasi-greedy bound at position {pos}")
        if a[pos + k] > _dstar_digits(table, pos, k + 1)[k]:
            raise ValueError(f"{a} exceeds its quasi-greedy bound at position {pos}")
        out.append(a.prefix(pos + k + 1)[pos:])
        pos += k + 1
    return out


@dataclass(frozen=True)
class LanguageHandle:
    """One of the languages D, S or Fac attached to a base."""

    base: UPBase
    table: QuasiGreedyTable
    kind: str = "D"

    @classmethod
    def build(cls, base: UPBase, kind: str = "D", max_steps: int | None = None) -> LanguageHandle:
        if kind not in ("D", "S", "Fac"):
            raise ValueError(f"unknown language kind {kind!r}")
        return cls(base, quasi_greedy_table(base, max_steps), kind)

    def __contains__(self, word: UPWord | Sequence[int]) -> bool:
        if self.kind == "Fac":
            if isinstance(word, UPWord):
                raise TypeError("Fac contains finite words")
            return in_factor_language(self.base, word, table=self.table)
        if not isinstance(word, UPWord):
            raise TypeError(f"{self.kind} contains infinite words")
        test = in_D if self.kind == "D" else in_S
        return test(self.base, word, table=self.table)


__all__ = [
    "compare_to_expansion", "in_D", "in_S", "is_greedy_expansion", "parry2_check",
    "in_pref_D", "in_factor_language", "x_set", "y_set", "x_decomposition", "LanguageHandle", "Unknown",
]
