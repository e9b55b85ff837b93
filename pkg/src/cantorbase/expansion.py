"""Values of digit words, the greedy algorithm, and quasi-greedy expansions of 1."""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Sequence, Union

from .bases import Base, UPBase
from .errors import NegativeInput, XOutOfRange
from .exact import ExactReal, Number
from .words import DigitStream, FiniteWord, UPWord

DEFAULT_MAX_STEPS = 10_000


def default_max_steps() -> int:
    env = os.environ.get("CANTOR_MAX_STEPS")
    return int(env) if env else DEFAULT_MAX_STEPS


@dataclass(frozen=True)
class Unknown:
    """An expansion whose periodicity was not detected within the budget.

    Not a claim of aperiodicity: only the digits in ``prefix`` are certain.
    """

    prefix: FiniteWord

    def __str__(self) -> str:
        from .words import format_finite

        return f"unknown[{format_finite(self.prefix)}...]"


Expansion = Union[UPWord, Unknown]


def val(base: UPBase, word: UPWord) -> ExactReal:
    """Exact value ``sum_n a_n / (beta_0 ... beta_n)`` of a UP word in a UP base."""
    start = max(base.P, word.m)
    block = math.lcm(base.p, word.n)
    total = ExactReal(0)
    prod = ExactReal(1)
    for n in range(start):
        prod = prod * base.beta_at(n)
        if word[n]:
            total = total + ExactReal(word[n]) / prod
    # from `start` on, base and word both repeat every `block` letters
    inner = ExactReal(0)
    q = ExactReal(1)
    for k in range(block):
        q = q * base.beta_at(start + k)
        d = word[start + k]
        if d:
            inner = inner + ExactReal(d) / q
    if not inner:
        return total
    return total + inner * q / ((q - 1) * prod)


def val_prefix(base: Base, word: UPWord | Sequence[int] | DigitStream, n: int) -> ExactReal:
    """``sum_{k<n} a_k / (beta_0 ... beta_k)``; works for any base."""
    if n < 0:
        raise ValueError("n must be non-negative")
    digits = DigitStream.of(word)
    total = ExactReal(0)
    prod = ExactReal(1)
    for k in range(n):
        prod = prod * base.beta_at(k)
        d = digits[k]
        if d:
            total = total + ExactReal(d) / prod
    return total


def t_step(beta: Number, x: Number) -> tuple[int, ExactReal]:
    """One greedy step: ``(floor(beta x), beta x - floor(beta x))``."""
    x = ExactReal.coerce(x)
    if x < 0:
        raise NegativeInput(f"x = {x} is negative")
    y = ExactReal.coerce(beta) * x
    e = y.floor()
    return e, y - e


FINITE = "finite"
PERIODIC = "periodic"
TRUNCATED = "truncated"


@dataclass(frozen=True)
class GreedyTrace:
    """Digits and remainders of a greedy run.

    ``status`` is FINITE (last remainder 0), PERIODIC (the state before digit
    ``entry`` recurs after the last digit) or TRUNCATED.
    """

    digits: FiniteWord
    remainders: tuple[ExactReal, ...]
    status: str
    entry: int | None = None

    def word(self) -> Expansion:
        if self.status == FINITE:
            return UPWord.finite(self.digits)
        if self.status == PERIODIC:
            return UPWord(self.digits[: self.entry], self.digits[self.entry:])
        return Unknown(self.digits)


def greedy_digits(base: Base, x: Number, max_steps: int | None = None) -> GreedyTrace:
    """Run the greedy algorithm on ``x`` in ``[0, 1]``.

    For a :class:`UPBase` the pair (remainder, shift class) is recorded and
    the run stops at the first exact repeat.
    """
    x = ExactReal.coerce(x)
    if x < 0:
        raise NegativeInput(f"x = {x} is negative")
    if x > 1:
        raise XOutOfRange(f"x = {x} exceeds 1")
    if max_steps is None:
        max_steps = default_max_steps()
    periodic_base = isinstance(base, UPBase)
    seen: dict[tuple[ExactReal, int], int] = {}
    if periodic_base:
        seen[(x, base.class_of(0))] = 0
    digits: list[int] = []
    rems: list[ExactReal] = []
    r = x
    for n in range(max_steps):
        e, r = t_step(base.beta_at(n), r)
        digits.append(e)
        rems.append(r)
        if not r:
            return GreedyTrace(tuple(digits), tuple(rems), FINITE)
        if periodic_base:
            key = (r, base.class_of(n + 1))
            k = seen.get(key)
            if k is not None:
                return GreedyTrace(tuple(digits), tuple(rems), PERIODIC, k)
            seen[key] = n + 1
    return GreedyTrace(tuple(digits), tuple(rems), TRUNCATED)


def expansion_of(base: Base, x: Number, max_steps: int | None = None) -> Expansion:
    """The greedy expansion ``d_beta(x)`` as a UP word, or Unknown."""
    return greedy_digits(base, x, max_steps).word()


@dataclass(frozen=True)
class QuasiGreedyTable:
    """Greedy and quasi-greedy expansions of 1 for every shift class of a base.

    Class ``c`` is the shifted base ``base.shift(c)`` for ``0 <= c < base.num_classes``.
    """

    base: UPBase
    expansions: tuple[Expansion, ...]
    dstar: tuple[Expansion, ...]

    @property
    def complete(self) -> bool:
        return all(isinstance(w, UPWord) for w in self.dstar)

    def dstar_at_shift(self, n: int) -> Expansion:
        return self.dstar[self.base.class_of(n)]

    def m(self, i: int) -> int:
        return self._known(i).m

    def n(self, i: int) -> int:
        return self._known(i).n

    def _known(self, i: int) -> UPWord:
        w = self.dstar[i]
        if not isinstance(w, UPWord):
            raise ValueError(f"quasi-greedy expansion of class {i} is unknown")
        return w

    def unknown_classes(self) -> list[int]:
        return [i for i, w in enumerate(self.dstar) if not isinstance(w, UPWord)]


def quasi_greedy_table(base: UPBase, max_steps: int | None = None) -> QuasiGreedyTable:
    """Compute ``d*`` for every shift class.

    A finite ``d = e_0 ... e_{l-1}`` gives ``e_0 ... (e_{l-1} - 1)`` followed by
    ``d*`` of class ``c + l``; the chain of finite expansions either reaches an
    infinite one or revisits a class, which closes a period.
    """
    expansions = tuple(expansion_of(base.shift(c), 1, max_steps) for c in range(base.num_classes))
    return QuasiGreedyTable(base, expansions, tuple(_resolve(base, expansions, c) for c in range(base.num_classes)))


def _resolve(base: UPBase, expansions: Sequence[Expansion], start: int) -> Expansion:
    blocks: list[FiniteWord] = []
    visited: dict[int, int] = {}
    cur = start
    while True:
        e = expansions[cur]
        head = tuple(d for b in blocks for d in b)
        if isinstance(e, Unknown):
            return Unknown(head + e.prefix)
        if not e.ends_in_zeros():
            return UPWord(head + e.preperiod, e.period)
        if cur in visited:
            i = visited[cur]
            pre = tuple(d for b in blocks[:i] for d in b)
            per = tuple(d for b in blocks[i:] for d in b)
            return UPWord(pre, per)
        visited[cur] = len(blocks)
        digits = e.finite_part()
        blocks.append(digits[:-1] + (digits[-1] - 1,))
        cur = base.class_of(cur + len(digits))
