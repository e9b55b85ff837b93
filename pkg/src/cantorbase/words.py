"""Finite and ultimately periodic digit words.

Digits are unbounded non-negative ints.  A finite word is a plain tuple; an
ultimately periodic word ``u v^w`` is a :class:`UPWord`, always stored in
canonical form (primitive period, minimal preperiod).
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import total_ordering
from typing import Callable, Iterable, Iterator, Sequence, TypeVar

from .errors import ParseError

FiniteWord = tuple[int, ...]
T = TypeVar("T")


def primitive_root(v: Sequence[T]) -> tuple[T, ...]:
    """Shortest ``r`` with ``v == r^k``."""
    n = len(v)
    for size in range(1, n + 1):
        if n % size == 0 and all(v[i] == v[i % size] for i in range(size, n)):
            return tuple(v[:size])
    return tuple(v)


def canonical_pair(u: Sequence[T], v: Sequence[T]) -> tuple[tuple[T, ...], tuple[T, ...]]:
    """Minimal preperiod and primitive period for ``u v^w``.

    Shared by words and by ultimately periodic bases; elements only need ``==``.
    """
    if not v:
        raise ValueError("period must be nonempty")
    v = primitive_root(v)
    u = list(u)
    while u and u[-1] == v[-1]:
        u.pop()
        v = (v[-1],) + v[:-1]
    return tuple(u), v


@total_ordering
@dataclass(frozen=True)
class UPWord:
    """The infinite word ``preperiod period period ...``."""

    preperiod: FiniteWord
    period: FiniteWord

    def __post_init__(self) -> None:
        u, v = canonical_pair(tuple(self.preperiod), tuple(self.period))
        if any(not isinstance(x, int) or x < 0 for x in u + v):
            raise ValueError("digits must be non-negative integers")
        object.__setattr__(self, "preperiod", u)
        object.__setattr__(self, "period", v)

    @classmethod
    def finite(cls, digits: Iterable[int]) -> UPWord:
        """Embed a finite word as ``digits 0^w``."""
        return cls(tuple(digits), (0,))

    @classmethod
    def zero(cls) -> UPWord:
        return cls((), (0,))

    # -- letters -----------------------------------------------------------

    def __getitem__(self, n: int) -> int:
        if n < 0:
            raise IndexError("negative index into an infinite word")
        u = self.preperiod
        if n < len(u):
            return u[n]
        return self.period[(n - len(u)) % len(self.period)]

    def prefix(self, n: int) -> FiniteWord:
        return tuple(self[i] for i in range(n))

    def __iter__(self) -> Iterator[int]:
        yield from self.preperiod
        while True:
            yield from self.period

    @property
    def m(self) -> int:
        """Preperiod length."""
        return len(self.preperiod)

    @property
    def n(self) -> int:
        """Period length."""
        return len(self.period)

    # -- operations ----------------------------------------------------------

    def shift(self, n: int) -> UPWord:
        if n < 0:
            raise ValueError("shift amount must be non-negative")
        u, v = self.preperiod, self.period
        if n <= len(u):
            return UPWord(u[n:], v)
        r = (n - len(u)) % len(v)
        return UPWord((), v[r:] + v[:r])

    def ends_in_zeros(self) -> bool:
        return self.period == (0,)

    def finite_part(self) -> FiniteWord:
        """For a word ending in ``0^w``: the digits up to the last nonzero one."""
        if not self.ends_in_zeros():
            raise ValueError(f"{self} does not end in 0^w")
        return self.preperiod

    def compare(self, other: UPWord) -> int:
        return lex_compare(self, other)

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, UPWord):
            return NotImplemented
        return lex_compare(self, other) < 0

    def digit_sum_exceeds(self, bound: int) -> bool:
        """Whether the (possibly infinite) digit sum is > bound."""
        if any(self.period):
            return True
        return sum(self.preperiod) > bound

    def factors_up_to(self, length: int) -> set[FiniteWord]:
        return factors_up_to(self, length)

    def __str__(self) -> str:
        return format_word(self)

    def pretty(self) -> str:
        return format_word_pretty(self)


def shift(w: UPWord, n: int) -> UPWord:
    return w.shift(n)


def canonicalize(preperiod: Sequence[int], period: Sequence[int]) -> UPWord:
    return UPWord(tuple(preperiod), tuple(period))


def ends_in_zeros(w: UPWord) -> bool:
    return w.ends_in_zeros()


def comparison_horizon(x: UPWord, y: UPWord) -> int:
    """Letters after which two UP words that agree must be equal."""
    return max(x.m, y.m) + math.lcm(x.n, y.n)


def lex_compare(x: UPWord, y: UPWord) -> int:
    """Exact lexicographic comparison: -1, 0 or 1."""
    if x == y:
        return 0
    for i in range(comparison_horizon(x, y)):
        a, b = x[i], y[i]
        if a != b:
            return -1 if a < b else 1
    return 0


def factors_up_to(w: UPWord, length: int) -> set[FiniteWord]:
    """All distinct factors of ``w`` of length at most ``length`` (with the empty word)."""
    if length < 0:
        raise ValueError("length must be non-negative")
    # every factor starts within the preperiod or the first period
    starts = w.m + w.n
    text = w.prefix(starts + length)
    out: set[FiniteWord] = {()}
    for i in range(starts):
        for k in range(1, length + 1):
            out.add(text[i:i + k])
    return out


class DigitStream:
    """Deterministic on-demand digits ``n -> a_n``."""

    def __init__(self, producer: Callable[[int], int]):
        self._producer = producer

    @classmethod
    def of(cls, source: UPWord | Sequence[int] | Callable[[int], int] | DigitStream) -> DigitStream:
        if isinstance(source, DigitStream):
            return source
        if isinstance(source, UPWord):
            return cls(source.__getitem__)
        if callable(source):
            return cls(source)
        digits = tuple(source)
        return cls(lambda n: digits[n] if n < len(digits) else 0)

    def __getitem__(self, n: int) -> int:
        d = self._producer(n)
        if d < 0:
            raise ValueError(f"negative digit at position {n}")
        return d

    def prefix(self, n: int) -> FiniteWord:
        return tuple(self[i] for i in range(n))


# -- notation --------------------------------------------------------------

_COMPACT = re.compile(r"^(\d*)(?:\((\d+)\)(?:\^(?:ω|w|omega))?)?$")


def _digits_general(text: str) -> list[int]:
    text = text.strip().strip(",")
    if not text:
        return []
    try:
        return [int(t) for t in text.split(",") if t.strip() != ""]
    except ValueError as exc:
        raise ParseError(f"bad digit list {text!r}") from exc


def parse_word(text: str) -> UPWord:
    """Parse ``200(10)`` (single-digit letters) or ``3,4,(2,7)`` (general).

    A word without a parenthesised period is finite (padded with zeros).
    """
    s = "".join(text.split())
    if s in ("", "ε"):
        return UPWord.zero()
    if "," in s:
        if s.count("(") > 1 or s.count(")") != s.count("("):
            raise ParseError(f"bad word {text!r}")
        if "(" in s:
            head, _, rest = s.partition("(")
            body, _, tail = rest.partition(")")
            if tail not in ("", "^ω", "^w", "^omega"):
                raise ParseError(f"bad word {text!r}")
            period = _digits_general(body)
            if not period:
                raise ParseError(f"empty period in {text!r}")
            return UPWord(tuple(_digits_general(head)), tuple(period))
        return UPWord.finite(_digits_general(s))
    m = _COMPACT.match(s)
    if not m:
        raise ParseError(f"bad word {text!r}")
    head, body = m.groups()
    if body is None:
        return UPWord.finite(int(c) for c in head)
    return UPWord(tuple(int(c) for c in head), tuple(int(c) for c in body))


def format_word(w: UPWord) -> str:
    """Machine notation accepted by :func:`parse_word`."""
    letters = w.preperiod + w.period
    if all(d <= 9 for d in letters):
        head = "".join(map(str, w.preperiod))
        if w.ends_in_zeros():
            return head or "0"
        return f"{head}({''.join(map(str, w.period))})"
    head = ",".join(map(str, w.preperiod))
    if w.ends_in_zeros():
        return f"{head},(0)"
    body = ",".join(map(str, w.period))
    if head:
        return f"{head},({body})"
    # a comma marks the general form even for a one-letter period
    return f"({body})" if "," in body else f"({body},)"


def format_word_pretty(w: UPWord) -> str:
    """Human notation: ``1(110)^ω``, ``30^ω``, ``0^ω``."""
    sep = "" if all(d <= 9 for d in w.preperiod + w.period) else ","
    head = sep.join(map(str, w.preperiod))
    if len(w.period) == 1:
        tail = f"{w.period[0]}^ω"
    else:
        tail = f"({sep.join(map(str, w.period))})^ω"
    return f"{head}{sep if head and sep else ''}{tail}"


def format_finite(w: Sequence[int]) -> str:
    if all(d <= 9 for d in w):
        return "".join(map(str, w))
    return ",".join(map(str, w))
