"""Cantor real bases: ultimately periodic bases with exact entries, and
generator-backed bases for bounded-depth work."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable, Sequence, Union

from .errors import EntryNotGreaterThanOne, MixedFieldError, ParseError
from .exact import ExactReal, Number, parse_number


def _check_entry(x: ExactReal, where: str) -> None:
    if not x > 1:
        raise EntryNotGreaterThanOne(f"base entry {x} at {where} is not > 1")


@dataclass(frozen=True)
class UPBase:
    """``(b_0, ..., b_{P-1}; overline{c_0, ..., c_{p-1}})``.

    The period keeps its declared length ``p``: ``(overline{phi, phi})`` is a
    length-2 alternate base, distinct from ``(overline{phi})``.  Only the
    preperiod is minimised (rotating the period when needed).
    """

    preperiod: tuple[ExactReal, ...]
    period: tuple[ExactReal, ...]

    def __post_init__(self) -> None:
        u = [ExactReal.coerce(x) for x in self.preperiod]
        v = tuple(ExactReal.coerce(x) for x in self.period)
        if not v:
            raise ValueError("a base needs a nonempty period")
        radicands = {x.radicand for x in u + list(v)} - {None}
        if len(radicands) > 1:
            raise MixedFieldError(f"base entries mix fields {sorted(radicands)}")
        for i, x in enumerate(u):
            _check_entry(x, f"preperiod[{i}]")
        for i, x in enumerate(v):
            _check_entry(x, f"period[{i}]")
        while u and u[-1] == v[-1]:
            u.pop()
            v = (v[-1],) + v[:-1]
        object.__setattr__(self, "preperiod", tuple(u))
        object.__setattr__(self, "period", v)

    @classmethod
    def alternate(cls, entries: Sequence[Number]) -> UPBase:
        return cls((), tuple(entries))

    @property
    def p(self) -> int:
        """Length of the period."""
        return len(self.period)

    @property
    def P(self) -> int:
        """Length of the preperiod."""
        return len(self.preperiod)

    def is_alternate(self) -> bool:
        return not self.preperiod

    @property
    def radicand(self) -> int | None:
        for x in self.preperiod + self.period:
            if x.radicand is not None:
                return x.radicand
        return None

    @property
    def num_classes(self) -> int:
        """Number of distinct shifted bases ``shift(n)``."""
        return self.P + self.p

    def class_of(self, n: int) -> int:
        """Index in ``[0, num_classes)`` of the shift class of ``shift(n)``."""
        if n < self.P:
            return n
        return self.P + (n - self.P) % self.p

    def beta_at(self, n: int) -> ExactReal:
        if n < 0:
            raise ValueError("index must be non-negative")
        if n < self.P:
            return self.preperiod[n]
        return self.period[(n - self.P) % self.p]

    def product_prefix(self, n: int) -> ExactReal:
        """``beta_0 * ... * beta_{n-1}`` (1 for n = 0)."""
        out = ExactReal(1)
        for i in range(n):
            out = out * self.beta_at(i)
        return out

    def shift(self, n: int) -> UPBase:
        if n < 0:
            raise ValueError("shift amount must be non-negative")
        if n <= self.P:
            return UPBase(self.preperiod[n:], self.period)
        r = (n - self.P) % self.p
        return UPBase((), self.period[r:] + self.period[:r])

    def alphabet_bound(self) -> int:
        """Largest digit a greedy expansion can use: ``max floor(beta_i)``."""
        return max(x.floor() for x in self.preperiod + self.period)

    def period_product(self) -> ExactReal:
        out = ExactReal(1)
        for x in self.period:
            out = out * x
        return out

    def __str__(self) -> str:
        return format_base(self)


@dataclass(frozen=True, eq=False)
class StreamBase:
    """A base given by a deterministic producer ``n -> beta_n``.

    Divergence of the product cannot be checked; callers assert it.
    Only bounded-depth operations accept a StreamBase.
    """

    producer: Callable[[int], Number]
    divergence_asserted: bool = False
    name: str = "stream"
    _cache: dict = field(default_factory=dict, repr=False)

    def beta_at(self, n: int) -> ExactReal:
        if n < 0:
            raise ValueError("index must be non-negative")
        try:
            return self._cache[n]
        except KeyError:
            pass
        x = ExactReal.coerce(self.producer(n))
        _check_entry(x, f"index {n}")
        self._cache[n] = x
        return x

    def product_prefix(self, n: int) -> ExactReal:
        out = ExactReal(1)
        for i in range(n):
            out = out * self.beta_at(i)
        return out

    def shift(self, n: int) -> StreamBase:
        return StreamBase(lambda k: self.beta_at(k + n), self.divergence_asserted, f"{self.name}^({n})")

    def __str__(self) -> str:
        return self.name


Base = Union[UPBase, StreamBase]


def shift_base(base: Base, n: int) -> Base:
    return base.shift(n)


def beta_at(base: Base, n: int) -> ExactReal:
    return base.beta_at(n)


def product_prefix(base: Base, n: int) -> ExactReal:
    return base.product_prefix(n)


def alphabet_bound(base: UPBase) -> int:
    return base.alphabet_bound()


TM_ALPHA = parse_number("(1+sqrt(13))/2")
TM_BETA = parse_number("(5+sqrt(13))/6")


def thue_morse_base(alpha: Number = TM_ALPHA, beta: Number = TM_BETA) -> StreamBase:
    """``beta_n = alpha`` if the binary expansion of n has an even number of ones."""
    a, b = ExactReal.coerce(alpha), ExactReal.coerce(beta)
    return StreamBase(lambda n: a if bin(n).count("1") % 2 == 0 else b, True, "thue-morse")


def geometric_tail_base(offset: int = 1) -> StreamBase:
    """``beta_n = offset + 2^-(n+1)``.

    With ``offset=1`` the product converges, so this is *not* a Cantor base;
    kept as a fixture showing the greedy digits fail to represent 1.
    """
    from fractions import Fraction

    return StreamBase(lambda n: offset + Fraction(1, 2 ** (n + 1)), offset >= 2, f"{offset}+2^-(n+1)")


BUILTINS: dict[str, Callable[[], Base]] = {"thue-morse": thue_morse_base}


# -- notation --------------------------------------------------------------

def _split_top(text: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if "".join(cur).strip():
        parts.append("".join(cur))
    return [p.strip() for p in parts]


_SECTION = re.compile(r"(pre|per)\s*:\s*\[([^\]]*)\]")


def parse_base(text: str) -> Base:
    """``per:[3,phi,phi]``, ``pre:[sqrt(13)] per:[a,b]`` or a builtin name."""
    s = text.strip()
    if s in BUILTINS:
        return BUILTINS[s]()
    sections = {}
    end = 0
    for m in _SECTION.finditer(s):
        if s[end:m.start()].strip():
            raise ParseError(f"bad base {text!r}")
        if m.group(1) in sections:
            raise ParseError(f"duplicate {m.group(1)!r} in {text!r}")
        sections[m.group(1)] = [parse_number(x) for x in _split_top(m.group(2))]
        end = m.end()
    if s[end:].strip() or "per" not in sections:
        raise ParseError(f"bad base {text!r}; expected 'per:[...]' optionally preceded by 'pre:[...]'")
    if not sections["per"]:
        raise ParseError("empty period")
    return UPBase(tuple(sections.get("pre", [])), tuple(sections["per"]))


def format_base(base: UPBase) -> str:
    per = "per:[" + ",".join(str(x) for x in base.period) + "]"
    if base.preperiod:
        return "pre:[" + ",".join(str(x) for x in base.preperiod) + "] " + per
    return per
