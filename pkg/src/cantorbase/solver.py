"""Inverse problems: find a base in which a given digit word represents 1.

Single real bases and alternate bases are found by exact-rational bisection
on the decreasing map ``beta -> val_beta(a)``.  Cantor bases are built
directly, block by block, from the zero runs of the word.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .bases import StreamBase, UPBase
from .errors import BudgetExceeded, SumNotGreaterThanOne, TailInequalityViolated, ZeroPeriod
from .exact import ExactReal
from .expansion import val
from .words import UPWord

DEFAULT_BISECTION_STEPS = 2_000


@dataclass(frozen=True)
class Enclosure:
    """``lo < root < hi`` certified by ``g(lo) > 0 > g(hi)`` for ``g = val - 1``.

    ``exact`` holds the root when bisection happened to land on it.
    """

    lo: Fraction
    hi: Fraction
    g_lo_sign: int = 1
    g_hi_sign: int = -1
    exact: Fraction | None = None
    polynomial: tuple[int, ...] | None = None

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, x) -> bool:
        x = ExactReal.coerce(x)
        return self.lo <= x <= self.hi

    def midpoint(self) -> Fraction:
        return self.exact if self.exact is not None else (self.lo + self.hi) / 2

    def to_record(self) -> dict:
        rec: dict = {
            "enclosure": {"lo": str(self.lo), "hi": str(self.hi)},
            "certificate": {"g_lo_sign": self.g_lo_sign, "g_hi_sign": self.g_hi_sign},
        }
        if self.exact is not None:
            rec["exact"] = str(self.exact)
        if self.polynomial is not None:
            rec["polynomial"] = list(self.polynomial)
        return rec


def _require_sum_exceeds_one(a: UPWord) -> None:
    if not a.digit_sum_exceeds(1):
        raise SumNotGreaterThanOne(f"digit sum of {a} is {sum(a.preperiod)} <= 1; no base gives value 1")


def _sign(x: ExactReal) -> int:
    return x.sign()


def _bisect(g, lo: Fraction, hi: Fraction, tol: Fraction, max_steps: int) -> tuple[Fraction, Fraction, Fraction | None]:
    """Shrink ``[lo, hi]`` with ``g(lo) > 0 > g(hi)`` for a decreasing g."""
    steps = 0
    while hi - lo > tol:
        if steps >= max_steps:
            raise BudgetExceeded(f"bisection did not reach width {tol} within {max_steps} steps")
        steps += 1
        mid = (lo + hi) / 2
        s = _sign(g(mid))
        if s == 0:
            return lo, hi, mid
        if s > 0:
            lo = mid
        else:
            hi = mid
    return lo, hi, None


def _around_exact(g, r: Fraction, tol: Fraction) -> tuple[Fraction, Fraction]:
    w = min(tol / 2, (r - 1) / 2)
    return r - w, r + w


def _lower_bracket(g, start: Fraction | None, max_steps: int) -> Fraction:
    """A point above 1 where g is non-negative."""
    if start is not None and start > 1 and _sign(g(start)) >= 0:
        return start
    eps = Fraction(1, 2)
    for _ in range(max_steps):
        x = 1 + eps
        if _sign(g(x)) >= 0:
            return x
        eps /= 2
    raise BudgetExceeded("no lower bracket found near 1")


def _upper_bracket(g, start: Fraction, max_steps: int) -> Fraction:
    x = start
    for _ in range(max_steps):
        if _sign(g(x)) <= 0:
            return x
        x *= 2
    raise BudgetExceeded("no upper bracket found")


def _solve_decreasing(g, lo_hint: Fraction | None, hi_hint: Fraction, tol: Fraction,
                      max_steps: int) -> Enclosure:
    lo = _lower_bracket(g, lo_hint, max_steps)
    if _sign(g(lo)) == 0:
        a, b = _around_exact(g, lo, tol)
        return Enclosure(a, b, _sign(g(a)), _sign(g(b)), exact=lo)
    hi = _upper_bracket(g, max(hi_hint, lo * 2), max_steps)
    if _sign(g(hi)) == 0:
        a, b = _around_exact(g, hi, tol)
        return Enclosure(a, b, _sign(g(a)), _sign(g(b)), exact=hi)
    lo, hi, root = _bisect(g, lo, hi, tol, max_steps)
    if root is not None:
        lo, hi = _around_exact(g, root, tol)
    return Enclosure(lo, hi, _sign(g(lo)), _sign(g(hi)), exact=root)


def _poly_from_digits(digits: Sequence[int]) -> list[int]:
    """``sum d_i x^(k-1-i)``, highest degree first."""
    return list(digits)


def _poly_add(p: list[int], q: list[int]) -> list[int]:
    n = max(len(p), len(q))
    p = [0] * (n - len(p)) + p
    q = [0] * (n - len(q)) + q
    return [x + y for x, y in zip(p, q)]


def _poly_mul(p: list[int], q: list[int]) -> list[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        for j, y in enumerate(q):
            out[i + j] += x * y
    return out


def _trim(p: list[int]) -> tuple[int, ...]:
    i = 0
    while i < len(p) - 1 and p[i] == 0:
        i += 1
    return tuple(p[i:])


def single_base_polynomial(a: UPWord) -> tuple[int, ...]:
    """Integer polynomial (highest degree first) vanishing at the base where ``a`` has value 1.

    Finite ``a_0 .. a_{L-1}``: ``x^L - sum a_i x^(L-1-i)``.  For ``u v^w``:
    ``x^|u| (x^|v| - 1) - P_u(x) (x^|v| - 1) - P_v(x)``.
    """
    if a.ends_in_zeros():
        return _trim([1] + [-d for d in a.preperiod])
    u, v = a.preperiod, a.period
    xv1 = [1] + [0] * (len(v) - 1) + [-1]
    lhs = _poly_mul([1] + [0] * len(u), xv1)
    pu = _poly_mul(_poly_from_digits(u), xv1) if u else [0]
    rhs = _poly_add(pu, _poly_from_digits(v))
    return _trim(_poly_add(lhs, [-c for c in rhs]))


def solve_single_base(a: UPWord, tol: Fraction | str | float = Fraction(1, 10**12),
                      max_steps: int = DEFAULT_BISECTION_STEPS) -> Enclosure:
    """Enclose the unique ``beta > 1`` with ``val_beta(a) = 1``."""
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError("tol must be positive")
    _require_sum_exceeds_one(a)

    def g(beta: Fraction) -> ExactReal:
        return val(UPBase((), (ExactReal(beta),)), a) - 1

    a0 = a[0]
    top = max(a.preperiod + a.period)
    enc = _solve_decreasing(g, Fraction(a0) if a0 > 1 else None, Fraction(a0 + top + 1), tol, max_steps)
    assert enc.hi >= a0, "root below the first digit"
    if top <= a0:
        assert enc.lo <= a0 + 1, "root above a0 + 1 although no digit exceeds a0"
    return Enclosure(enc.lo, enc.hi, enc.g_lo_sign, enc.g_hi_sign, enc.exact, single_base_polynomial(a))


# -- Cantor bases from zero blocks -----------------------------------------

@dataclass(frozen=True)
class BlockRecord:
    """A maximal zero run ``a[start : start + length]`` and the rational
    ``alpha`` used for the base entries inside it."""

    start: int
    length: int
    alpha: Fraction

    def to_record(self) -> dict:
        return {"start": self.start, "length": self.length, "alpha": str(self.alpha)}


def certified_alpha(digit: int, length: int) -> Fraction:
    """A rational strictly between 1 and ``(digit+1)^(1/length)``.

    It is the midpoint of a bisection enclosure of ``(digit+1)^(1/(2 length))``,
    refined until it passes the exact checks ``alpha > 1`` and ``alpha^length < digit+1``.
    """
    target = digit + 1
    power = 2 * length
    lo, hi = Fraction(1), Fraction(target)
    while True:
        mid = (lo + hi) / 2
        if mid ** power < target:
            lo = mid
        else:
            hi = mid
        alpha = (lo + hi) / 2
        if hi - lo < (lo - 1) / 2 and alpha > 1 and alpha ** length < target:
            return alpha


@dataclass(frozen=True, eq=False)
class ConstructedBase:
    """A Cantor base in which ``word`` has value 1, with its zero-block log."""

    word: UPWord
    base: StreamBase
    _alphas: dict = field(default_factory=dict, repr=False)

    def blocks(self, count: int) -> list[BlockRecord]:
        """The first ``count`` zero blocks in order of appearance (fewer if
        the word has only finitely many)."""
        out: list[BlockRecord] = []
        n = 0
        # without a zero in the period, every run starts inside the preperiod
        limit = None if 0 in self.word.period else self.word.m
        while len(out) < count and (limit is None or n < limit):
            if self.word[n] == 0:
                start = n
                while self.word[n] == 0:
                    n += 1
                out.append(BlockRecord(start, n - start, _alpha_for(self, self.word[n], n - start)))
            n += 1
        return out

    def boundaries(self, count: int) -> list[int]:
        """Prefix lengths just past the first ``count`` block ends."""
        return [b.start + b.length + 1 for b in self.blocks(count)]

    def to_record(self, count: int = 10) -> dict:
        return {"log": [b.to_record() for b in self.blocks(count)]}


def _alpha_for(cb: ConstructedBase, digit: int, length: int) -> Fraction:
    key = (digit, length)
    if key not in cb._alphas:
        cb._alphas[key] = certified_alpha(digit, length)
    return cb._alphas[key]


def _zero_run_end(a: UPWord, n: int) -> int:
    while a[n] == 0:
        n += 1
    return n


def _zero_run_start(a: UPWord, n: int) -> int:
    while n > 0 and a[n - 1] == 0:
        n -= 1
    return n


def construct_cantor_base(a: UPWord) -> ConstructedBase:
    """Cantor base with ``val(a) = 1`` for a word with infinite digit sum.

    ``beta_n = a_n + 1`` off zero runs; inside a run of length l ending before
    digit ``e``, every entry is ``alpha`` and the entry at ``e`` is
    ``(a_e + 1) / alpha^l``, so partial sums telescope.
    """
    if not any(a.period):
        raise ZeroPeriod(f"{a} has finite digit sum; use solve_single_base")
    holder: dict = {}

    def entry(n: int) -> Fraction:
        cb = holder["cb"]
        d = a[n]
        if d == 0:
            end = _zero_run_end(a, n)
            start = _zero_run_start(a, n)
            return _alpha_for(cb, a[end], end - start)
        if n > 0 and a[n - 1] == 0:
            start = _zero_run_start(a, n - 1)
            length = n - start
            return Fraction(d + 1) / _alpha_for(cb, d, length) ** length
        return Fraction(d + 1)

    cb = ConstructedBase(a, StreamBase(entry, True, f"constructed[{a}]"))
    holder["cb"] = cb
    return cb


# -- alternate bases -------------------------------------------------------

@dataclass(frozen=True)
class AlternateSolution:
    """``beta_0`` enclosure for the alternate base ``(beta_0, *tail)``."""

    enclosure: Enclosure
    tail: tuple[Fraction, ...]
    horizon: int

    def base_at(self, beta0: Fraction) -> UPBase:
        return UPBase((), (ExactReal(beta0),) + tuple(ExactReal(t) for t in self.tail))

    def to_record(self) -> dict:
        rec = self.enclosure.to_record()
        rec["tail"] = [str(t) for t in self.tail]
        rec["horizon"] = self.horizon
        return rec


def _first_exceeding(a: UPWord) -> tuple[int, int]:
    """Smallest N with ``a_0 + ... + a_N > 1`` and that partial sum."""
    s = 0
    n = 0
    while True:
        s += a[n]
        if s > 1:
            return n, s
        n += 1


def tail_inequality_holds(tail: Sequence[Fraction], p: int, horizon: int, partial_sum: int,
                          strict: bool = False) -> bool:
    """``(prod tail)^(floor(N/p) + 1) <= a_0 + ... + a_N`` (``<`` when strict)."""
    lhs = math.prod(tail, start=Fraction(1)) ** (horizon // p + 1)
    return lhs < partial_sum if strict else lhs <= partial_sum


def auto_tail(p: int, horizon: int, partial_sum: int) -> tuple[Fraction, ...]:
    """All entries ``1 + 1/q`` with the least q satisfying the strict tail inequality.

    Strictness guarantees ``sum c_m > 1``; with equality the sum can be exactly 1.
    """
    q = 1
    while True:
        tail = (1 + Fraction(1, q),) * (p - 1)
        if tail_inequality_holds(tail, p, horizon, partial_sum, strict=True):
            return tail
        q += 1


def transformed_sum(a: UPWord, tail: Sequence[Fraction]) -> Fraction:
    """``sum_m c_m``: the value of ``a`` in the base ``(1, *tail)`` repeated, i.e. the
    limit of ``val`` as ``beta_0 -> 1``."""
    entries = (Fraction(1),) + tuple(tail)
    p = len(entries)
    start = a.m
    block = math.lcm(p, a.n)
    total, prod = Fraction(0), Fraction(1)
    for n in range(start):
        prod *= entries[n % p]
        total += Fraction(a[n]) / prod
    inner, q = Fraction(0), Fraction(1)
    for k in range(block):
        q *= entries[(start + k) % p]
        inner += Fraction(a[start + k]) / q
    if not inner:
        return total
    return total + inner * q / ((q - 1) * prod)


def construct_alternate_base(a: UPWord, p: int, tail: Sequence[Fraction | int | str] | None = None,
                             tol: Fraction | str | float = Fraction(1, 10**12),
                             max_steps: int = DEFAULT_BISECTION_STEPS) -> AlternateSolution:
    """Alternate base of length ``p`` with ``val(a) = 1``; solves for ``beta_0``."""
    if p < 1:
        raise ValueError("p must be >= 1")
    tol = Fraction(tol)
    _require_sum_exceeds_one(a)
    horizon, partial = _first_exceeding(a)
    if p == 1:
        return AlternateSolution(solve_single_base(a, tol, max_steps), (), horizon)
    if tail is None:
        chosen = auto_tail(p, horizon, partial)
    else:
        chosen = tuple(Fraction(t) for t in tail)
        if len(chosen) != p - 1:
            raise ValueError(f"tail must have {p - 1} entries")
        if any(t <= 1 for t in chosen):
            raise ValueError("tail entries must exceed 1")
        if not tail_inequality_holds(chosen, p, horizon, partial):
            raise TailInequalityViolated(
                f"(prod tail)^{horizon // p + 1} exceeds the partial sum {partial} up to index {horizon}")
        if transformed_sum(a, chosen) <= 1:
            raise TailInequalityViolated("with this tail the transformed sequence sums to at most 1")
    rest = tuple(ExactReal(t) for t in chosen)

    def g(beta0: Fraction) -> ExactReal:
        return val(UPBase((), (ExactReal(beta0),) + rest), a) - 1

    top = max(a.preperiod + a.period)
    enc = _solve_decreasing(g, None, Fraction(a[0] + top + 1), tol, max_steps)
    return AlternateSolution(enc, chosen, horizon)
