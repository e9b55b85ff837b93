"""Exact arithmetic in Q and in real quadratic fields Q(sqrt(d)).

An :class:`ExactReal` stores ``(a + b*sqrt(d)) / c`` with integers ``a, b``,
``c > 0``, ``gcd(a, b, c) = 1`` and ``d`` square-free.  Rationals use
``d = 1, b = 0``.  Comparison and floor are decided exactly with integer
square roots, so no tolerance is involved anywhere.
"""
from __future__ import annotations

import math
import re
import warnings
from fractions import Fraction
from functools import total_ordering
from typing import Union

from .errors import MixedFieldError, ParseError

Number = Union[int, Fraction, "ExactReal"]


def square_free_part(n: int) -> tuple[int, int]:
    """Return ``(k, m)`` with ``n = k*k*m`` and ``m`` square-free."""
    if n <= 0:
        raise ValueError("radicand must be positive")
    k, m = 1, 1
    rest = n
    f = 2
    while f * f <= rest:
        e = 0
        while rest % f == 0:
            rest //= f
            e += 1
        k *= f ** (e // 2)
        if e % 2:
            m *= f
        f += 1 if f == 2 else 2
    return k, m * rest


def _floor_sqrt_mul(b: int, d: int) -> int:
    """floor(b * sqrt(d)) for square-free d >= 2."""
    if b >= 0:
        return math.isqrt(b * b * d)
    # b*sqrt(d) is irrational, so the floor sits strictly below
    return -math.isqrt(b * b * d) - 1


def _sign_quad(a: int, b: int, d: int) -> int:
    """Sign of a + b*sqrt(d)."""
    if b == 0:
        return (a > 0) - (a < 0)
    sa = (a > 0) - (a < 0)
    sb = (b > 0) - (b < 0)
    if sa == 0:
        return sb
    if sa == sb:
        return sa
    # opposite signs: compare a^2 with b^2 d (never equal for square-free d)
    return sa if a * a > b * b * d else sb


@total_ordering
class ExactReal:
    """An element of Q or of a real quadratic field."""

    __slots__ = ("_a", "_b", "_c", "_d")

    def __init__(self, a: int | Fraction = 0, b: int | Fraction = 0, d: int | None = None):
        a = Fraction(a)
        b = Fraction(b)
        if d is None or b == 0:
            self._set(a.numerator, 0, a.denominator, 1)
            return
        k, m = square_free_part(d)
        b *= k
        if m == 1:
            q = a + b
            self._set(q.numerator, 0, q.denominator, 1)
            return
        c = a.denominator * b.denominator // math.gcd(a.denominator, b.denominator)
        self._set(int(a * c), int(b * c), c, m)

    def _set(self, a: int, b: int, c: int, d: int) -> None:
        if b == 0:
            d = 1
        g = math.gcd(c, a)
        if g != 1 and b:
            g = math.gcd(g, b)
        elif b == 0 and a == 0:
            g = c
        if g != 1:
            a //= g
            b //= g
            c //= g
        self._a, self._b, self._c, self._d = a, b, c, d

    @classmethod
    def _raw(cls, a: int, b: int, c: int, d: int) -> ExactReal:
        obj = cls.__new__(cls)
        if c < 0:
            a, b, c = -a, -b, -c
        obj._set(a, b, c, d)
        return obj

    @classmethod
    def sqrt(cls, n: int) -> ExactReal:
        return cls(0, 1, n)

    # -- accessors ---------------------------------------------------------

    @property
    def radicand(self) -> int | None:
        """The square-free ``d`` of the field, or None for a rational."""
        return None if self._d == 1 else self._d

    @property
    def rational_part(self) -> Fraction:
        return Fraction(self._a, self._c)

    @property
    def irrational_coefficient(self) -> Fraction:
        return Fraction(self._b, self._c)

    def is_rational(self) -> bool:
        return self._b == 0

    def as_fraction(self) -> Fraction:
        if self._b:
            raise ValueError(f"{self} is irrational")
        return Fraction(self._a, self._c)

    def is_integer(self) -> bool:
        return self._b == 0 and self._c == 1

    # -- coercion ----------------------------------------------------------

    @staticmethod
    def coerce(x: Number) -> ExactReal:
        if isinstance(x, ExactReal):
            return x
        if isinstance(x, (int, Fraction)):
            return ExactReal(x)
        if isinstance(x, str):
            return parse_number(x)
        raise TypeError(f"cannot interpret {x!r} as an exact real")

    def _unify(self, other: ExactReal) -> int:
        if self._d == other._d or other._d == 1:
            return self._d
        if self._d == 1:
            return other._d
        raise MixedFieldError(f"Q(sqrt({self._d})) and Q(sqrt({other._d})) do not mix")

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: Number) -> ExactReal:
        try:
            o = ExactReal.coerce(other)
        except TypeError:
            return NotImplemented
        d = self._unify(o)
        c = self._c * o._c
        return ExactReal._raw(self._a * o._c + o._a * self._c, self._b * o._c + o._b * self._c, c, d)

    __radd__ = __add__

    def __neg__(self) -> ExactReal:
        return ExactReal._raw(-self._a, -self._b, self._c, self._d)

    def __abs__(self) -> ExactReal:
        return -self if self.sign() < 0 else self

    def __pos__(self) -> ExactReal:
        return self

    def __sub__(self, other: Number) -> ExactReal:
        try:
            o = ExactReal.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Number) -> ExactReal:
        return ExactReal.coerce(other) - self

    def __mul__(self, other: Number) -> ExactReal:
        if isinstance(other, int):
            return ExactReal._raw(self._a * other, self._b * other, self._c, self._d)
        try:
            o = ExactReal.coerce(other)
        except TypeError:
            return NotImplemented
        d = self._unify(o)
        a = self._a * o._a + self._b * o._b * d
        b = self._a * o._b + self._b * o._a
        return ExactReal._raw(a, b, self._c * o._c, d)

    __rmul__ = __mul__

    def inverse(self) -> ExactReal:
        if self._a == 0 and self._b == 0:
            raise ZeroDivisionError("division by zero")
        # c / (a + b sqrt d) = c (a - b sqrt d) / (a^2 - b^2 d)
        n = self._a * self._a - self._b * self._b * self._d
        return ExactReal._raw(self._c * self._a, -self._c * self._b, n, self._d)

    def __truediv__(self, other: Number) -> ExactReal:
        try:
            o = ExactReal.coerce(other)
        except TypeError:
            return NotImplemented
        self._unify(o)
        return self * o.inverse()

    def __rtruediv__(self, other: Number) -> ExactReal:
        return ExactReal.coerce(other) / self

    def __pow__(self, n: int) -> ExactReal:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = ExactReal(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> ExactReal:
        return ExactReal._raw(self._a, -self._b, self._c, self._d)

    def norm(self) -> Fraction:
        """Field norm a^2 - b^2 d (over the common denominator)."""
        return Fraction(self._a * self._a - self._b * self._b * self._d, self._c * self._c)

    # -- order -------------------------------------------------------------

    def sign(self) -> int:
        return _sign_quad(self._a, self._b, self._d)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ExactReal):
            return (self._a, self._b, self._c, self._d) == (other._a, other._b, other._c, other._d)
        if isinstance(other, (int, Fraction)):
            return self._b == 0 and Fraction(self._a, self._c) == other
        return NotImplemented

    def __lt__(self, other: Number) -> bool:
        try:
            o = ExactReal.coerce(other)
        except TypeError:
            return NotImplemented
        return (self - o).sign() < 0

    def __hash__(self) -> int:
        if self._b == 0:
            return hash(Fraction(self._a, self._c))
        return hash((self._a, self._b, self._c, self._d))

    def __bool__(self) -> bool:
        return bool(self._a or self._b)

    def __floor__(self) -> int:
        return self.floor()

    def floor(self) -> int:
        if self._b == 0:
            return self._a // self._c
        return (self._a + _floor_sqrt_mul(self._b, self._d)) // self._c

    def enclosure(self, bits: int = 64) -> tuple[Fraction, Fraction]:
        """Rational ``lo <= self < hi`` with ``hi - lo = 2**-bits``."""
        n = (self * (1 << bits)).floor()
        return Fraction(n, 1 << bits), Fraction(n + 1, 1 << bits)

    def __float__(self) -> float:
        if self._b == 0:
            return float(Fraction(self._a, self._c))
        return float(self.enclosure(80)[0])

    # -- text --------------------------------------------------------------

    def __repr__(self) -> str:
        return f"ExactReal({format_number(self)!r})"

    def __str__(self) -> str:
        return format_number(self)


def compare(x: Number, y: Number) -> int:
    """Return -1, 0 or 1 according to the sign of ``x - y``."""
    return (ExactReal.coerce(x) - ExactReal.coerce(y)).sign()


def floor(x: Number) -> int:
    return ExactReal.coerce(x).floor()


PHI = ExactReal(Fraction(1, 2), Fraction(1, 2), 5)


def format_number(x: ExactReal) -> str:
    """Canonical text form; ``parse_number(format_number(x)) == x``."""
    a, b, c, d = x._a, x._b, x._c, x._d
    if b == 0:
        return str(a) if c == 1 else f"{a}/{c}"
    if abs(b) == 1:
        rad = f"sqrt({d})"
    else:
        rad = f"{abs(b)}*sqrt({d})"
    if a == 0:
        num = rad if b > 0 else f"-{rad}"
        return num if c == 1 else f"{num}/{c}"
    num = f"{a}{'+' if b > 0 else '-'}{rad}"
    return num if c == 1 else f"({num})/{c}"


# -- parser ----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+\.\d*|\.\d+)|(\d+)|(sqrt|phi)|(.))")


class _Parser:
    # expr := term (('+'|'-') term)* ; term := factor (('*'|'/') factor)*
    # factor := INT | DECIMAL | 'sqrt' '(' INT ')' | 'phi' | '(' expr ')' | '-' factor

    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, str]] = []
        for m in _TOKEN.finditer(text):
            dec, integer, name, other = m.groups()
            if dec is not None:
                self.tokens.append(("dec", dec))
            elif integer is not None:
                self.tokens.append(("int", integer))
            elif name is not None:
                self.tokens.append(("name", name))
            elif other is not None and not other.isspace():
                self.tokens.append(("op", other))
        self.pos = 0

    def peek(self) -> tuple[str, str] | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, kind: str, value: str | None = None) -> str:
        tok = self.peek()
        if tok is None or tok[0] != kind or (value is not None and tok[1] != value):
            want = value or kind
            raise ParseError(f"expected {want!r} in {self.text!r}, got {tok[1] if tok else 'end of input'!r}")
        self.pos += 1
        return tok[1]

    def parse(self) -> ExactReal:
        if not self.tokens:
            raise ParseError("empty number")
        value = self.expr()
        if self.peek() is not None:
            raise ParseError(f"trailing input {self.peek()[1]!r} in {self.text!r}")
        return value

    def expr(self) -> ExactReal:
        value = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take("op")
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> ExactReal:
        value = self.factor()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take("op")
            rhs = self.factor()
            if op == "*":
                value = value * rhs
            else:
                if not rhs:
                    raise ParseError(f"division by zero in {self.text!r}")
                value = value / rhs
        return value

    def factor(self) -> ExactReal:
        tok = self.peek()
        if tok is None:
            raise ParseError(f"unexpected end of {self.text!r}")
        kind, val = tok
        if kind == "int":
            self.pos += 1
            return ExactReal(int(val))
        if kind == "dec":
            self.pos += 1
            return ExactReal(Fraction(val))
        if kind == "name" and val == "phi":
            self.pos += 1
            return PHI
        if kind == "name" and val == "sqrt":
            self.pos += 1
            self.take("op", "(")
            n = int(self.take("int"))
            self.take("op", ")")
            if n == 0:
                return ExactReal(0)
            k, m = square_free_part(n)
            if k != 1:
                warnings.warn(f"sqrt({n}) reduced to {k}*sqrt({m})", stacklevel=4)
            return ExactReal(0, 1, n)
        if tok == ("op", "("):
            self.pos += 1
            value = self.expr()
            self.take("op", ")")
            return value
        if tok == ("op", "-"):
            self.pos += 1
            return -self.factor()
        raise ParseError(f"unexpected {val!r} in {self.text!r}")


def parse_number(text: str) -> ExactReal:
    """Parse the arithmetic number grammar, e.g. ``"(1+sqrt(5))/2"`` or ``"1.7"``."""
    return _Parser(text).parse()
