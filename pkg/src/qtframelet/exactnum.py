"""Exact scalars: rationals, Gaussian rationals and quadratic-radical scalars.

Rationals are the stdlib ``Fraction``.  A ``GaussRational`` is ``re + i*im`` with
rational parts.  A ``QuadScalar`` is ``coeff * sqrt(radicand)`` where ``coeff`` is a
Gaussian rational and ``radicand`` is a square-free positive integer; it carries the
irrational normalizations (square roots of the dilation and multiplicity) exactly.

Textual forms are ``"a/b+c/d*i"`` and ``"a/b+c/d*i sqrt(q)"``.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Union

BigRational = Fraction

SQUAREFREE_BOUND = 10**6


class DivisionByZero(ZeroDivisionError):
    """Division of an exact scalar by zero."""


class RadicandMismatch(ValueError):
    """Addition of quadratic scalars with different radicands."""


class FactorizationBound(ValueError):
    """A radicand has a prime factor beyond the trial-division bound."""


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to a rational")


class GaussRational:
    """Gaussian rational ``re + i*im``; immutable."""

    __slots__ = ("re", "im")

    def __init__(self, re: Union[int, Fraction, str] = 0, im: Union[int, Fraction, str] = 0):
        object.__setattr__(self, "re", to_fraction(re))
        object.__setattr__(self, "im", to_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussRational is immutable")

    @classmethod
    def coerce(cls, x) -> GaussRational:
        if isinstance(x, GaussRational):
            return x
        if isinstance(x, complex):
            return cls(Fraction(x.real), Fraction(x.imag))
        if isinstance(x, str):
            return parse_gauss(x)
        return cls(to_fraction(x), 0)

    # arithmetic
    def __add__(self, other):
        o = _gauss_or_none(other)
        if o is None:
            return NotImplemented
        return GaussRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = _gauss_or_none(other)
        if o is None:
            return NotImplemented
        return GaussRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _gauss_or_none(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return GaussRational(-self.re, -self.im)

    def __mul__(self, other):
        o = _gauss_or_none(other)
        if o is None:
            return NotImplemented
        if not self.im and not o.im:
            return GaussRational(self.re * o.re, 0)
        return GaussRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _gauss_or_none(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _gauss_or_none(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        out = GaussRational(1)
        for _ in range(abs(k)):
            out = out * base
        return out

    def inverse(self) -> GaussRational:
        n = self.abs2()
        if n == 0:
            raise DivisionByZero("division by zero Gaussian rational")
        return GaussRational(self.re / n, -self.im / n)

    def conj(self) -> GaussRational:
        return GaussRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_real(self) -> bool:
        return not self.im

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        o = _gauss_or_none(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussRational({format_gauss(self)!r})"

    def __str__(self):
        return format_gauss(self)


def _gauss_or_none(x):
    if isinstance(x, GaussRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussRational(x, 0)
    if isinstance(x, complex):
        return GaussRational.coerce(x)
    return None


I = GaussRational(0, 1)
ONE = GaussRational(1)
ZERO = GaussRational(0)


def gauss_arith(x: GaussRational, y: GaussRational, op: str) -> GaussRational:
    """Apply ``op`` in {add, mul, div, conj}; ``conj`` ignores ``y``."""
    x = GaussRational.coerce(x)
    if op == "conj":
        return x.conj()
    y = GaussRational.coerce(y)
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown op {op!r}")


def squarefree_decompose(n: int, bound: int = SQUAREFREE_BOUND) -> tuple[int, int]:
    """Return ``(s, t)`` with ``n = s*s*t`` and ``t`` square-free, for ``n >= 1``."""
    if n < 1:
        raise ValueError("radicand must be a positive integer")
    s, t = 1, 1
    p = 2
    while p * p <= n:
        if p > bound:
            raise FactorizationBound(f"radicand {n} has a factor beyond {bound}")
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            s *= p ** (e // 2)
            if e % 2:
                t *= p
        p += 1 if p == 2 else 2
    t *= n
    return s, t


def canonical_sqrt(q) -> tuple[Fraction, int]:
    """Write ``sqrt(q)`` for rational ``q > 0`` as ``c * sqrt(t)`` with square-free integer ``t``."""
    q = to_fraction(q)
    if q <= 0:
        raise ValueError("radicand must be positive")
    # sqrt(p/d) = sqrt(p*d)/d
    s, t = squarefree_decompose(q.numerator * q.denominator)
    return Fraction(s, q.denominator), t


class QuadScalar:
    """``coeff * sqrt(radicand)`` with square-free positive integer radicand; immutable."""

    __slots__ = ("coeff", "radicand")

    def __init__(self, coeff=1, radicand=1):
        c = GaussRational.coerce(coeff)
        f, t = canonical_sqrt(radicand)
        object.__setattr__(self, "coeff", c * f if c else GaussRational(0))
        object.__setattr__(self, "radicand", t if c else 1)

    def __setattr__(self, name, value):
        raise AttributeError("QuadScalar is immutable")

    @classmethod
    def coerce(cls, x) -> QuadScalar:
        if isinstance(x, QuadScalar):
            return x
        if isinstance(x, str):
            return parse_quad(x)
        return cls(GaussRational.coerce(x), 1)

    @classmethod
    def sqrt(cls, q) -> QuadScalar:
        return cls(1, q)

    def __mul__(self, other):
        o = _quad_or_none(other)
        if o is None:
            return NotImplemented
        return quad_mul(self, o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _quad_or_none(other)
        if o is None:
            return NotImplemented
        return quad_mul(self, o.inverse())

    def __rtruediv__(self, other):
        o = _quad_or_none(other)
        if o is None:
            return NotImplemented
        return quad_mul(o, self.inverse())

    def inverse(self) -> QuadScalar:
        if self.coeff.is_zero():
            raise DivisionByZero("division by zero quadratic scalar")
        # 1/(c sqrt t) = (1/(c t)) sqrt t
        return QuadScalar(self.coeff.inverse() / self.radicand, self.radicand)

    def __add__(self, other):
        o = _quad_or_none(other)
        if o is None:
            return NotImplemented
        if self.coeff.is_zero():
            return o
        if o.coeff.is_zero():
            return self
        if o.radicand != self.radicand:
            raise RadicandMismatch(f"sqrt({self.radicand}) + sqrt({o.radicand})")
        return QuadScalar(self.coeff + o.coeff, self.radicand)

    __radd__ = __add__

    def __neg__(self):
        return QuadScalar(-self.coeff, self.radicand)

    def __sub__(self, other):
        o = _quad_or_none(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def conj(self) -> QuadScalar:
        return QuadScalar(self.coeff.conj(), self.radicand)

    def square(self) -> GaussRational:
        return self.coeff * self.coeff * self.radicand

    def abs2(self) -> Fraction:
        return self.coeff.abs2() * self.radicand

    def is_rational(self) -> bool:
        return self.radicand == 1 or self.coeff.is_zero()

    def to_gauss(self) -> GaussRational:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self.coeff

    def __eq__(self, other):
        o = _quad_or_none(other)
        if o is None:
            return NotImplemented
        return self.coeff == o.coeff and self.radicand == o.radicand

    def __hash__(self):
        return hash((self.coeff, self.radicand))

    def __complex__(self):
        return complex(self.coeff) * math.sqrt(self.radicand)

    def __repr__(self):
        return f"QuadScalar({format_quad(self)!r})"

    def __str__(self):
        return format_quad(self)


def _quad_or_none(x):
    if isinstance(x, QuadScalar):
        return x
    g = _gauss_or_none(x)
    if g is None:
        return None
    return QuadScalar(g, 1)


def quad_mul(x: QuadScalar, y: QuadScalar) -> QuadScalar:
    """``(a sqrt p)(b sqrt q) = a b s sqrt t`` where ``p q = s^2 t``."""
    x = QuadScalar.coerce(x)
    y = QuadScalar.coerce(y)
    s, t = squarefree_decompose(x.radicand * y.radicand)
    return QuadScalar(x.coeff * y.coeff * s, t)


# text forms

def _fmt_frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_gauss(x: GaussRational) -> str:
    if not x.im:
        return _fmt_frac(x.re)
    im = _fmt_frac(abs(x.im))
    sign = "-" if x.im < 0 else "+"
    if not x.re:
        return f"{'-' if x.im < 0 else ''}{im}*i"
    return f"{_fmt_frac(x.re)}{sign}{im}*i"


def format_quad(x: QuadScalar) -> str:
    if x.radicand == 1:
        return format_gauss(x.coeff)
    return f"{format_gauss(x.coeff)} sqrt({x.radicand})"


_RAT = r"[0-9]+(?:/[0-9]+)?"
_GAUSS_RE = re.compile(
    rf"^\s*(?:(?P<re>[+-]?{_RAT})(?=$|[+-]|\s))?\s*"
    rf"(?:(?P<im>[+-]?(?:{_RAT})?)\s*\*?\s*i)?\s*$"
)


class ScalarParseError(ValueError):
    """Malformed scalar text."""


def parse_gauss(text: str) -> GaussRational:
    s = text.strip().replace(" ", "")
    if not s:
        raise ScalarParseError("empty scalar")
    m = _GAUSS_RE.match(s)
    if not m or (m.group("re") is None and m.group("im") is None):
        raise ScalarParseError(f"bad scalar {text!r}")
    re_part = Fraction(m.group("re")) if m.group("re") else Fraction(0)
    im_txt = m.group("im")
    if im_txt is None:
        im_part = Fraction(0)
    elif im_txt in ("", "+"):
        im_part = Fraction(1)
    elif im_txt == "-":
        im_part = Fraction(-1)
    else:
        im_part = Fraction(im_txt)
    return GaussRational(re_part, im_part)


_SQRT_RE = re.compile(r"^(?P<c>.*?)\s*sqrt\(\s*(?P<q>[0-9]+(?:/[0-9]+)?)\s*\)\s*$")


def parse_quad(text: str) -> QuadScalar:
    m = _SQRT_RE.match(text.strip())
    if not m:
        return QuadScalar(parse_gauss(text), 1)
    c = m.group("c").strip()
    coeff = parse_gauss(c) if c else GaussRational(1)
    return QuadScalar(coeff, Fraction(m.group("q")))
