"""Laurent polynomials and Laurent-polynomial matrices over the Gaussian rationals.

A ``LaurentPoly`` represents ``sum_k c_k z^k`` with ``z = e^{-i xi}``; the coefficient at
degree ``k`` is the filter value ``u(k)``.  Storage is dense and integral: a lowest degree,
tuples of integer numerators for the real and imaginary parts, and one positive common
denominator.  Products use integer convolution (schoolbook for short inputs, Kronecker
substitution otherwise), which keeps the high-degree products of the construction pipeline
fast without any native dependency.

``LaurentMatrix`` is a dense immutable grid of ``LaurentPoly`` entries.  Identities that
involve shifted frequencies ``xi + 2 pi g / M`` are handled through coset components
(``coset_split``/``coset_merge``/``build_E``), so no root of unity is ever formed.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .exactnum import DivisionByZero, GaussRational

__all__ = [
    "LaurentPoly",
    "LaurentMatrix",
    "CosetSplit",
    "NotDivisible",
    "NotStronglyInvertible",
    "DimensionMismatch",
    "Z",
    "lp_arith",
    "adjoint",
    "coset_split",
    "coset_merge",
    "upsample",
    "build_E",
    "build_D",
    "build_F2",
    "det",
    "adjugate",
    "strong_inverse",
    "divide_exact",
]


class NotDivisible(ArithmeticError):
    """Long division left a nonzero remainder."""

    def __init__(self, entry, remainder, message: str = ""):
        self.entry = entry
        self.remainder = remainder
        super().__init__(message or f"not divisible at entry {entry}: remainder {remainder}")


class NotStronglyInvertible(ArithmeticError):
    """The determinant is not a nonzero monomial."""


class DimensionMismatch(ValueError):
    """Matrix shapes do not fit the operation."""


# integer convolution

_SCHOOLBOOK_CUTOFF = 24

try:  # GMP's subquadratic multiplication when available; plain ints otherwise
    from gmpy2 import mpz as _mpz
except ImportError:  # pragma: no cover
    _mpz = None


def _bigmul(x: int, y: int) -> int:
    if _mpz is None or min(x.bit_length(), y.bit_length()) < 20000:
        return x * y
    return int(_mpz(x) * _mpz(y))


def _schoolbook(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = [0] * (len(a) + len(b) - 1)
    for j, y in enumerate(b):
        if y:
            for i, x in enumerate(a):
                out[i + j] += x * y
    return out


def _kronecker(a: Sequence[int], b: Sequence[int]) -> list[int]:
    la, lb = len(a), len(b)
    ma = max(map(abs, a))
    mb = max(map(abs, b))
    bound = ma * mb * min(la, lb)
    nbytes = (bound.bit_length() + 2 + 7) // 8
    half = 1 << (8 * nbytes - 1)
    hb = half.to_bytes(nbytes, "little")

    def pack(c):
        biased = b"".join((x + half).to_bytes(nbytes, "little") for x in c)
        return int.from_bytes(biased, "little") - int.from_bytes(hb * len(c), "little")

    n = la + lb - 1
    prod = _bigmul(pack(a), pack(b)) + int.from_bytes(hb * n, "little")
    buf = prod.to_bytes(n * nbytes, "little")
    return [int.from_bytes(buf[k * nbytes:(k + 1) * nbytes], "little") - half for k in range(n)]


def _conv(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    if min(len(a), len(b)) <= _SCHOOLBOOK_CUTOFF:
        return _schoolbook(a, b)
    if not any(a) or not any(b):
        return [0] * (len(a) + len(b) - 1)
    return _kronecker(a, b)


def _addlists(a: Sequence[int], b: Sequence[int], sign: int = 1) -> list[int]:
    if len(a) < len(b):
        out = [sign * y for y in b]
        for i, x in enumerate(a):
            out[i] += x
        return out
    out = list(a)
    for i, y in enumerate(b):
        out[i] += sign * y
    return out


def _scalar_parts(c) -> tuple[int, int, int]:
    """``c`` as ``(re_num, im_num, den)``."""
    if isinstance(c, int):
        return c, 0, 1
    if isinstance(c, Fraction):
        return c.numerator, 0, c.denominator
    if not isinstance(c, GaussRational):
        c = GaussRational.coerce(c)
    den = c.re.denominator * c.im.denominator // math.gcd(c.re.denominator, c.im.denominator)
    return c.re.numerator * (den // c.re.denominator), c.im.numerator * (den // c.im.denominator), den


class LaurentPoly:
    """Exact Laurent polynomial ``sum_k c_k z^k`` with Gaussian-rational coefficients."""

    __slots__ = ("_lo", "_re", "_im", "_den", "_hash")

    def __init__(self, coeffs=None):
        """Build from a mapping ``degree -> scalar`` (or an iterable of pairs)."""
        items = dict(coeffs or {})
        if not items:
            self._set(0, (), None, 1)
            return
        items = {k: _scalar_parts(v) for k, v in items.items()}
        lo, hi = min(items), max(items)
        den = 1
        for _, _, d in items.values():
            den = den * d // math.gcd(den, d)
        re = [0] * (hi - lo + 1)
        im = [0] * (hi - lo + 1)
        for k, (a, b, d) in items.items():
            re[k - lo] = a * (den // d)
            im[k - lo] = b * (den // d)
        _normalize_into(self, lo, re, im, den)

    def _set(self, lo, re, im, den):
        self._lo = lo
        self._re = re
        self._im = im
        self._den = den
        self._hash = None

    @classmethod
    def _make(cls, lo: int, re: Sequence[int], im, den: int) -> LaurentPoly:
        p = cls.__new__(cls)
        _normalize_into(p, lo, re, im, den)
        return p

    # constructors
    @classmethod
    def const(cls, c) -> LaurentPoly:
        return cls({0: c})

    @classmethod
    def monomial(cls, k: int, c=1) -> LaurentPoly:
        return cls({k: c})

    @classmethod
    def from_list(cls, lo: int, coeffs: Iterable) -> LaurentPoly:
        return cls({lo + j: c for j, c in enumerate(coeffs) if c != 0})

    @classmethod
    def coerce(cls, x) -> LaurentPoly:
        if isinstance(x, LaurentPoly):
            return x
        return cls.const(x)

    # inspection
    def is_zero(self) -> bool:
        return not self._re

    def __bool__(self):
        return bool(self._re)

    @property
    def kmin(self) -> int:
        if not self._re:
            raise ValueError("zero polynomial has no support")
        return self._lo

    @property
    def kmax(self) -> int:
        if not self._re:
            raise ValueError("zero polynomial has no support")
        return self._lo + len(self._re) - 1

    def support(self) -> tuple[int, int] | None:
        if not self._re:
            return None
        return self._lo, self._lo + len(self._re) - 1

    def __len__(self):
        return len(self._re)

    def is_real(self) -> bool:
        return self._im is None

    def coeff(self, k: int) -> GaussRational:
        j = k - self._lo
        if not self._re or j < 0 or j >= len(self._re):
            return GaussRational(0)
        im = self._im[j] if self._im else 0
        return GaussRational(Fraction(self._re[j], self._den), Fraction(im, self._den))

    def items(self):
        """Nonzero ``(degree, coefficient)`` pairs in increasing degree."""
        for j, a in enumerate(self._re):
            b = self._im[j] if self._im else 0
            if a or b:
                yield self._lo + j, GaussRational(Fraction(a, self._den), Fraction(b, self._den))

    def coeffs(self) -> dict[int, GaussRational]:
        return dict(self.items())

    def numerators(self) -> tuple[int, tuple[int, ...], tuple[int, ...] | None, int]:
        """Raw representation ``(lo, re, im, den)``."""
        return self._lo, self._re, self._im, self._den

    def is_monomial(self) -> bool:
        return len(self._re) == 1

    def is_constant(self) -> bool:
        return not self._re or (len(self._re) == 1 and self._lo == 0)

    def constant_value(self) -> GaussRational:
        return self.coeff(0)

    # arithmetic
    def _binop_add(self, o: LaurentPoly, sign: int) -> LaurentPoly:
        if not o._re:
            return self
        if not self._re:
            return o if sign > 0 else -o
        lo = min(self._lo, o._lo)
        d = self._den * o._den // math.gcd(self._den, o._den)
        fs, fo = d // self._den, d // o._den
        n = max(self._lo + len(self._re), o._lo + len(o._re)) - lo
        re = [0] * n
        off = self._lo - lo
        for j, x in enumerate(self._re):
            re[off + j] = x * fs
        offo = o._lo - lo
        for j, x in enumerate(o._re):
            re[offo + j] += sign * x * fo
        im = None
        if self._im or o._im:
            im = [0] * n
            if self._im:
                for j, x in enumerate(self._im):
                    im[off + j] = x * fs
            if o._im:
                for j, x in enumerate(o._im):
                    im[offo + j] += sign * x * fo
        return LaurentPoly._make(lo, re, im, d)

    def __add__(self, other):
        o = _poly_or_none(other)
        if o is None:
            return NotImplemented
        return self._binop_add(o, 1)

    __radd__ = __add__

    def __sub__(self, other):
        o = _poly_or_none(other)
        if o is None:
            return NotImplemented
        return self._binop_add(o, -1)

    def __rsub__(self, other):
        o = _poly_or_none(other)
        if o is None:
            return NotImplemented
        return o._binop_add(self, -1)

    def __neg__(self):
        p = LaurentPoly.__new__(LaurentPoly)
        p._set(self._lo, tuple(-x for x in self._re),
               tuple(-x for x in self._im) if self._im else None, self._den)
        return p

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            return self._mul_poly(other)
        if isinstance(other, (int, Fraction, GaussRational)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, GaussRational)):
            return self.scale(other)
        return NotImplemented

    def _mul_poly(self, o: LaurentPoly) -> LaurentPoly:
        if not self._re or not o._re:
            return ZERO_POLY
        ar, ai, br, bi = self._re, self._im, o._re, o._im
        if ai is None and bi is None:
            re, im = _conv(ar, br), None
        elif ai is None:
            re, im = _conv(ar, br), _conv(ar, bi)
        elif bi is None:
            re, im = _conv(ar, br), _conv(ai, br)
        else:
            ac = _conv(ar, br)
            bd = _conv(ai, bi)
            t = _conv(_addlists(ar, ai), _addlists(br, bi))
            re = _addlists(ac, bd, -1)
            im = [t[k] - ac[k] - bd[k] for k in range(len(t))]
        return LaurentPoly._make(self._lo + o._lo, re, im, self._den * o._den)

    def scale(self, c) -> LaurentPoly:
        a, b, d = _scalar_parts(c)
        if not a and not b:
            return ZERO_POLY
        if not self._re:
            return self
        re0, im0 = self._re, self._im
        if b == 0:
            re = [a * x for x in re0]
            im = [a * x for x in im0] if im0 else None
        elif im0 is None:
            re = [a * x for x in re0]
            im = [b * x for x in re0]
        else:
            re = [a * x - b * y for x, y in zip(re0, im0)]
            im = [a * y + b * x for x, y in zip(re0, im0)]
        return LaurentPoly._make(self._lo, re, im, self._den * d)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, GaussRational)):
            c = GaussRational.coerce(other)
            if c.is_zero():
                raise DivisionByZero("division of a Laurent polynomial by zero")
            return self.scale(c.inverse())
        if isinstance(other, LaurentPoly):
            return divide_poly_exact(self, other)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if not self.is_monomial():
                raise NotStronglyInvertible("negative power of a non-monomial")
            return self.monomial_inverse() ** (-k)
        out, base = ONE_POLY, self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def monomial_inverse(self) -> LaurentPoly:
        if not self.is_monomial():
            raise NotStronglyInvertible(f"{self} is not a nonzero monomial")
        k = self._lo
        return LaurentPoly.monomial(-k, self.coeff(k).inverse())

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by ``z^k``."""
        if not self._re or k == 0:
            return self
        p = LaurentPoly.__new__(LaurentPoly)
        p._set(self._lo + k, self._re, self._im, self._den)
        return p

    def conj_coeffs(self) -> LaurentPoly:
        if self._im is None:
            return self
        p = LaurentPoly.__new__(LaurentPoly)
        p._set(self._lo, self._re, tuple(-x for x in self._im), self._den)
        return p

    def star(self) -> LaurentPoly:
        """Adjoint: coefficient at ``k`` becomes the conjugate of the coefficient at ``-k``."""
        if not self._re:
            return self
        p = LaurentPoly.__new__(LaurentPoly)
        p._set(-(self._lo + len(self._re) - 1), self._re[::-1],
               tuple(-x for x in self._im[::-1]) if self._im else None, self._den)
        return p

    def upsample(self, M: int) -> LaurentPoly:
        if M < 1:
            raise ValueError("upsampling factor must be >= 1")
        if M == 1 or not self._re:
            return self
        n = (len(self._re) - 1) * M + 1
        re = [0] * n
        re[::M] = self._re
        im = None
        if self._im:
            im = [0] * n
            im[::M] = self._im
        p = LaurentPoly.__new__(LaurentPoly)
        p._set(self._lo * M, tuple(re), tuple(im) if im else None, self._den)
        return p

    def coset(self, gamma: int, M: int) -> LaurentPoly:
        """The sequence ``k -> u(gamma + M k)``; any integer ``gamma`` is allowed."""
        if not self._re:
            return self
        lo = self._lo
        start = lo + ((gamma - lo) % M)
        j0 = start - lo
        re = self._re[j0::M]
        if not re:
            return ZERO_POLY
        im = self._im[j0::M] if self._im else None
        return LaurentPoly._make((start - gamma) // M, re, im, self._den)

    def subs_neg(self) -> LaurentPoly:
        """``z -> -z``, the frequency shift by ``pi``."""
        if not self._re:
            return self
        lo = self._lo
        sgn = [(-1) ** ((lo + j) & 1) for j in range(len(self._re))]
        re = [s * x for s, x in zip(sgn, self._re)]
        im = [s * x for s, x in zip(sgn, self._im)] if self._im else None
        return LaurentPoly._make(lo, re, im, self._den)

    def valuation_at_one(self) -> int:
        """Multiplicity of the root ``z = 1``."""
        if not self._re:
            raise ValueError("zero polynomial")
        m, p = 0, self
        one_minus_z = LaurentPoly({0: 1, 1: -1})
        while True:
            q, r = divmod_poly(p, one_minus_z)
            if r:
                return m
            p, m = q, m + 1

    def __call__(self, z):
        """Evaluate at a numeric point (complex, mpmath, Fraction...)."""
        if not self._re:
            return 0 * z
        # Horner on the dense numerator, then the monomial and denominator
        acc = 0
        for j in range(len(self._re) - 1, -1, -1):
            c = complex(self._re[j], self._im[j]) if self._im else self._re[j]
            acc = acc * z + c
        return acc * z ** self._lo / self._den

    def eval_mp(self, z):
        """Evaluate at an ``mpmath`` number with working precision preserved."""
        import mpmath

        acc = mpmath.mpc(0)
        for j in range(len(self._re) - 1, -1, -1):
            c = mpmath.mpc(self._re[j], self._im[j] if self._im else 0)
            acc = acc * z + c
        return acc * z ** self._lo / self._den

    # comparisons
    def __eq__(self, other):
        o = _poly_or_none(other)
        if o is None:
            return NotImplemented
        return (self._lo == o._lo or not self._re) and self._re == o._re and self._im == o._im \
            and self._den == o._den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._lo, self._re, self._im, self._den))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self._re:
            return "0"
        terms = []
        for k, c in self.items():
            cs = str(c)
            if c.re and c.im:
                cs = f"({cs})"
            if k == 0:
                terms.append(cs)
            else:
                zs = "z" if k == 1 else f"z^{k}"
                if c == 1:
                    terms.append(zs)
                elif c == -1:
                    terms.append("-" + zs)
                else:
                    terms.append(f"{cs}*{zs}")
        out = " + ".join(terms)
        return out.replace("+ -", "- ")


def _normalize_into(p: LaurentPoly, lo: int, re, im, den: int) -> None:
    n = len(re)
    if im is not None and not any(im):
        im = None
    s = 0
    if im is None:
        while s < n and not re[s]:
            s += 1
        if s == n:
            p._set(0, (), None, 1)
            return
        e = n
        while not re[e - 1]:
            e -= 1
    else:
        while s < n and not re[s] and not im[s]:
            s += 1
        if s == n:
            p._set(0, (), None, 1)
            return
        e = n
        while not re[e - 1] and not im[e - 1]:
            e -= 1
    re = re[s:e]
    if im is not None:
        im = im[s:e]
    if den < 0:
        den = -den
        re = [-x for x in re]
        if im is not None:
            im = [-x for x in im]
    g = math.gcd(den, *re) if im is None else math.gcd(den, *re, *im)
    if g != 1:
        re = [x // g for x in re]
        if im is not None:
            im = [x // g for x in im]
        den //= g
    p._set(lo + s, tuple(re), tuple(im) if im is not None else None, den)


def _poly_or_none(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction, GaussRational)):
        return LaurentPoly.const(x)
    return None


ZERO_POLY = LaurentPoly()
ONE_POLY = LaurentPoly.const(1)
Z = LaurentPoly.monomial(1)


# division

def _intdiv_unit_lead(a: list[int], d: Sequence[int]) -> tuple[list[int], list[int]]:
    """Divide integer polynomial ``a`` by ``d`` (lowest first, leading coeff +-1)."""
    dd = len(d) - 1
    lead = d[-1]
    rem = list(a)
    nq = len(a) - dd
    q = [0] * max(nq, 0)
    for k in range(nq - 1, -1, -1):
        c = rem[k + dd] * lead  # lead is +-1, so this is the exact quotient
        if c:
            q[k] = c
            for j in range(dd + 1):
                rem[k + j] -= c * d[j]
    return q, rem[:dd] if nq > 0 else rem


def _fracdiv(a: list[GaussRational], d: list[GaussRational]):
    dd = len(d) - 1
    inv = d[-1].inverse()
    rem = list(a)
    nq = len(a) - dd
    q = [GaussRational(0)] * max(nq, 0)
    for k in range(nq - 1, -1, -1):
        c = rem[k + dd] * inv
        if c:
            q[k] = c
            for j in range(dd + 1):
                if d[j]:
                    rem[k + j] = rem[k + j] - c * d[j]
    return q, rem[:dd] if nq > 0 else rem


def divmod_poly(A: LaurentPoly, D: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Top-down long division in the Laurent ring.

    ``D`` is first stripped of its monomial factor; ``A = Q*D + R`` where ``R`` is the
    remainder of the ordinary polynomial division, placed back at ``A``'s lowest degree.
    """
    if not D._re:
        raise DivisionByZero("division by the zero polynomial")
    if not A._re:
        return ZERO_POLY, ZERO_POLY
    dlo = D._lo
    if len(D._re) == 1:
        return A * D.monomial_inverse(), ZERO_POLY
    alo = A._lo
    if D._im is None and abs(D._re[-1]) == 1:
        qr, rr = _intdiv_unit_lead(list(A._re), D._re)
        Q = LaurentPoly._make(alo - dlo, qr, None, A._den)
        if A._im:
            qi, ri = _intdiv_unit_lead(list(A._im), D._re)
            Q = LaurentPoly._make(alo - dlo, qr, qi, A._den)
            R = LaurentPoly._make(alo, rr, ri, A._den)
        else:
            R = LaurentPoly._make(alo, rr, None, A._den)
        # A = Q*Dnum*z^dlo + R, and D = Dnum*z^dlo/Dden
        return Q.scale(D._den), R
    a = [A.coeff(alo + j) for j in range(len(A._re))]
    d = [D.coeff(dlo + j) for j in range(len(D._re))]
    q, r = _fracdiv(a, d)
    Q = LaurentPoly({alo - dlo + j: c for j, c in enumerate(q) if c})
    R = LaurentPoly({alo + j: c for j, c in enumerate(r) if c})
    return Q, R


def divide_poly_exact(A: LaurentPoly, D: LaurentPoly, entry=None) -> LaurentPoly:
    Q, R = divmod_poly(A, D)
    if R:
        raise NotDivisible(entry, R)
    return Q


# matrices

def _as_poly(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    return LaurentPoly.const(x)


class LaurentMatrix:
    """Dense immutable matrix of Laurent polynomials."""

    __slots__ = ("rows", "cols", "_e")

    def __init__(self, entries: Sequence[Sequence]):
        e = tuple(tuple(_as_poly(x) for x in row) for row in entries)
        if not e or not e[0]:
            raise DimensionMismatch("matrix dimensions must be >= 1")
        c = len(e[0])
        if any(len(row) != c for row in e):
            raise DimensionMismatch("ragged matrix")
        self.rows = len(e)
        self.cols = c
        self._e = e

    @classmethod
    def _raw(cls, e) -> LaurentMatrix:
        m = cls.__new__(cls)
        m._e = e
        m.rows = len(e)
        m.cols = len(e[0])
        return m

    @classmethod
    def identity(cls, n: int) -> LaurentMatrix:
        return cls._raw(tuple(tuple(ONE_POLY if i == j else ZERO_POLY for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, r: int, c: int) -> LaurentMatrix:
        return cls._raw(tuple(tuple(ZERO_POLY for _ in range(c)) for _ in range(r)))

    @classmethod
    def diag(cls, entries: Sequence) -> LaurentMatrix:
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def scalar(cls, p) -> LaurentMatrix:
        return cls([[p]])

    @classmethod
    def from_blocks(cls, blocks: Sequence[Sequence[LaurentMatrix]]) -> LaurentMatrix:
        rows = []
        for brow in blocks:
            h = brow[0].rows
            if any(b.rows != h for b in brow):
                raise DimensionMismatch("block row heights differ")
            for i in range(h):
                rows.append(tuple(x for b in brow for x in b._e[i]))
        return cls._raw(tuple(rows))

    @classmethod
    def hstack(cls, mats: Sequence[LaurentMatrix]) -> LaurentMatrix:
        return cls.from_blocks([list(mats)])

    @classmethod
    def vstack(cls, mats: Sequence[LaurentMatrix]) -> LaurentMatrix:
        return cls.from_blocks([[m] for m in mats])

    # access
    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij) -> LaurentPoly:
        i, j = ij
        return self._e[i][j]

    def entries(self) -> tuple[tuple[LaurentPoly, ...], ...]:
        return self._e

    def row(self, i: int) -> LaurentMatrix:
        return LaurentMatrix._raw((self._e[i],))

    def col(self, j: int) -> LaurentMatrix:
        return LaurentMatrix._raw(tuple((r[j],) for r in self._e))

    def sub(self, r0: int, r1: int, c0: int, c1: int) -> LaurentMatrix:
        return LaurentMatrix._raw(tuple(tuple(r[c0:c1]) for r in self._e[r0:r1]))

    def block(self, i: int, j: int, h: int, w: int | None = None) -> LaurentMatrix:
        """The ``(i, j)`` block of size ``h x w`` (square ``h`` if ``w`` omitted)."""
        w = h if w is None else w
        return self.sub(i * h, (i + 1) * h, j * w, (j + 1) * w)

    def with_entry(self, i: int, j: int, p) -> LaurentMatrix:
        e = [list(r) for r in self._e]
        e[i][j] = _as_poly(p)
        return LaurentMatrix._raw(tuple(tuple(r) for r in e))

    def map(self, f) -> LaurentMatrix:
        return LaurentMatrix._raw(tuple(tuple(f(x) for x in r) for r in self._e))

    def is_zero(self) -> bool:
        return all(not x for r in self._e for x in r)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def support(self) -> tuple[int, int] | None:
        sups = [x.support() for r in self._e for x in r if x]
        if not sups:
            return None
        return min(s[0] for s in sups), max(s[1] for s in sups)

    def coeff(self, k: int) -> list[list[GaussRational]]:
        return [[x.coeff(k) for x in r] for r in self._e]

    def is_real(self) -> bool:
        return all(x.is_real() for r in self._e for x in r)

    # arithmetic
    def _check_same(self, o: LaurentMatrix):
        if self.shape != o.shape:
            raise DimensionMismatch(f"{self.shape} vs {o.shape}")

    def __add__(self, other):
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        self._check_same(other)
        return LaurentMatrix._raw(tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(self._e, other._e)))

    def __sub__(self, other):
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        self._check_same(other)
        return LaurentMatrix._raw(tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(self._e, other._e)))

    def __neg__(self):
        return self.map(lambda x: -x)

    def __mul__(self, other):
        if isinstance(other, LaurentMatrix):
            return self.matmul(other)
        if isinstance(other, (LaurentPoly, int, Fraction, GaussRational)):
            p = _as_poly(other)
            return self.map(lambda x: x * p)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (LaurentPoly, int, Fraction, GaussRational)):
            p = _as_poly(other)
            return self.map(lambda x: p * x)
        return NotImplemented

    def __matmul__(self, other):
        return self.matmul(other)

    def matmul(self, other: LaurentMatrix) -> LaurentMatrix:
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other._e))
        out = []
        for r in self._e:
            row = []
            for c in cols:
                acc = ZERO_POLY
                for x, y in zip(r, c):
                    if x._re and y._re:
                        acc = acc + x * y
                row.append(acc)
            out.append(tuple(row))
        return LaurentMatrix._raw(tuple(out))

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = LaurentMatrix.identity(self.rows)
        for _ in range(k):
            out = out * self
        return out

    def scale(self, c) -> LaurentMatrix:
        return self.map(lambda x: x.scale(c))

    def transpose(self) -> LaurentMatrix:
        return LaurentMatrix._raw(tuple(zip(*self._e)))

    @property
    def T(self) -> LaurentMatrix:
        return self.transpose()

    def adjoint(self) -> LaurentMatrix:
        return LaurentMatrix._raw(tuple(tuple(x.star() for x in c) for c in zip(*self._e)))

    def upsample(self, M: int) -> LaurentMatrix:
        return self.map(lambda x: x.upsample(M))

    def shift(self, k: int) -> LaurentMatrix:
        return self.map(lambda x: x.shift(k))

    def subs_neg(self) -> LaurentMatrix:
        return self.map(lambda x: x.subs_neg())

    def coset(self, gamma: int, M: int) -> LaurentMatrix:
        return self.map(lambda x: x.coset(gamma, M))

    def is_hermitian(self) -> bool:
        return self.is_square() and self == self.adjoint()

    def __eq__(self, other):
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        return self._e == other._e

    def __hash__(self):
        return hash(self._e)

    def __repr__(self):
        return f"LaurentMatrix({self.rows}x{self.cols})"

    def __str__(self):
        return "[" + ",\n ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self._e) + "]"

    # determinant machinery
    def det(self) -> LaurentPoly:
        if not self.is_square():
            raise DimensionMismatch("determinant of a non-square matrix")
        return _det_rows(self._e, 0, tuple(range(self.cols)), {})

    def adjugate(self) -> LaurentMatrix:
        if not self.is_square():
            raise DimensionMismatch("adjugate of a non-square matrix")
        n = self.rows
        if n == 1:
            return LaurentMatrix.identity(1)
        out = [[ZERO_POLY] * n for _ in range(n)]
        for i in range(n):
            minor_rows = tuple(r for k, r in enumerate(self._e) if k != i)
            for j in range(n):
                cols = tuple(c for c in range(n) if c != j)
                d = _det_rows(minor_rows, 0, cols, {})
                out[j][i] = -d if (i + j) % 2 else d
        return LaurentMatrix._raw(tuple(tuple(r) for r in out))

    def strong_inverse(self) -> LaurentMatrix:
        d = self.det()
        if not d.is_monomial():
            raise NotStronglyInvertible(f"determinant {d} is not a nonzero monomial")
        return self.adjugate() * d.monomial_inverse()

    def is_strongly_invertible(self) -> bool:
        return self.is_square() and self.det().is_monomial()

    def divide_exact(self, d: LaurentPoly) -> LaurentMatrix:
        d = _as_poly(d)
        out = []
        for i, r in enumerate(self._e):
            out.append(tuple(divide_poly_exact(x, d, (i, j)) for j, x in enumerate(r)))
        return LaurentMatrix._raw(tuple(out))


def _det_rows(rows, k: int, cols: tuple[int, ...], memo: dict) -> LaurentPoly:
    """Laplace expansion along row ``k`` over the remaining columns, memoized on ``cols``."""
    if len(cols) == 1:
        return rows[k][cols[0]]
    if len(cols) == 2:
        a, b = cols
        return rows[k][a] * rows[k + 1][b] - rows[k][b] * rows[k + 1][a]
    hit = memo.get(cols)
    if hit is not None:
        return hit
    acc = ZERO_POLY
    for t, c in enumerate(cols):
        x = rows[k][c]
        if not x:
            continue
        sub = _det_rows(rows, k + 1, cols[:t] + cols[t + 1:], memo)
        if sub:
            acc = acc - x * sub if t % 2 else acc + x * sub
    memo[cols] = acc
    return acc


class CosetSplit:
    """The ``M`` coset components ``u^{[g;M]}``, ``g = 0..M-1``, of a Laurent matrix."""

    __slots__ = ("M", "parts")

    def __init__(self, M: int, parts: Sequence[LaurentMatrix]):
        if M < 2:
            raise ValueError("dilation must be >= 2")
        if len(parts) != M:
            raise DimensionMismatch("need exactly M coset parts")
        self.M = M
        self.parts = tuple(parts)

    def __eq__(self, other):
        return isinstance(other, CosetSplit) and self.M == other.M and self.parts == other.parts

    def __hash__(self):
        return hash((self.M, self.parts))

    def __repr__(self):
        return f"CosetSplit(M={self.M}, shape={self.parts[0].shape})"


# functional interface

def _as_matrix(x) -> LaurentMatrix:
    if isinstance(x, LaurentMatrix):
        return x
    return LaurentMatrix.scalar(x)


def lp_arith(A, B, op: str) -> LaurentMatrix:
    A, B = _as_matrix(A), _as_matrix(B)
    if op == "add":
        return A + B
    if op == "mul":
        return A * B
    raise ValueError(f"unknown op {op!r}")


def adjoint(A) -> LaurentMatrix:
    return _as_matrix(A).adjoint()


def coset_split(A, M: int) -> CosetSplit:
    A = _as_matrix(A)
    return CosetSplit(M, [A.coset(g, M) for g in range(M)])


def coset_merge(S: CosetSplit) -> LaurentMatrix:
    out = S.parts[0].upsample(S.M)
    for g in range(1, S.M):
        out = out + S.parts[g].upsample(S.M).shift(g)
    return out


def upsample(A, M: int) -> LaurentMatrix:
    return _as_matrix(A).upsample(M)


def build_E(u, M: int) -> LaurentMatrix:
    """``E_{u;M}``: block ``(l, k)`` is the coset ``u^{[k-l;M]}`` (negative cosets direct)."""
    u = _as_matrix(u)
    if not u.is_square():
        raise DimensionMismatch("E is built from a square filter")
    cos = {g: u.coset(g, M) for g in range(-(M - 1), M)}
    return LaurentMatrix.from_blocks([[cos[k - l] for k in range(M)] for l in range(M)])


def build_D(u, M: int) -> LaurentMatrix:
    """``D_{u;M}`` for ``M = 2``: ``Diag(u(z), u(-z))``; larger ``M`` needs roots of unity."""
    if M != 2:
        raise ValueError("D is only materialized for M = 2")
    u = _as_matrix(u)
    r = u.rows
    return LaurentMatrix.from_blocks([[u, LaurentMatrix.zeros(r, r)], [LaurentMatrix.zeros(r, r), u.subs_neg()]])


def build_F2(r: int) -> LaurentMatrix:
    """``F_{r;2} = [[I, I], [z I, -z I]]``."""
    eye = LaurentMatrix.identity(r)
    return LaurentMatrix.from_blocks([[eye, eye], [eye.shift(1), -eye.shift(1)]])


def det(A) -> LaurentPoly:
    return _as_matrix(A).det()


def adjugate(A) -> LaurentMatrix:
    return _as_matrix(A).adjugate()


def strong_inverse(A) -> LaurentMatrix:
    return _as_matrix(A).strong_inverse()


def divide_exact(A, d) -> LaurentMatrix:
    return _as_matrix(A).divide_exact(_as_poly(d))
