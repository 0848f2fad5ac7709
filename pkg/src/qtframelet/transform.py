"""Discrete multiframelet transform: subdivision, transition, analysis and synthesis.

For a filter ``u`` and dilation ``M``

    [S_{u,M} v](n) = sqrt(M) sum_k v(k) u(n - M k),
    [T_{u,M} v](n) = sqrt(M) sum_k v(k) u(k - M n)^*.

A finitely supported row signal is the Laurent row ``v(z) = sum_k v(k) z^k``, so
``S_u v = sqrt(M) v(z^M) u(z)`` and ``T_u v = sqrt(M) (v u^*)^{[0;M]}``.  Both the
convolution route (Laurent products) and the literal double sums are implemented.

Exact signals keep rational data and a global ``QuadScalar`` factor carrying every
``sqrt(M)`` and ``sqrt(r)``; float signals hold complex numpy arrays.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .exactnum import GaussRational, QuadScalar, RadicandMismatch
from .laurent import LaurentMatrix, LaurentPoly
from .moments import refinable_jets

__all__ = [
    "Signal",
    "FloatSignal",
    "CoefficientPyramid",
    "TransformBank",
    "ThetaClass",
    "DeconvolutionUnavailable",
    "NotSingularAtPoint",
    "subdivision",
    "transition",
    "subdivision_direct",
    "transition_direct",
    "analyze",
    "synthesize",
    "classify_theta_conv",
    "annihilator_witness",
    "vector_convert",
    "vector_convert_inverse",
    "convolve",
    "deconvolve",
    "valid_range",
    "cascade_render",
    "integer_samples",
    "cascade_csv",
    "ScaledFilter",
    "float_subdivision",
    "float_transition",
    "analyze_float",
    "synthesize_float",
]

G0 = GaussRational(0)
G1 = GaussRational(1)
Q1 = QuadScalar(1)


class DeconvolutionUnavailable(ArithmeticError):
    """``Theta`` has no finitely supported inverse."""


class NotSingularAtPoint(ValueError):
    """``Theta(xi0)`` is invertible, so no exponential sequence is annihilated."""


# signals

class Signal:
    """Exact row signal ``scale * data`` with ``data`` a ``1 x r`` Laurent row."""

    __slots__ = ("data", "scale")

    def __init__(self, data: LaurentMatrix, scale: QuadScalar = Q1):
        if data.rows != 1:
            raise ValueError("a signal is a 1 x r Laurent row")
        if not isinstance(scale, QuadScalar):
            scale = QuadScalar.coerce(scale)
        self.data = data
        self.scale = scale

    @classmethod
    def from_dict(cls, values: dict, r: int | None = None, scale=Q1) -> Signal:
        """``{k: [v_1, ..., v_r]}``; scalar values are allowed when ``r = 1``."""
        vals = {k: (list(v) if isinstance(v, (list, tuple)) else [v]) for k, v in values.items()}
        if r is None:
            r = len(next(iter(vals.values()))) if vals else 1
        cols = [LaurentPoly({k: v[j] for k, v in vals.items() if v[j] != 0}) for j in range(r)]
        return cls(LaurentMatrix([cols]), scale)

    @classmethod
    def from_rows(cls, start: int, rows: Sequence[Sequence], scale=Q1) -> Signal:
        return cls.from_dict({start + i: list(row) for i, row in enumerate(rows)}, len(rows[0]) if rows else 1, scale)

    @classmethod
    def zeros(cls, r: int) -> Signal:
        return cls(LaurentMatrix.zeros(1, r))

    @classmethod
    def delta(cls, r: int, j: int = 0, at: int = 0) -> Signal:
        return cls(LaurentMatrix([[LaurentPoly.monomial(at) if i == j else 0 for i in range(r)]]))

    @property
    def r(self) -> int:
        return self.data.cols

    def support(self) -> tuple[int, int] | None:
        return self.data.support()

    def is_zero(self) -> bool:
        return self.data.is_zero() or not self.scale.coeff

    def normalized(self) -> Signal:
        """Fold the rational part of the scale into the data."""
        if self.is_zero():
            return Signal.zeros(self.r)
        c = self.scale.coeff
        if c == 1:
            return self
        return Signal(self.data * LaurentPoly.const(c), QuadScalar(1, self.scale.radicand))

    def __getitem__(self, k: int) -> list:
        """Entries at index ``k`` as ``QuadScalar`` values."""
        return [QuadScalar(self.data[0, j].coeff(k), 1) * self.scale for j in range(self.r)]

    def values(self) -> dict:
        """``{k: [QuadScalar, ...]}`` over the support."""
        sup = self.support()
        if sup is None:
            return {}
        out = {}
        for k in range(sup[0], sup[1] + 1):
            row = [self.data[0, j].coeff(k) for j in range(self.r)]
            if any(row):
                out[k] = [QuadScalar(x, 1) * self.scale for x in row]
        return out

    def __add__(self, other: Signal) -> Signal:
        if self.r != other.r:
            raise ValueError("signal widths differ")
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        a, b = self.normalized(), other.normalized()
        if a.scale.radicand != b.scale.radicand:
            raise RadicandMismatch("signals carry different square-root factors")
        return Signal(a.data + b.data, a.scale)

    def __neg__(self):
        return Signal(self.data, -self.scale)

    def __sub__(self, other: Signal) -> Signal:
        return self + (-other)

    def scaled(self, s) -> Signal:
        return Signal(self.data, self.scale * QuadScalar.coerce(s))

    def __eq__(self, other):
        if not isinstance(other, Signal):
            return NotImplemented
        if self.r != other.r:
            return False
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        a, b = self.normalized(), other.normalized()
        return a.scale.radicand == b.scale.radicand and a.data == b.data

    def __hash__(self):
        n = self.normalized()
        return hash((n.data, n.scale.radicand))

    def __repr__(self):
        return f"Signal(r={self.r}, support={self.support()}, scale={self.scale})"

    def to_float(self) -> FloatSignal:
        sup = self.support()
        if sup is None:
            return FloatSignal(0, np.zeros((0, self.r), dtype=complex))
        lo, hi = sup
        arr = np.zeros((hi - lo + 1, self.r), dtype=complex)
        s = complex(self.scale)
        for j in range(self.r):
            for k, c in self.data[0, j].items():
                arr[k - lo, j] = complex(c) * s
        return FloatSignal(lo, arr)


@dataclass
class FloatSignal:
    """Double-precision row signal: ``array[i]`` is the value at ``offset + i``."""

    offset: int
    array: np.ndarray

    @property
    def r(self) -> int:
        return self.array.shape[1]

    def allclose(self, other: FloatSignal, tol: float = 1e-10) -> bool:
        lo = min(self.offset, other.offset)
        hi = max(self.offset + len(self.array), other.offset + len(other.array))
        a = np.zeros((hi - lo, self.r), dtype=complex)
        b = np.zeros_like(a)
        a[self.offset - lo:self.offset - lo + len(self.array)] = self.array
        b[other.offset - lo:other.offset - lo + len(other.array)] = other.array
        return bool(np.max(np.abs(a - b), initial=0.0) <= tol)


@dataclass
class ScaledFilter:
    """``scale * matrix`` with rational ``matrix``."""

    matrix: LaurentMatrix
    scale: QuadScalar = Q1


def _sf(u) -> ScaledFilter:
    if isinstance(u, ScaledFilter):
        return u
    return ScaledFilter(u)


# operators, convolution route

def subdivision(v: Signal, u, M: int) -> Signal:
    """``S_{u,M} v = sqrt(M) v(z^M) u(z)``."""
    u = _sf(u)
    if v.r != u.matrix.rows:
        raise ValueError("signal width must equal the filter's row count")
    data = v.data.upsample(M) * u.matrix
    return Signal(data, v.scale * u.scale * QuadScalar.sqrt(M))


def transition(v: Signal, u, M: int) -> Signal:
    """``T_{u,M} v = sqrt(M) (v u^*)^{[0;M]}``."""
    u = _sf(u)
    if v.r != u.matrix.cols:
        raise ValueError("signal width must equal the filter's column count")
    data = (v.data * u.matrix.adjoint()).coset(0, M)
    return Signal(data, v.scale * u.scale.conj() * QuadScalar.sqrt(M))


# operators, literal sums

def _as_table(x) -> dict:
    """``{k: row}`` with rows as lists of scalars; accepts signals, filters and dicts."""
    if isinstance(x, Signal):
        return {k: [x.data[0, j].coeff(k) for j in range(x.r)] for k in _indices(x.data)}
    if isinstance(x, LaurentMatrix):
        return {k: x.coeff(k) for k in _indices(x)}
    return dict(x)


def _indices(A: LaurentMatrix):
    sup = A.support()
    return [] if sup is None else range(sup[0], sup[1] + 1)


def _rowmat(row, mat, conj_t: bool):
    """``row @ mat`` or ``row @ mat^*`` for nested lists of scalars."""
    if conj_t:
        return [sum((row[i] * mat[j][i].conj() for i in range(len(row))), G0) for j in range(len(mat))]
    return [sum((row[i] * mat[i][j] for i in range(len(row))), G0) for j in range(len(mat[0]))]


def subdivision_direct(v: dict, u: LaurentMatrix, M: int) -> dict:
    """Literal ``sum_k v(k) u(n - M k)`` (without the ``sqrt(M)`` factor) on ``{k: row}`` tables."""
    ut = _as_table(u)
    vt = _as_table(v)
    out: dict = {}
    for k, row in vt.items():
        for j, mat in ut.items():
            n = M * k + j
            add = _rowmat(row, mat, False)
            cur = out.get(n)
            out[n] = add if cur is None else [x + y for x, y in zip(cur, add)]
    return {n: r for n, r in out.items() if any(r)}


def transition_direct(v: dict, u: LaurentMatrix, M: int) -> dict:
    """Literal ``sum_k v(k) u(k - M n)^*`` (without the ``sqrt(M)`` factor)."""
    ut = _as_table(u)
    vt = _as_table(v)
    out: dict = {}
    for k, row in vt.items():
        for j, mat in ut.items():
            if (k - j) % M:
                continue
            n = (k - j) // M
            add = _rowmat(row, mat, True)
            cur = out.get(n)
            out[n] = add if cur is None else [x + y for x, y in zip(cur, add)]
    return {n: r for n, r in out.items() if any(r)}


# banks and the multi-level transform

@dataclass
class TransformBank:
    """Primal and dual filters of a transform; ``Theta = None`` means the identity."""

    M: int
    a: ScaledFilter
    b: ScaledFilter
    a_dual: ScaledFilter
    b_dual: ScaledFilter
    Theta: Optional[LaurentMatrix] = None

    @classmethod
    def from_filters(cls, a, b, M, a_dual=None, b_dual=None, Theta=None, b_scale=Q1) -> TransformBank:
        sa = _sf(a)
        sb = b if isinstance(b, ScaledFilter) else ScaledFilter(b, QuadScalar.coerce(b_scale))
        sad = sa if a_dual is None else _sf(a_dual)
        if b_dual is None:
            sbd = sb
        elif isinstance(b_dual, ScaledFilter):
            sbd = b_dual
        else:
            sbd = ScaledFilter(b_dual, sb.scale)
        return cls(M, sa, sb, sad, sbd, Theta)

    @classmethod
    def from_qt(cls, bank, derived: bool = True) -> TransformBank:
        """Derived form ``(a_ring, b_ring)`` with ``Theta = I`` or the raw OEP form."""
        E = bank.eps_matrix
        if derived:
            br = bank.b_ring_poly
            sc = QuadScalar.sqrt(Fraction(1) / bank.theta_scale2)
            return cls(bank.M, ScaledFilter(bank.a_ring), ScaledFilter(br, sc),
                       ScaledFilter(bank.a_ring), ScaledFilter(E * br, sc), None)
        Theta = bank.Theta_poly * LaurentPoly.const(GaussRational(bank.theta_scale2))
        return cls(bank.M, ScaledFilter(bank.a), ScaledFilter(bank.b),
                   ScaledFilter(bank.a), ScaledFilter(E * bank.b), Theta)


def _as_transform_bank(bank) -> TransformBank:
    if isinstance(bank, TransformBank):
        return bank
    return TransformBank.from_qt(bank, derived=True)


@dataclass
class CoefficientPyramid:
    """``details[j-1] = T_b T_a^{j-1} v`` for ``j = 1..J`` and ``approx = T_a^J v``."""

    details: list
    approx: Signal
    M: int = 2

    @property
    def levels(self) -> int:
        return len(self.details)


def analyze(v: Signal, bank, J: int) -> CoefficientPyramid:
    """``J``-level decomposition by transition operators."""
    if J < 1:
        raise ValueError("need J >= 1")
    tb = _as_transform_bank(bank)
    details = []
    cur = v
    for _ in range(J):
        details.append(transition(cur, tb.b, tb.M))
        cur = transition(cur, tb.a, tb.M)
    return CoefficientPyramid(details, cur, tb.M)


def convolve(v: Signal, Theta: LaurentMatrix) -> Signal:
    """``(v * Theta)(n) = sum_k v(k) Theta(n - k)``."""
    return Signal(v.data * Theta, v.scale)


def deconvolve(v: Signal, Theta: LaurentMatrix) -> Signal:
    """Inverse of ``convolve`` for strongly invertible ``Theta``."""
    if not Theta.is_strongly_invertible():
        raise DeconvolutionUnavailable("Theta is not strongly invertible; no finitely supported inverse")
    return Signal(v.data * Theta.strong_inverse(), v.scale)


def synthesize(p: CoefficientPyramid, bank) -> Signal:
    """Reconstruction with the dual filters; ``Theta`` is applied and undone when present."""
    tb = _as_transform_bank(bank)
    cur = p.approx
    if tb.Theta is not None:
        cur = convolve(cur, tb.Theta)
    for w in reversed(p.details):
        cur = subdivision(cur, tb.a_dual, tb.M) + subdivision(w, tb.b_dual, tb.M)
    if tb.Theta is not None:
        cur = deconvolve(cur, tb.Theta)
    return cur


# float route

def _float_filter(u: ScaledFilter):
    sup = u.matrix.support()
    if sup is None:
        return 0, np.zeros((1, u.matrix.rows, u.matrix.cols), dtype=complex)
    lo, hi = sup
    arr = np.zeros((hi - lo + 1, u.matrix.rows, u.matrix.cols), dtype=complex)
    s = complex(u.scale)
    for k in range(lo, hi + 1):
        arr[k - lo] = np.array([[complex(x) for x in row] for row in u.matrix.coeff(k)]) * s
    return lo, arr


def float_subdivision(v: FloatSignal, u, M: int) -> FloatSignal:
    lo, arr = _float_filter(_sf(u))
    n_out = M * (len(v.array) - 1) + len(arr)
    out = np.zeros((n_out, arr.shape[2]), dtype=complex)
    for k in range(len(v.array)):
        out[M * k:M * k + len(arr)] += np.einsum("i,jik->jk", v.array[k], arr)
    return FloatSignal(M * v.offset + lo, out * np.sqrt(M))


def float_transition(v: FloatSignal, u, M: int) -> FloatSignal:
    lo, arr = _float_filter(_sf(u))
    conj = np.conj(np.transpose(arr, (0, 2, 1)))
    # n ranges where some k - M n falls in the filter support
    k0, k1 = v.offset, v.offset + len(v.array) - 1
    hi = lo + len(arr) - 1
    n0 = -((-(k0 - hi)) // M)
    n1 = (k1 - lo) // M
    out = np.zeros((max(n1 - n0 + 1, 0), arr.shape[1]), dtype=complex)
    for n in range(n0, n1 + 1):
        for j in range(len(arr)):
            k = M * n + lo + j
            if k0 <= k <= k1:
                out[n - n0] += v.array[k - k0] @ conj[j]
    return FloatSignal(n0, out * np.sqrt(M))


def analyze_float(v: FloatSignal, bank, J: int):
    tb = _as_transform_bank(bank)
    details, cur = [], v
    for _ in range(J):
        details.append(float_transition(cur, tb.b, tb.M))
        cur = float_transition(cur, tb.a, tb.M)
    return details, cur


def synthesize_float(details, approx: FloatSignal, bank) -> FloatSignal:
    tb = _as_transform_bank(bank)
    if tb.Theta is not None:
        raise DeconvolutionUnavailable("float synthesis supports Theta = I banks only")
    cur = approx
    for w in reversed(details):
        x = float_subdivision(cur, tb.a_dual, tb.M)
        y = float_subdivision(w, tb.b_dual, tb.M)
        lo = min(x.offset, y.offset)
        hi = max(x.offset + len(x.array), y.offset + len(y.array))
        acc = np.zeros((hi - lo, x.r), dtype=complex)
        acc[x.offset - lo:x.offset - lo + len(x.array)] += x.array
        acc[y.offset - lo:y.offset - lo + len(y.array)] += y.array
        cur = FloatSignal(lo, acc)
    return cur


# Theta classification

@dataclass
class ThetaClass:
    kind: str
    det: LaurentPoly
    method: str
    unit_roots: int = 0
    singular_points: list = field(default_factory=list)

    def __str__(self):
        return self.kind


_EXACT_POINTS = [(Fraction(0), GaussRational(1)), (Fraction(1, 2), GaussRational(0, -1)),
                 (Fraction(1), GaussRational(-1)), (Fraction(3, 2), GaussRational(0, 1))]


def _eval_gauss(p: LaurentPoly, z: GaussRational) -> GaussRational:
    acc = G0
    for k, c in p.items():
        acc = acc + c * z ** k
    return acc


def _unit_circle_roots(p: LaurentPoly) -> int:
    """Number of distinct roots of ``p`` on ``|z| = 1``, via the Cayley map and a real-root count."""
    import sympy as sp

    t = sp.symbols("t", real=True)
    lo = p.kmin
    coeffs = [(k - lo, c) for k, c in p.items()]
    n = max(d for d, _ in coeffs)
    # q(t) = (1 - i t)^n p((1 + i t)/(1 - i t)) z^{-lo}
    q = sp.Integer(0)
    for d, c in coeffs:
        q += (sp.Rational(c.re.numerator, c.re.denominator) + sp.I * sp.Rational(c.im.numerator, c.im.denominator)) \
            * (1 + sp.I * t) ** d * (1 - sp.I * t) ** (n - d)
    q = sp.expand(q)
    re, im = sp.Poly(sp.re(q), t), sp.Poly(sp.im(q), t)
    g = sp.gcd(re, im)
    count = 0
    if g.degree() > 0:
        count = len(set(sp.real_roots(g)))
    # z = -1 is the image of t = infinity
    if _eval_gauss(p, GaussRational(-1)) == 0:
        count += 1
    return count


def classify_theta_conv(Theta: LaurentMatrix) -> ThetaClass:
    """``StronglyInvertible`` (monomial det), ``NonvanishingDet`` (no unit-circle zero) or ``Singular``."""
    if not Theta.is_square():
        raise ValueError("Theta must be square")
    d = Theta.det()
    if d.is_zero():
        return ThetaClass("Singular", d, "exact: det is identically zero")
    pts = [x for x, z in _EXACT_POINTS if _eval_gauss(d, z) == 0]
    if d.is_monomial():
        return ThetaClass("StronglyInvertible", d, "exact: det is a monomial")
    roots = _unit_circle_roots(d)
    kind = "NonvanishingDet" if roots == 0 else "Singular"
    return ThetaClass(kind, d, "exact: Cayley transform and real-root count", roots, pts)


def _left_null(A: list[list[GaussRational]]) -> list[GaussRational] | None:
    from ._linalg import nullspace

    r = len(A)
    At = [[A[i][j] for i in range(r)] for j in range(len(A[0]))]
    ns = nullspace(At, r)
    return ns[0] if ns else None


def annihilator_witness(Theta: LaurentMatrix, xi0=Fraction(1), length: int = 16) -> tuple[Signal, tuple[int, int]]:
    """Window of ``v(k) = c e^{i k xi0}`` with ``c Theta(xi0) = 0`` and the interior where ``v * Theta`` vanishes.

    ``xi0`` is given as a multiple of ``pi`` and must be in {0, 1/2, 1, 3/2} modulo 2.
    """
    x = Fraction(xi0) % 2
    z0 = next((z for p, z in _EXACT_POINTS if p == x), None)
    if z0 is None:
        raise ValueError("xi0 / pi must be 0, 1/2, 1 or 3/2 modulo 2 for an exact witness")
    r = Theta.rows
    T0 = [[_eval_gauss(Theta[i, j], z0) for j in range(r)] for i in range(r)]
    c = _left_null(T0)
    if c is None:
        raise NotSingularAtPoint(f"Theta is invertible at xi = {x} pi")
    # e^{i k xi0} = conj(z0)^k
    w = z0.conj()
    vals = {}
    cur = GaussRational(1)
    for k in range(length):
        vals[k] = [ci * cur for ci in c]
        cur = cur * w
    v = Signal.from_dict(vals, r)
    out = convolve(v, Theta)
    lo_t, hi_t = Theta.support()
    interior = (hi_t, length - 1 + lo_t)
    for n in range(interior[0], interior[1] + 1):
        if any(out.data[0, j].coeff(n) for j in range(r)):
            raise ArithmeticError("witness failed on the interior")
    return v, interior


# vector conversion

def vector_convert(v: Signal, r: int) -> Signal:
    """``[v(r k), v(r k + 1), ..., v(r k + r - 1)]`` from a scalar signal."""
    if v.r != 1:
        raise ValueError("vector conversion takes a scalar signal")
    p = v.data[0, 0]
    return Signal(LaurentMatrix([[p.coset(j, r) for j in range(r)]]), v.scale)


def vector_convert_inverse(v: Signal) -> Signal:
    r = v.r
    acc = LaurentPoly()
    for j in range(r):
        acc = acc + v.data[0, j].upsample(r).shift(j)
    return Signal(LaurentMatrix([[acc]]), v.scale)


def valid_range(lo: int, hi: int, u: LaurentMatrix, M: int) -> tuple[int, int]:
    """Output indices of ``T_{u,M}`` whose stencil lies in ``[lo, hi]``."""
    ulo, uhi = u.support()
    n0 = -((-(lo - ulo)) // M)
    n1 = (hi - uhi) // M
    return n0, n1


# cascade

def _cascade_filter(a: LaurentMatrix, first: LaurentMatrix, M: int, levels: int) -> LaurentMatrix:
    """``M^n first(z^{M^{n-1}}) a(z^{M^{n-2}}) ... a(z)``."""
    acc = first
    for _ in range(levels - 1):
        acc = acc.upsample(M) * a
    return acc * LaurentPoly.const(GaussRational(M ** levels))


def integer_samples(a: LaurentMatrix, M: int, v0=None) -> list[dict] | None:
    """Exact values ``phi(j)`` at the integers, or ``None`` when they are not determined.

    They form the eigenvector for eigenvalue 1 of ``[M a(M j - k)]_{j,k}`` on the integers
    of the support; it is normalized by ``sum_j v0 phi(j) = 1``.  ``None`` is returned if
    that eigenspace is not one dimensional (for instance for discontinuous ``phi``).
    """
    from ._linalg import nullspace

    sup = a.support()
    if sup is None:
        return None
    lo, hi = sup
    jlo, jhi = -((-lo) // (M - 1)), hi // (M - 1)
    js = list(range(jlo, jhi + 1))
    r = a.rows
    n = r * len(js)
    T = [[G0] * n for _ in range(n)]
    for bj, j in enumerate(js):
        for bk, k in enumerate(js):
            c = a.coeff(M * j - k)
            for p in range(r):
                for q in range(r):
                    T[bj * r + p][bk * r + q] = c[p][q] * GaussRational(M) - (G1 if (bj, p) == (bk, q) else G0)
    ns = nullspace(T, n)
    if len(ns) != 1:
        return None
    x = ns[0]
    if v0 is None:
        v0 = [G1] * r
    s = sum((v0[p] * x[b * r + p] for b in range(len(js)) for p in range(r)), G0)
    if not s:
        return None
    return [{j: x[b * r + p] / s for b, j in enumerate(js) if x[b * r + p]} for p in range(r)]


def cascade_render(bank, component: str = "phi", levels: int = 8, M: int | None = None,
                   precision: int | None = None) -> tuple[list, list]:
    """Samples ``(x, y)`` of the refinable vector or a framelet generator on the grid ``M^{-levels} Z``.

    Samples are ``phi(l M^{-n}) = sum_j A_n(l - j) phi(j)`` from the exact integer values
    ``phi(j)`` (box-averaged iterates when those are not unique).  Everything is exact
    until the final rounding to ``FRAMELET_PRECISION`` digits.
    ``bank`` is a ``QtFilterBank``, a ``TransformBank`` or a bare mask (then ``M`` is required).
    """
    import mpmath

    if isinstance(bank, LaurentMatrix):
        a, b = bank, None
        if M is None:
            raise ValueError("dilation is required for a bare mask")
    elif isinstance(bank, TransformBank):
        a, b, M = bank.a.matrix, bank.b.matrix, bank.M
    else:
        a, b, M = bank.a, bank.b, bank.M
    if levels < 1:
        raise ValueError("need levels >= 1")
    from .moments import sum_rules

    v0 = sum_rules(a, M, cap=1).matching_jet
    v0 = [v0[0, i][0] for i in range(a.rows)]
    ints = integer_samples(a, M, v0)
    if component == "phi":
        first = a
    elif component.startswith("psi"):
        if b is None:
            raise ValueError("a bare mask has no framelet generators")
        i = int(component[3:] or 1) - 1
        first = b.row(i)
    else:
        raise ValueError(f"unknown component {component!r}")
    F = _cascade_filter(a, first, M, levels)
    if ints is not None:
        Y = F * LaurentMatrix([[LaurentPoly(ints[i])] for i in range(a.rows)])
    else:
        phi0 = refinable_jets(a, M, 1, strict=False)
        w = [phi0[i, 0][0] for i in range(a.rows)]
        s = sum((v0[i] * w[i] for i in range(a.rows)), G0)
        if s:
            w = [x / s for x in w]
        Y = F * LaurentMatrix([[LaurentPoly.const(x)] for x in w])
    sup = Y.support() or (0, 0)
    dps = precision or int(os.environ.get("FRAMELET_PRECISION", "50"))
    xs, ys = [], []
    with mpmath.workdps(dps):
        step = mpmath.mpf(1) / (M ** levels)
        for k in range(sup[0] - 1, sup[1] + 2):
            xs.append(k * step)
            ys.append([mpmath.mpf(Fraction(Y[i, 0].coeff(k).re).numerator) / Fraction(Y[i, 0].coeff(k).re).denominator
                       for i in range(Y.rows)])
    return xs, ys


def cascade_csv(xs, ys) -> str:
    r = len(ys[0]) if ys else 1
    lines = ["x," + ",".join(f"y{i + 1}" for i in range(r))]
    for x, row in zip(xs, ys):
        lines.append(",".join([f"{float(x):.12g}"] + [f"{float(y):.12g}" for y in row]))
    return "\n".join(lines) + "\n"
