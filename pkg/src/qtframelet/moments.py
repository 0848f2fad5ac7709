"""Moment jets at the origin and the jet-level checks built on them.

A ``MomentJet`` of order ``n`` holds the Taylor coefficients ``f^{(j)}(0)/j!`` for
``j < n``; equality of jets of order ``n`` means ``f = g + O(|xi|^n)``.  For a Laurent
polynomial ``sum_k c_k e^{-ik xi}`` the ``j``-th coefficient is ``sum_k c_k (-ik)^j / j!``.

Checks provided here: sum rules with the matching filter, refinable-vector moments,
vanishing moments, balanced vanishing moments, balancing order, and the coset
factorization of filters with balanced vanishing moments.  Conditions at the shifted
points ``xi + 2 pi g / M`` are turned into jet conditions on coset components, so no
root of unity is ever needed.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from . import _linalg
from .exactnum import GaussRational
from .laurent import LaurentMatrix, LaurentPoly, NotDivisible, build_E

__all__ = [
    "MomentJet",
    "JetMatrix",
    "SumRuleReport",
    "SpectralConditionViolated",
    "ZeroConstantTerm",
    "NotBalanced",
    "jet_of",
    "jet_exp",
    "jet_inverse",
    "jet_star",
    "jet_matrix",
    "upsilon_jet",
    "refinable_jets",
    "sum_rules",
    "matching_pair",
    "vanishing_moments",
    "balanced_vm",
    "balancing_order",
    "balanced_factorize",
    "balanced_assemble",
    "nabla",
]

G0 = GaussRational(0)
G1 = GaussRational(1)
_MINUS_I_POW = (GaussRational(1), GaussRational(0, -1), GaussRational(-1), GaussRational(0, 1))


class SpectralConditionViolated(ValueError):
    """1 is not a simple eigenvalue of the mask at the origin, or a moment system is singular."""


class ZeroConstantTerm(ZeroDivisionError):
    """Inverse of a jet whose constant term vanishes."""


class NotBalanced(ValueError):
    """A filter does not have the requested balanced vanishing moments."""


class MomentJet:
    """Truncated Taylor expansion at the origin; immutable."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Sequence):
        if not coeffs:
            raise ValueError("jet order must be >= 1")
        self.c = tuple(x if isinstance(x, GaussRational) else GaussRational.coerce(x) for x in coeffs)

    @classmethod
    def zero(cls, n: int) -> MomentJet:
        return cls([G0] * n)

    @classmethod
    def one(cls, n: int) -> MomentJet:
        return cls([G1] + [G0] * (n - 1))

    @classmethod
    def const(cls, x, n: int) -> MomentJet:
        return cls([GaussRational.coerce(x)] + [G0] * (n - 1))

    @property
    def order(self) -> int:
        return len(self.c)

    def __getitem__(self, j: int) -> GaussRational:
        return self.c[j]

    def truncate(self, n: int) -> MomentJet:
        if n > len(self.c):
            raise ValueError(f"cannot extend a jet of order {len(self.c)} to {n}")
        return MomentJet(self.c[:n])

    def __add__(self, o: MomentJet) -> MomentJet:
        n = min(self.order, o.order)
        return MomentJet([x + y for x, y in zip(self.c[:n], o.c[:n])])

    def __sub__(self, o: MomentJet) -> MomentJet:
        n = min(self.order, o.order)
        return MomentJet([x - y for x, y in zip(self.c[:n], o.c[:n])])

    def __neg__(self):
        return MomentJet([-x for x in self.c])

    def __mul__(self, o):
        if isinstance(o, MomentJet):
            return jet_mul(self, o)
        o = GaussRational.coerce(o)
        return MomentJet([x * o for x in self.c])

    __rmul__ = __mul__

    def valuation(self) -> int:
        """Index of the first nonzero coefficient, or the order when the jet is zero."""
        for j, x in enumerate(self.c):
            if x:
                return j
        return len(self.c)

    def is_zero(self) -> bool:
        return not any(self.c)

    def __eq__(self, o):
        return isinstance(o, MomentJet) and self.c == o.c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return "MomentJet([" + ", ".join(str(x) for x in self.c) + "])"


def jet_mul(p: MomentJet, q: MomentJet) -> MomentJet:
    n = min(p.order, q.order)
    a, b = p.c, q.c
    out = []
    for j in range(n):
        acc = G0
        for k in range(j + 1):
            if a[k] and b[j - k]:
                acc = acc + a[k] * b[j - k]
        out.append(acc)
    return MomentJet(out)


def jet_of(p: LaurentPoly, n: int) -> MomentJet:
    """Jet of ``p(e^{-i xi})`` of order ``n``."""
    if n < 1:
        raise ValueError("jet order must be >= 1")
    p = LaurentPoly.coerce(p)
    if p.is_zero():
        return MomentJet.zero(n)
    lo, re, im, den = p.numerators()
    ks = range(lo, lo + len(re))
    out = []
    pw = [1] * len(re)
    for j in range(n):
        sr = sum(x * w for x, w in zip(re, pw))
        si = sum(x * w for x, w in zip(im, pw)) if im else 0
        d = den * math.factorial(j)
        out.append(_MINUS_I_POW[j % 4] * GaussRational(Fraction(sr, d), Fraction(si, d)))
        pw = [w * k for w, k in zip(pw, ks)]
    return MomentJet(out)


def jet_exp(t, n: int) -> MomentJet:
    """Jet of ``e^{i t xi}``: coefficient ``(i t)^j / j!``."""
    it = GaussRational(0, Fraction(t))
    out, cur = [], G1
    for j in range(n):
        out.append(cur)
        cur = cur * it / (j + 1)
    return MomentJet(out)


def jet_inverse(p: MomentJet) -> MomentJet:
    if not p.c[0]:
        raise ZeroConstantTerm("jet with zero constant term is not invertible")
    inv0 = p.c[0].inverse()
    out = [inv0]
    for j in range(1, p.order):
        acc = G0
        for k in range(1, j + 1):
            if p.c[k]:
                acc = acc + p.c[k] * out[j - k]
        out.append(-acc * inv0)
    return MomentJet(out)


def jet_star(p: MomentJet) -> MomentJet:
    """Jet of ``conj(f(xi))`` for real ``xi``: coefficientwise conjugation."""
    return MomentJet([x.conj() for x in p.c])


class JetMatrix:
    """Grid of jets with uniform order; row or column vectors are ``JetMatrix`` too."""

    __slots__ = ("e", "rows", "cols", "order")

    def __init__(self, entries: Sequence[Sequence[MomentJet]]):
        self.e = tuple(tuple(r) for r in entries)
        self.rows = len(self.e)
        self.cols = len(self.e[0])
        orders = {x.order for r in self.e for x in r}
        if len(orders) != 1:
            n = min(orders)
            self.e = tuple(tuple(x.truncate(n) for x in r) for r in self.e)
        self.order = min(orders)

    @classmethod
    def row(cls, jets: Sequence[MomentJet]) -> JetMatrix:
        return cls([list(jets)])

    @classmethod
    def column(cls, jets: Sequence[MomentJet]) -> JetMatrix:
        return cls([[j] for j in jets])

    @classmethod
    def constant(cls, values: Sequence[Sequence], n: int) -> JetMatrix:
        return cls([[MomentJet.const(v, n) for v in r] for r in values])

    @classmethod
    def identity(cls, r: int, n: int) -> JetMatrix:
        return cls.constant([[1 if i == j else 0 for j in range(r)] for i in range(r)], n)

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[Sequence[Sequence]], shape: tuple[int, int]) -> JetMatrix:
        """Build from ``coeffs[j]`` = the order-``j`` coefficient matrix."""
        r, c = shape
        return cls([[MomentJet([coeffs[j][i][k] for j in range(len(coeffs))]) for k in range(c)] for i in range(r)])

    def __getitem__(self, ij) -> MomentJet:
        i, j = ij
        return self.e[i][j]

    def flat(self) -> list[MomentJet]:
        return [x for r in self.e for x in r]

    def coeff(self, j: int) -> list[list[GaussRational]]:
        return [[x.c[j] for x in r] for r in self.e]

    def truncate(self, n: int) -> JetMatrix:
        return JetMatrix([[x.truncate(n) for x in r] for r in self.e])

    def __add__(self, o: JetMatrix) -> JetMatrix:
        return JetMatrix([[x + y for x, y in zip(r, s)] for r, s in zip(self.e, o.e)])

    def __sub__(self, o: JetMatrix) -> JetMatrix:
        return JetMatrix([[x - y for x, y in zip(r, s)] for r, s in zip(self.e, o.e)])

    def __neg__(self):
        return JetMatrix([[-x for x in r] for r in self.e])

    def __mul__(self, o):
        if isinstance(o, JetMatrix):
            return self.matmul(o)
        if isinstance(o, MomentJet):
            return JetMatrix([[x * o for x in r] for r in self.e])
        return JetMatrix([[x * o for x in r] for r in self.e])

    def __rmul__(self, o):
        if isinstance(o, MomentJet):
            return JetMatrix([[o * x for x in r] for r in self.e])
        return JetMatrix([[x * o for x in r] for r in self.e])

    def matmul(self, o: JetMatrix) -> JetMatrix:
        if self.cols != o.rows:
            raise ValueError(f"jet shapes {self.rows}x{self.cols} and {o.rows}x{o.cols}")
        n = min(self.order, o.order)
        out = []
        for r in self.e:
            row = []
            for k in range(o.cols):
                acc = MomentJet.zero(n)
                for j, x in enumerate(r):
                    acc = acc + jet_mul(x, o.e[j][k])
                row.append(acc)
            out.append(row)
        return JetMatrix(out)

    def transpose(self) -> JetMatrix:
        return JetMatrix(list(zip(*self.e)))

    def star(self) -> JetMatrix:
        """Conjugate transpose in the frequency variable."""
        return JetMatrix([[jet_star(x) for x in c] for c in zip(*self.e)])

    def valuation(self) -> int:
        return min(x.valuation() for r in self.e for x in r)

    def is_zero(self) -> bool:
        return all(x.is_zero() for r in self.e for x in r)

    def __eq__(self, o):
        return isinstance(o, JetMatrix) and self.e == o.e

    def __hash__(self):
        return hash(self.e)

    def __repr__(self):
        return f"JetMatrix({self.rows}x{self.cols}, order={self.order})"


def jet_matrix(A: LaurentMatrix, n: int) -> JetMatrix:
    return JetMatrix([[jet_of(x, n) for x in r] for r in A.entries()])


def upsilon_jet(r: int, n: int, scale: int = 1) -> JetMatrix:
    """Row ``[1, e^{i s xi/r}, ..., e^{i s (r-1) xi/r}]`` with ``s = scale``."""
    return JetMatrix.row([jet_exp(Fraction(scale * j, r), n) for j in range(r)])


def lift_to_poly(j: MomentJet) -> LaurentPoly:
    """The unique polynomial of degree ``< n`` in ``z = e^{-i xi}`` with the given jet."""
    n = j.order
    inv = _vandermonde_inverse(n)
    # sum_k c_k k^t = t! i^t f_t
    rhs = []
    ipow = G1
    for t in range(n):
        rhs.append(j.c[t] * ipow * math.factorial(t))
        ipow = ipow * GaussRational(0, 1)
    coeffs = {}
    for k in range(n):
        acc = G0
        for t in range(n):
            if inv[k][t] and rhs[t]:
                acc = acc + rhs[t] * inv[k][t]
        if acc:
            coeffs[k] = acc
    return LaurentPoly(coeffs)


_VINV: dict[int, list[list[Fraction]]] = {}


def _vandermonde_inverse(n: int) -> list[list[Fraction]]:
    """Inverse of ``V[t][k] = k^t`` for ``t, k < n``."""
    if n not in _VINV:
        V = [[Fraction(k ** t) for k in range(n)] for t in range(n)]
        aug = [row + [Fraction(int(i == t)) for i in range(n)] for t, row in enumerate(V)]
        R, _ = _linalg.rref(aug)
        _VINV[n] = [[R[k][n + t].re for t in range(n)] for k in range(n)]
    return _VINV[n]


def lift_matrix(J: JetMatrix) -> LaurentMatrix:
    return LaurentMatrix([[lift_to_poly(x) for x in r] for r in J.e])


# refinable vector and sum rules

def _const_matrix(A: LaurentMatrix) -> list[list[GaussRational]]:
    return [[sum((c for _, c in x.items()), G0) for x in r] for r in A.entries()]


def _check_simple_eigenvalue(a0) -> None:
    r = len(a0)
    B = [[(G1 if i == j else G0) - a0[i][j] for j in range(r)] for i in range(r)]
    if len(_linalg.nullspace(B, r)) != 1:
        raise SpectralConditionViolated("1 is not a simple eigenvalue of the mask at the origin")
    if len(_linalg.nullspace(_linalg.matmul(B, B), r)) != 1:
        raise SpectralConditionViolated("1 is not an algebraically simple eigenvalue of the mask at the origin")


def _first_nonzero_normalize(v: list[GaussRational]) -> list[GaussRational]:
    k = next(i for i, x in enumerate(v) if x)
    inv = v[k].inverse()
    return [x * inv for x in v]


def refinable_jets(a: LaurentMatrix, M: int, n: int, strict: bool = True) -> JetMatrix:
    """Jet of the refinable vector: ``phi(M xi) = a(xi) phi(xi)`` to order ``n``.

    The order-0 term is the 1-eigenvector of ``a(0)`` scaled to first nonzero entry 1.
    With ``strict`` the moment systems ``(M^j I - a(0)) x = rhs`` must be nonsingular;
    otherwise a consistent singular system is accepted with free variables set to zero.
    """
    aj = jet_matrix(a, n)
    r = a.rows
    a0 = aj.coeff(0)
    _check_simple_eigenvalue(a0)
    B = [[(G1 if i == j else G0) - a0[i][j] for j in range(r)] for i in range(r)]
    phi = [_first_nonzero_normalize(_linalg.nullspace(B, r)[0])]
    for j in range(1, n):
        A = [[(GaussRational(M ** j) if i == k else G0) - a0[i][k] for k in range(r)] for i in range(r)]
        rhs = [G0] * r
        for k in range(j):
            ak = aj.coeff(j - k)
            for i in range(r):
                rhs[i] = rhs[i] + sum((ak[i][l] * phi[k][l] for l in range(r)), G0)
        if strict and not _linalg.det(A):
            raise SpectralConditionViolated(f"M^{j} is an eigenvalue of the mask at the origin")
        x = _linalg.solve(A, rhs)
        if x is None:
            raise SpectralConditionViolated(f"moment system of order {j} is inconsistent")
        phi.append(x)
    return JetMatrix.column([MomentJet([phi[j][i] for j in range(n)]) for i in range(r)])


class SumRuleReport:
    """Sum-rule order, the matching-filter jet and the witness of maximality."""

    __slots__ = ("order", "matching_jet", "normalized", "cap", "failed_at")

    def __init__(self, order, matching_jet, normalized, cap, failed_at):
        self.order = order
        self.matching_jet = matching_jet
        self.normalized = normalized
        self.cap = cap
        self.failed_at = failed_at

    def __repr__(self):
        return f"SumRuleReport(order={self.order}, normalized={self.normalized}, failed_at={self.failed_at})"


def _left_eigen_normalized(a: LaurentMatrix, M: int) -> list[GaussRational]:
    a0 = _const_matrix(a)
    r = a.rows
    _check_simple_eigenvalue(a0)
    Bt = [[(G1 if i == j else G0) - a0[j][i] for j in range(r)] for i in range(r)]
    return _first_nonzero_normalize(_linalg.nullspace(Bt, r)[0])


def _solve_matching(a: LaurentMatrix, M: int, m: int, v0: list[GaussRational]):
    """Solve the coset sum-rule conditions of order ``m`` for ``v_1..v_{m-1}``; ``None`` if impossible."""
    r = a.rows
    cosets = [jet_matrix(a.coset(b, M), m) for b in range(M)]
    exps = [jet_exp(Fraction(b, M), m) for b in range(M)]
    nun = r * (m - 1)

    def var(k, i):
        return (k - 1) * r + i

    rows, rhs = [], []
    for b in range(M):
        A = [cosets[b].coeff(t) for t in range(m)]
        e = exps[b]
        for j in range(m):
            for col in range(r):
                # sum_k v_k A_{j-k}[:,col] - M^{-1} sum_k M^{-k} e_{j-k} v_k[col] = 0
                row = [G0] * nun
                const = G0
                for k in range(j + 1):
                    At = A[j - k]
                    w = e.c[j - k] / (M ** (k + 1))
                    for i in range(r):
                        coef = At[i][col]
                        if i == col:
                            coef = coef - w
                        if not coef:
                            continue
                        if k == 0:
                            const = const + coef * v0[i]
                        else:
                            row[var(k, i)] = row[var(k, i)] + coef
                rows.append(row)
                rhs.append(-const)
    if nun == 0:
        return [v0] if all(not x for x in rhs) else None
    x = _linalg.solve(rows, rhs)
    if x is None:
        return None
    return [v0] + [[x[var(k, i)] for i in range(r)] for k in range(1, m)]


def sum_rules(a: LaurentMatrix, M: int, cap: int | None = None, phi0=None) -> SumRuleReport:
    """Maximal sum-rule order ``m <= cap`` and the matching filter's jet.

    The matching filter is normalized by its first nonzero entry at the origin; when
    ``phi0`` (the refinable vector at the origin) is given, it is rescaled so that
    ``v(0) phi(0) = 1``.  ``cap=None`` searches until the first failure.
    """
    v0 = _left_eigen_normalized(a, M)
    best = None
    m = 0
    failed = None
    limit = cap if cap is not None else 64
    while m < limit:
        sol = _solve_matching(a, M, m + 1, v0)
        if sol is None:
            failed = m + 1
            break
        best = sol
        m += 1
    if best is None:
        jet = JetMatrix.row([MomentJet([v0[i]]) for i in range(a.rows)])
        return SumRuleReport(0, jet, False, cap, failed)
    scale = G1
    normalized = False
    if phi0 is not None:
        s = sum((x * y for x, y in zip(v0, phi0)), G0)
        if s:
            scale = s.inverse()
            normalized = True
    jet = JetMatrix.row([MomentJet([best[k][i] * scale for k in range(m)]) for i in range(a.rows)])
    return SumRuleReport(m, jet, normalized, cap, failed)


def matching_pair(a: LaurentMatrix, M: int, m: int, n: int, strict: bool = False):
    """``(v_jet, phi_jet)`` with ``v`` of order ``m``, ``phi`` of order ``n`` and ``v(0) phi(0) = 1``.

    ``v`` keeps its first-nonzero-entry normalization and ``phi`` is rescaled.
    """
    if m < 1:
        raise ValueError("need at least one sum rule")
    v0 = _left_eigen_normalized(a, M)
    sol = _solve_matching(a, M, m, v0)
    if sol is None:
        raise SpectralConditionViolated(f"mask does not have {m} sum rules")
    v = JetMatrix.row([MomentJet([sol[k][i] for k in range(m)]) for i in range(a.rows)])
    phi = refinable_jets(a, M, n, strict=strict)
    s = sum((x * y for x, y in zip(v.coeff(0)[0], [row[0] for row in phi.coeff(0)])), G0)
    if not s:
        raise SpectralConditionViolated("matching filter annihilates the refinable vector at the origin")
    return v, phi * s.inverse()


# vanishing moments and balancing

def vanishing_moments(b: LaurentMatrix, phi_jet: JetMatrix, cap: int) -> int:
    """Order of the zero at the origin of ``b(xi) phi(xi)``, capped."""
    if phi_jet.order < cap:
        raise ValueError("phi jet order is below the cap")
    prod = jet_matrix(b, cap).matmul(phi_jet.truncate(cap))
    return min(prod.valuation(), cap)


def balanced_vm(b: LaurentMatrix, r: int, cap: int) -> int:
    """Order of the zero at the origin of ``Upsilon(xi) b(xi)^*``, capped."""
    if cap == 0:
        return 0
    ups = upsilon_jet(r, cap)
    prod = ups.matmul(jet_matrix(b, cap).star())
    return min(prod.valuation(), cap)


def _balancing_solvable(a: LaurentMatrix, M: int, r: int, m: int) -> bool:
    if m == 0:
        return True
    left = upsilon_jet(r, m).matmul(jet_matrix(a, m).star())
    target = upsilon_jet(r, m, scale=M)
    # sum_k c_k left_{j-k}[col] = target_j[col]
    rows, rhs = [], []
    for col in range(r):
        for j in range(m):
            rows.append([left.e[0][col].c[j - k] if k <= j else G0 for k in range(m)])
            rhs.append(target.e[0][col].c[j])
    x = _linalg.solve(rows, rhs)
    return x is not None and bool(x[0])


def balancing_order(a: LaurentMatrix, b: LaurentMatrix, M: int, r: int, cap: int) -> int:
    """Largest ``m <= cap`` with ``m`` balanced vanishing moments and the low-pass balancing system solvable."""
    bvm = balanced_vm(b, r, cap)
    m = 0
    while m < min(bvm, cap) and _balancing_solvable(a, M, r, m + 1):
        m += 1
    return m


def nabla(m: int) -> LaurentPoly:
    """``(1 - z)^m``."""
    return LaurentPoly({0: 1, 1: -1}) ** m


def balanced_factorize(b: LaurentMatrix, m: int) -> LaurentMatrix:
    """The ``s x 1`` filter ``q`` with ``b = [q^{[0;r]}, ..., q^{[r-1;r]}] E_{nabla^m delta; r}``."""
    r = b.cols
    if m == 0:
        Q = b
    else:
        E = build_E(LaurentMatrix.scalar(nabla(m)), r)
        try:
            Q = (b * E.adjugate()).divide_exact(nabla(m))
        except NotDivisible as exc:
            raise NotBalanced(f"filter does not have {m} balanced vanishing moments") from exc
    out = []
    for i in range(b.rows):
        acc = LaurentPoly()
        for g in range(r):
            acc = acc + Q[i, g].upsample(r).shift(g)
        out.append([acc])
    return LaurentMatrix(out)


def balanced_assemble(q: LaurentMatrix, m: int, r: int) -> LaurentMatrix:
    """Inverse of ``balanced_factorize``."""
    Q = LaurentMatrix([[q[i, 0].coset(g, r) for g in range(r)] for i in range(q.rows)])
    if m == 0:
        return Q
    return Q * build_E(LaurentMatrix.scalar(nabla(m)), r)
