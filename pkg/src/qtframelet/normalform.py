"""Normal forms of matrix masks under conjugation by strongly invertible filters.

Given a mask ``a`` with matching filter ``v`` and refinable-vector jet ``phi``, a strongly
invertible ``U`` changes them to ``v U^{-1}``, ``U phi`` and ``U(M.) a U^{-1}``.  This
module builds such ``U`` constructively:

* ``bezout_one``: ``p c + (1-z)^{2n} d = 1`` by the extended Euclidean algorithm;
* ``row_reduce_to_e1``: ``v U = [1, 0, ..., 0] + O(|xi|^n)`` from a unit upper triangular
  Taylor-division step and a 2x2 Bezout block;
* ``align_vectors`` and ``extend_moment_match``: moving one row jet onto another and
  raising the order of the pairing ``v phi = 1``;
* ``normal_form_general``: prescribe both the new matching filter and the new refinable
  jet; ``normal_form_canonical`` adds the block divisibility checks of the standard
  form, and ``orthogonal_normal_form`` makes the columns of ``U^{-1}`` jet-orthogonal.

Jet targets become trigonometric polynomials through ``lift_to_poly``: the unique
polynomial in ``z`` of degree below the jet order with that jet.
"""

from __future__ import annotations

from typing import Sequence

from .exactnum import GaussRational
from .laurent import LaurentMatrix, LaurentPoly, NotDivisible, divmod_poly
from .moments import (
    JetMatrix,
    MomentJet,
    jet_inverse,
    jet_matrix,
    jet_of,
    lift_to_poly,
)

__all__ = [
    "NormalFormResult",
    "NotCoprime",
    "ZeroAtOrigin",
    "HypothesisViolated",
    "StructureCheckFailed",
    "MomentConditionFailed",
    "bezout_one",
    "row_reduce_to_e1",
    "align_vectors",
    "extend_moment_match",
    "normal_form_general",
    "normal_form_canonical",
    "orthogonal_normal_form",
    "check_canonical_structure",
    "e1_row",
    "e1_col",
]

G0 = GaussRational(0)
G1 = GaussRational(1)


class NotCoprime(ArithmeticError):
    """The polynomial shares the root ``z = 1`` with ``(1-z)^{2n}``."""


class ZeroAtOrigin(ValueError):
    """A vector that must be nonzero at the origin vanishes there."""


class HypothesisViolated(ValueError):
    """A moment hypothesis of a normal-form construction does not hold."""


class StructureCheckFailed(AssertionError):
    """The constructed mask misses one of the canonical block structures."""

    def __init__(self, block: str, detail: str = ""):
        self.block = block
        super().__init__(f"structure check failed for block {block}" + (f": {detail}" if detail else ""))


class MomentConditionFailed(ValueError):
    """The matching filter is not the normalized conjugate of the refinable jet."""


class NormalFormResult:
    """Outcome of a normal-form construction."""

    __slots__ = ("U", "U_inv", "new_mask", "new_matching_jet", "new_phi_jet", "checks")

    def __init__(self, U, U_inv, new_mask, new_matching_jet, new_phi_jet, checks=None):
        self.U = U
        self.U_inv = U_inv
        self.new_mask = new_mask
        self.new_matching_jet = new_matching_jet
        self.new_phi_jet = new_phi_jet
        self.checks = dict(checks or {})

    def __repr__(self):
        return f"NormalFormResult(r={self.U.rows}, checks={self.checks})"


def e1_row(r: int, n: int) -> JetMatrix:
    return JetMatrix.constant([[1 if j == 0 else 0 for j in range(r)]], n)


def e1_col(r: int, n: int) -> JetMatrix:
    return JetMatrix.constant([[1 if i == 0 else 0] for i in range(r)], n)


# ordinary polynomial helpers (lists of coefficients, lowest degree first)

def _trim(p: list) -> list:
    while p and not p[-1]:
        p.pop()
    return p


def _pdivmod(a: list, b: list):
    a = list(a)
    db = len(b) - 1
    inv = b[-1].inverse()
    q = [G0] * max(len(a) - db, 1)
    for k in range(len(a) - 1 - db, -1, -1):
        c = a[k + db] * inv
        if c:
            q[k] = c
            for j in range(db + 1):
                if b[j]:
                    a[k + j] = a[k + j] - c * b[j]
    return _trim(q), _trim(a[:db] if db > 0 else [])


def _pmul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [G0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = out[i + j] + x * y
    return _trim(out)


def _psub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    return _trim([(a[k] if k < len(a) else G0) - (b[k] if k < len(b) else G0) for k in range(n)])


def _to_list(p: LaurentPoly, lo: int) -> list:
    hi = p.kmax
    return [p.coeff(k) for k in range(lo, hi + 1)]


def bezout_one(p: LaurentPoly, n: int) -> tuple[LaurentPoly, LaurentPoly]:
    """``(c, d)`` with ``p c + (1-z)^{2n} d = 1``; ``c`` of minimal degree."""
    p = LaurentPoly.coerce(p)
    if p.is_zero():
        raise NotCoprime("zero polynomial")
    k = p.kmin
    p0 = _to_list(p, k)
    f = _to_list(LaurentPoly({0: 1, 1: -1}) ** (2 * n), 0)
    if n == 0:
        # p c + d = 1: take c = 0, d = 1
        return LaurentPoly(), LaurentPoly.const(1)
    # extended Euclid on (f, p0), tracking the coefficient of p0
    r0, r1 = f, p0
    t0, t1 = [], [G1]
    while len(r1) > 1:
        q, rem = _pdivmod(r0, r1)
        r0, r1 = r1, rem
        t0, t1 = t1, _psub(t0, _pmul(q, t1))
    if r1:
        g, t = r1, t1
    else:
        g, t = r0, t0
    if len(g) != 1:
        raise NotCoprime(f"{p} and (1-z)^{2 * n} share a common factor")
    inv = g[0].inverse()
    c0 = [x * inv for x in t]
    # reduce c0 modulo f for the minimal-degree solution
    if len(c0) > len(f) - 1:
        _, c0 = _pdivmod(c0, f)
    c0 = _trim(list(c0))
    c = LaurentPoly({j - k: x for j, x in enumerate(c0) if x})
    rest = LaurentPoly.const(1) - p * c
    fpoly = LaurentPoly({j: x for j, x in enumerate(f) if x})
    d, rem = divmod_poly(rest, fpoly)
    if rem:
        raise NotCoprime("Bezout identity could not be completed")
    return c, d


def _jet_row(v, n: int) -> JetMatrix:
    if isinstance(v, JetMatrix):
        return v
    return jet_matrix(v, n)


def _poly_row(v, n: int) -> LaurentMatrix:
    if isinstance(v, LaurentMatrix):
        return v
    if v.order < n:
        v = JetMatrix([[MomentJet(list(x.c) + [G0] * (n - x.order)) for x in r] for r in v.e])
    return LaurentMatrix([[lift_to_poly(x.truncate(n)) for x in r] for r in v.e])


def _permutation(r: int, p: int) -> LaurentMatrix:
    rows = [[1 if j == i else 0 for j in range(r)] for i in range(r)]
    rows[0], rows[p] = rows[p], rows[0]
    return LaurentMatrix(rows)


def row_reduce_to_e1(v, n: int) -> LaurentMatrix:
    """Strongly invertible ``U`` with ``v U = [1, 0, ..., 0] + O(|xi|^n)``."""
    r = v.cols
    if r < 2:
        raise HypothesisViolated("row reduction to e1 needs r >= 2")
    vj = _jet_row(v, 1)
    vals = vj.coeff(0)[0]
    if all(not x for x in vals):
        raise ZeroAtOrigin("vector vanishes at the origin")
    vjn = _jet_row(v, n) if isinstance(v, LaurentMatrix) else v
    if isinstance(v, LaurentMatrix) or vjn.order >= n:
        if vjn.truncate(n) == e1_row(r, n):
            return LaurentMatrix.identity(r)
    vp = _poly_row(v, n)
    p = next(i for i, x in enumerate(vals) if x)
    P = _permutation(r, p)
    w = vp * P
    w1 = w[0, 0]
    inv1 = jet_inverse(jet_of(w1, n))
    U1 = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
    for j in range(1, r):
        U1[0][j] = lift_to_poly(-(jet_of(w[0, j], n) * inv1))
    U1 = LaurentMatrix(U1)
    c, d = bezout_one(w1, n)
    t = LaurentPoly({0: 1, 1: -1}) ** n
    U2 = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
    U2[0][0], U2[0][1] = c, -t
    U2[1][0], U2[1][1] = t * d, w1
    return P * U1 * LaurentMatrix(U2)


def align_vectors(v, u, n: int) -> LaurentMatrix:
    """Strongly invertible ``U`` with ``v U = u + O(|xi|^n)``."""
    Uv = row_reduce_to_e1(v, n)
    Uu = row_reduce_to_e1(u, n)
    return Uv * Uu.strong_inverse()


def _pair(v: JetMatrix, u: JetMatrix) -> MomentJet:
    return v.matmul(u)[0, 0]


def extend_moment_match(v_jet: JetMatrix, u_jet: JetMatrix, n: int) -> JetMatrix:
    """``w`` with ``w = v + O(|xi|^m)`` and ``w u = 1 + O(|xi|^n)``, ``m`` the order of ``v``."""
    m = v_jet.order
    if u_jet.order < min(m, n):
        raise HypothesisViolated("u jet order too low")
    k = min(m, u_jet.order)
    if _pair(v_jet.truncate(k), u_jet.truncate(k)) != MomentJet.one(k):
        raise HypothesisViolated("v u = 1 fails at the order of v")
    if n <= m:
        return v_jet
    if u_jet.order < n:
        raise HypothesisViolated(f"u jet must have order >= {n}")
    r = v_jet.cols
    if r == 1:
        return JetMatrix([[jet_inverse(u_jet[0, 0].truncate(n))]])
    ut = u_jet.truncate(n).transpose()
    W = row_reduce_to_e1(ut, n)
    U = W.transpose()
    Uinv = U.strong_inverse()
    vb = v_jet.matmul(jet_matrix(Uinv, m))
    row = [MomentJet.one(n)] + [MomentJet(list(x.c) + [G0] * (n - m)) for x in vb.e[0][1:]]
    return JetMatrix([row]).matmul(jet_matrix(U, n))


def _lower_unit(r: int, col0: Sequence[LaurentPoly], sign: int = 1) -> LaurentMatrix:
    rows = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
    for l in range(1, r):
        rows[l][0] = col0[l - 1] if sign > 0 else -col0[l - 1]
    return LaurentMatrix(rows)


def normal_form_general(a: LaurentMatrix, M: int, m: int, n: int, target_v: JetMatrix,
                        target_u: JetMatrix, v: JetMatrix, phi: JetMatrix) -> NormalFormResult:
    """``U`` with ``v U^{-1} = target_v + O(|xi|^m)`` and ``U phi = target_u + O(|xi|^n)``."""
    r = a.rows
    if r < 2:
        raise HypothesisViolated("normal forms need r >= 2")
    ne = max(m, n)
    if phi.order < ne or target_u.order < ne:
        raise HypothesisViolated(f"refinable and target jets need order >= {ne}")
    v = v.truncate(m)
    target_v = target_v.truncate(m)
    phi = phi.truncate(ne)
    target_u = target_u.truncate(ne)
    if _pair(target_v, target_u.truncate(m)) != MomentJet.one(m):
        raise HypothesisViolated("target pair does not satisfy v u = 1 to order m")
    v_ext = extend_moment_match(v, phi, ne)
    tv_ext = extend_moment_match(target_v, target_u, ne)
    U1 = row_reduce_to_e1(tv_ext, ne)
    W2 = row_reduce_to_e1(v_ext, ne)
    U1_inv = U1.strong_inverse()
    U2 = W2.strong_inverse()
    phi_b = jet_matrix(U2, ne).matmul(phi)
    u_b = jet_matrix(U1_inv, ne).matmul(target_u)
    w = [lift_to_poly(u_b[l, 0] - phi_b[l, 0]) for l in range(1, r)]
    U3 = _lower_unit(r, w)
    U3_inv = _lower_unit(r, w, -1)
    U = U1 * U3 * U2
    U_inv = W2 * U3_inv * U1_inv
    new_mask = U.upsample(M) * a * U_inv
    new_v = v.matmul(jet_matrix(U_inv, m))
    new_phi = jet_matrix(U, ne).matmul(phi)
    checks = {
        "matching_jet": new_v == target_v,
        "phi_jet": new_phi.truncate(n) == target_u.truncate(n),
        "strongly_invertible": U.det().is_monomial(),
    }
    return NormalFormResult(U, U_inv, new_mask, new_v, new_phi, checks)


def check_canonical_structure(am: LaurentMatrix, M: int, m: int, n: int) -> dict:
    """The four block checks of the canonical form; each value is ``(ok, witness)``."""
    r = am.rows
    box = LaurentPoly({k: 1 for k in range(M)}) ** m
    one_zm = LaurentPoly({0: 1, M: -1}) ** m
    one_z = LaurentPoly({0: 1, 1: -1}) ** n
    out = {}

    def divides(d, p):
        if not p:
            return True, None
        _, rem = divmod_poly(p, d)
        return (not rem), (rem if rem else None)

    out["a11_box_divisible"] = divides(box, am[0, 0])
    res12 = [divides(one_zm, am[0, j]) for j in range(1, r)]
    out["a12_divisible"] = (all(ok for ok, _ in res12), next((w for ok, w in res12 if not ok), None))
    res21 = [divides(one_z, am[i, 0]) for i in range(1, r)]
    out["a21_divisible"] = (all(ok for ok, _ in res21), next((w for ok, w in res21 if not ok), None))
    j11 = jet_of(am[0, 0], n) - MomentJet.one(n)
    out["a11_jet"] = (j11.is_zero(), None if j11.is_zero() else j11.valuation())
    return out


def normal_form_canonical(a: LaurentMatrix, M: int, m: int, n: int, v: JetMatrix, phi: JetMatrix) -> NormalFormResult:
    """Normal form with matching filter ``e1 + O(m)`` and refinable jet ``e1 + O(n)``."""
    r = a.rows
    ne = max(m, n)
    res = normal_form_general(a, M, m, ne, e1_row(r, m), e1_col(r, ne), v, phi)
    checks = check_canonical_structure(res.new_mask, M, m, n)
    for name, (ok, wit) in checks.items():
        res.checks[name] = ok
        if not ok:
            raise StructureCheckFailed(name, str(wit))
    return res


def moment_condition_holds(v: JetMatrix, phi: JetMatrix, m: int) -> bool:
    """``v = conj(phi)^T / |phi|^2 + O(|xi|^m)``."""
    phis = phi.truncate(m).star()
    norm2 = phis.matmul(phi.truncate(m))[0, 0]
    target = phis * jet_inverse(norm2)
    return v.truncate(m) == target


def _norm2(u: LaurentMatrix) -> LaurentPoly:
    return (u.adjoint() * u)[0, 0]


def orthogonal_normal_form(a: LaurentMatrix, M: int, m: int, n: int, v: JetMatrix, phi: JetMatrix) -> NormalFormResult:
    """Normal form whose ``U^{-*} U^{-1}`` is diagonal to order ``max(m, n)``."""
    if not moment_condition_holds(v, phi, m):
        raise MomentConditionFailed("matching filter is not conj(phi)^T/|phi|^2 to order m")
    r = a.rows
    nt = max(m, n)
    base = normal_form_general(a, M, m, nt, e1_row(r, m), e1_col(r, nt), v, phi)
    V = base.U_inv
    cols = [V.col(j) for j in range(r)]
    us, gs = [], []
    for j in range(r):
        uj = cols[j]
        for ul, gl in zip(us, gs):
            coef = (ul.adjoint() * cols[j])[0, 0] * gl
            uj = uj - ul * coef
        us.append(uj)
        gs.append(lift_to_poly(jet_inverse(jet_of(_norm2(uj), nt))))
    U_inv = LaurentMatrix.hstack(us)
    U = U_inv.strong_inverse()
    new_mask = U.upsample(M) * a * U_inv
    new_v = v.truncate(m).matmul(jet_matrix(U_inv, m))
    new_phi = jet_matrix(U, nt).matmul(phi.truncate(nt))
    gram = jet_matrix(U_inv.adjoint() * U_inv, nt)
    diagonal = all(gram[i, j].is_zero() for i in range(r) for j in range(r) if i != j)
    checks = dict(base.checks)
    checks["gram_diagonal"] = diagonal
    checks["strongly_invertible"] = U.det().is_monomial()
    return NormalFormResult(U, U_inv, new_mask, new_v, new_phi, checks)
