"""Quasi-tight framelet filter banks: construction, theta diagnostics and verification.

All frequency-shifted products ``f(xi)^* g(xi + 2 pi p / M)`` are handled in the coset
(polyphase) domain.  Writing ``A = [a^{[0]}, ..., a^{[M-1]}]`` for the coset row of a
filter, the family of identities

    a^*(xi) Theta(M xi) a~(xi + 2 pi p/M) + b^*(xi) b~(xi + 2 pi p/M) = delta_p Theta(xi)

is equivalent to the single polynomial identity
``A^* Theta A~ + B^* B~ = M^{-1} E_{Theta;M}`` in ``Z = z^M``.  A polyphase matrix ``P``
of this shape encodes the shifted residuals through the generators

    N_k(z) = sum_l z^{k-l} P_{lk}(z^M),    residual_p = sum_k w^{pk} N_k,  w = e^{-2 pi i/M},

so no root of unity is ever needed to decide exactness; ``w`` is Gaussian for ``M`` in
{2, 4} and only then are the shifted residuals materialized.

The construction keeps the normalization ``r^{-1/2}`` outside the polynomials: the bank
stores a rational ``theta_poly`` with ``theta = sqrt(theta_scale2) * theta_poly`` and a
rational high-pass ``b``.  Every identity is quadratic in ``theta`` and ``b``, so it only
involves ``theta_scale2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .exactnum import GaussRational, QuadScalar
from .laurent import (
    LaurentMatrix,
    LaurentPoly,
    NotDivisible,
    build_E,
)
from .moments import (
    JetMatrix,
    MomentJet,
    balancing_order,
    balanced_vm,
    jet_matrix,
    matching_pair,
    nabla,
    sum_rules,
    upsilon_jet,
    vanishing_moments,
)
from .normalform import normal_form_general, orthogonal_normal_form

__all__ = [
    "QtFilterBank",
    "ThetaReport",
    "ThetaItemI",
    "ThetaItemII",
    "HermitianSplit",
    "ResidualSet",
    "IdentityCheck",
    "OEPReport",
    "BankReport",
    "PSDReport",
    "MultiplicityOne",
    "NotHermitian",
    "mask_residuals",
    "delta_factorize",
    "polyphase_gram",
    "hermitian_split",
    "assemble_highpass",
    "construct_quasitight",
    "check_theta",
    "verify_oep",
    "verify_bank",
    "psd_probe",
    "coset_row",
    "generators",
    "delta_matrix",
]

G0 = GaussRational(0)
G1 = GaussRational(1)


class MultiplicityOne(ValueError):
    """Scalar masks (``r = 1``) are outside the quasi-tight construction."""


class NotHermitian(ValueError):
    """The input of a Hermitian split is not self-adjoint."""


# coset machinery

def coset_row(a: LaurentMatrix, M: int) -> LaurentMatrix:
    """``[a^{[0;M]}, ..., a^{[M-1;M]}]``: the polyphase row of a filter."""
    return LaurentMatrix.hstack([a.coset(g, M) for g in range(M)])


def generators(P: LaurentMatrix, M: int, r: int) -> list[LaurentMatrix]:
    """``N_k = sum_l z^{k-l} P_{lk}(z^M)`` for ``k = 0..M-1``."""
    out = []
    for k in range(M):
        acc = LaurentMatrix.zeros(r, r)
        for l in range(M):
            acc = acc + P.block(l, k, r, r).upsample(M).shift(k - l)
        out.append(acc)
    return out


def _root_of_unity_power(M: int, e: int) -> GaussRational:
    """``e^{-2 pi i e/M}`` when it is Gaussian rational (``M`` in {1, 2, 4})."""
    e %= M
    if M == 1 or e == 0:
        return G1
    if M == 2:
        return GaussRational(-1)
    if M == 4:
        return [G1, GaussRational(0, -1), GaussRational(-1), GaussRational(0, 1)][e]
    raise ValueError(f"roots of unity of order {M} are not Gaussian rational")


def _first_nonzero(A: LaurentMatrix, block_rows: int | None = None, block_cols: int | None = None):
    """Witness ``(row, col, degree, coefficient)`` of the first nonzero coefficient, or ``None``."""
    for i, row in enumerate(A.entries()):
        for j, p in enumerate(row):
            if p:
                k = p.kmin
                return {"row": i, "col": j, "degree": k, "coefficient": p.coeff(k)}
    return None


@dataclass
class ResidualSet:
    """Shifted residuals of a mask, stored as their polyphase matrix and generators."""

    M: int
    r: int
    P: LaurentMatrix
    gens: list = field(default_factory=list)

    @classmethod
    def from_polyphase(cls, P: LaurentMatrix, M: int, r: int) -> ResidualSet:
        return cls(M, r, P, generators(P, M, r))

    @property
    def first(self) -> LaurentMatrix:
        """The unshifted residual ``sum_k N_k``."""
        acc = LaurentMatrix.zeros(self.r, self.r)
        for g in self.gens:
            acc = acc + g
        return acc

    def shifted(self, p: int) -> LaurentMatrix:
        """Residual at shift ``2 pi p / M``; exact only when ``M`` is 2 or 4."""
        acc = LaurentMatrix.zeros(self.r, self.r)
        for k, g in enumerate(self.gens):
            acc = acc + g * LaurentPoly.const(_root_of_unity_power(self.M, p * k))
        return acc

    def as_list(self) -> list[LaurentMatrix]:
        return [self.shifted(p) for p in range(self.M)]

    def is_zero(self) -> bool:
        return self.P.is_zero()


def _residual_polyphase(am: LaurentMatrix, Ucal: LaurentMatrix, M: int) -> LaurentMatrix:
    A = coset_row(am, M)
    E = build_E(Ucal, M) * LaurentPoly.const(GaussRational(Fraction(1, M)))
    return E - A.adjoint() * Ucal * A


def mask_residuals(am: LaurentMatrix, Ucal: LaurentMatrix, M: int) -> ResidualSet:
    """Residuals ``delta_p Ucal(xi) - a^*(xi) Ucal(M xi) a(xi + 2 pi p/M)``."""
    if am.rows != am.cols or Ucal.shape != am.shape:
        raise ValueError("mask and Ucal must be square of the same size")
    if not Ucal.is_hermitian():
        raise NotHermitian("Ucal must be Hermitian")
    return ResidualSet.from_polyphase(_residual_polyphase(am, Ucal, M), M, am.rows)


def delta_matrix(r: int, m: int) -> LaurentMatrix:
    """``Diag((1 - z)^m, 1, ..., 1)``."""
    return LaurentMatrix.diag([nabla(m)] + [LaurentPoly.const(1)] * (r - 1))


def _conjugate_out(P: LaurentMatrix, E: LaurentMatrix) -> LaurentMatrix:
    """``E^{-*} P E^{-1}`` computed as ``adj(E)^* P adj(E) / (det E^* det E)``."""
    d = E.det()
    adj = E.adjugate()
    return (adj.adjoint() * P * adj).divide_exact(d.star() * d)


def delta_factorize(residuals: ResidualSet, m: int, M: int | None = None) -> ResidualSet:
    """Residuals with ``Delta_m^*`` and the shifted ``Delta_m`` divided out exactly."""
    M = residuals.M if M is None else M
    r = residuals.r
    if r < 2:
        raise MultiplicityOne("the factorization needs r >= 2")
    if m == 0:
        return residuals
    E = build_E(delta_matrix(r, m), M)
    return ResidualSet.from_polyphase(_conjugate_out(residuals.P, E), M, r)


def polyphase_gram(am: LaurentMatrix, Ucal: LaurentMatrix, M: int, m: int) -> LaurentMatrix:
    """The Hermitian ``Mr x Mr`` matrix left after dividing ``E_{Delta_m;M}`` out of the residuals."""
    return delta_factorize(mask_residuals(am, Ucal, M), m, M).P


@dataclass
class HermitianSplit:
    """``Ut^* Diag(I_{s1}, -I_{s2}) Ut`` equals the split Hermitian matrix."""

    U_tilde: LaurentMatrix
    s1: int
    s2: int

    @property
    def eps(self) -> list[int]:
        return [1] * self.s1 + [-1] * self.s2

    def product(self) -> LaurentMatrix:
        top = self.U_tilde.sub(0, self.s1, 0, self.U_tilde.cols)
        bot = self.U_tilde.sub(self.s1, self.s1 + self.s2, 0, self.U_tilde.cols)
        return top.adjoint() * top - bot.adjoint() * bot


def hermitian_split(H: LaurentMatrix) -> HermitianSplit:
    """``H = (I + H/4)^*(I + H/4) - (I - H/4)^*(I - H/4)``."""
    if not H.is_hermitian():
        raise NotHermitian("matrix is not Hermitian")
    n = H.rows
    q = H * LaurentPoly.const(GaussRational(Fraction(1, 4)))
    eye = LaurentMatrix.identity(n)
    return HermitianSplit(LaurentMatrix.vstack([eye + q, eye - q]), n, n)


def assemble_highpass(split: HermitianSplit, m: int, M: int, r: int) -> tuple[LaurentMatrix, list[int]]:
    """``b(z) = sum_l Ut_l(z^M) z^l Delta_m(z)`` with ``Ut_l`` the ``l``-th column block."""
    Ut = split.U_tilde
    if Ut.cols != M * r:
        raise ValueError("split width must be M r")
    acc = LaurentMatrix.zeros(Ut.rows, r)
    for l in range(M):
        acc = acc + Ut.sub(0, Ut.rows, l * r, (l + 1) * r).upsample(M).shift(l)
    return acc * delta_matrix(r, m), split.eps


# filter banks

@dataclass
class QtFilterBank:
    """Quasi-tight bank ``{a; b}_Theta`` with ``theta = sqrt(theta_scale2) * theta_poly``."""

    M: int
    a: LaurentMatrix
    theta_poly: LaurentMatrix
    b: LaurentMatrix
    eps: list
    theta_scale2: Fraction = Fraction(1)
    m: int = 0
    n: int = 0
    v_jet: Optional[JetMatrix] = None
    phi_jet: Optional[JetMatrix] = None
    meta: dict = field(default_factory=dict)

    @property
    def r(self) -> int:
        return self.a.rows

    @property
    def s(self) -> int:
        return self.b.rows

    @property
    def theta_scale(self) -> QuadScalar:
        return QuadScalar.sqrt(self.theta_scale2)

    @property
    def theta_inv_poly(self) -> LaurentMatrix:
        return self.theta_poly.strong_inverse()

    @property
    def a_ring(self) -> LaurentMatrix:
        """``theta(M.) a theta^{-1}``; the scale cancels."""
        return self.theta_poly.upsample(self.M) * self.a * self.theta_inv_poly

    @property
    def b_ring_poly(self) -> LaurentMatrix:
        """``b theta_poly^{-1}``; the true ``b theta^{-1}`` is this times ``theta_scale2^{-1/2}``."""
        return self.b * self.theta_inv_poly

    @property
    def Theta_poly(self) -> LaurentMatrix:
        """``theta_poly^* theta_poly``; ``Theta = theta_scale2 * Theta_poly``."""
        return self.theta_poly.adjoint() * self.theta_poly

    @property
    def eps_matrix(self) -> LaurentMatrix:
        return LaurentMatrix.diag([LaurentPoly.const(e) for e in self.eps])


@dataclass
class IdentityCheck:
    name: str
    holds: bool
    witness: Optional[dict] = None
    route: str = "coset"


@dataclass
class OEPReport:
    holds: bool
    checks: list
    items: dict = field(default_factory=dict)

    def by_name(self, name: str) -> IdentityCheck:
        return next(c for c in self.checks if c.name == name)


def _frac(x) -> LaurentPoly:
    return LaurentPoly.const(GaussRational.coerce(x))


def _oep_coset_residual(a, b, Theta, M, a_dual, b_dual, t, w) -> LaurentMatrix:
    A, Ad = coset_row(a, M), coset_row(a_dual, M)
    B, Bd = coset_row(b, M), coset_row(b_dual, M)
    lhs = (A.adjoint() * Theta * Ad) * _frac(t) + (B.adjoint() * Bd) * _frac(w)
    return lhs - build_E(Theta, M) * _frac(t / M)


def _oep_direct_residuals(a, b, Theta, a_dual, b_dual, t, w) -> list[LaurentMatrix]:
    """``M = 2`` route: substitute ``z -> -z`` directly."""
    ThM = Theta.upsample(2)
    r0 = a.adjoint() * ThM * a_dual * _frac(t) + b.adjoint() * b_dual * _frac(w) - Theta * _frac(t)
    r1 = a.adjoint() * ThM * a_dual.subs_neg() * _frac(t) + b.adjoint() * b_dual.subs_neg() * _frac(w)
    return [r0, r1]


def verify_oep(a: LaurentMatrix, b: LaurentMatrix, Theta: LaurentMatrix, M: int,
               a_dual: LaurentMatrix | None = None, b_dual: LaurentMatrix | None = None,
               theta_weight=1, hp_weight=1, phi_jet: JetMatrix | None = None,
               phi_dual_jet: JetMatrix | None = None, direct: bool = True) -> OEPReport:
    """Exact check of ``t a^* Theta(M.) a~(. + 2 pi p/M) + w b^* b~(. + 2 pi p/M) = delta_p t Theta``.

    ``t`` and ``w`` are rational weights; a quasi-tight bank uses ``b~ = Diag(eps) b``.
    With refinable jets, the normalization ``phi(0)^* Theta(0) phi~(0) = 1`` and one
    vanishing moment of both high-pass families are checked as well.
    """
    a_dual = a if a_dual is None else a_dual
    b_dual = b if b_dual is None else b_dual
    r = a.rows
    if a.shape != (r, r) or a_dual.shape != (r, r) or Theta.shape != (r, r):
        raise ValueError("masks and Theta must be r x r")
    if b.cols != r or b_dual.shape != b.shape:
        raise ValueError("high-pass filters must be s x r and of equal shape")
    t, w = Fraction(theta_weight), Fraction(hp_weight)
    checks = []
    R = _oep_coset_residual(a, b, Theta, M, a_dual, b_dual, t, w)
    checks.append(IdentityCheck("polyphase", R.is_zero(), _first_nonzero(R), "coset"))
    if direct and M == 2:
        for p, Rp in enumerate(_oep_direct_residuals(a, b, Theta, a_dual, b_dual, t, w)):
            checks.append(IdentityCheck(f"shift{p}", Rp.is_zero(), _first_nonzero(Rp), "direct"))
    items = {}
    if phi_jet is not None:
        pd = phi_jet if phi_dual_jet is None else phi_dual_jet
        th0 = jet_matrix(Theta, 1)
        val = phi_jet.truncate(1).star().matmul(th0).matmul(pd.truncate(1))[0, 0][0] * GaussRational(t)
        items["normalization"] = val == G1
        items["normalization_value"] = val
        items["vanishing_moment"] = (vanishing_moments(b, phi_jet, 1) >= 1
                                     and vanishing_moments(b_dual, pd, 1) >= 1)
    holds = all(c.holds for c in checks) and all(v for k, v in items.items() if isinstance(v, bool))
    return OEPReport(holds, checks, items)


@dataclass
class BankReport:
    """Exact checks on a constructed bank."""

    quasi_tight: OEPReport
    oep: OEPReport
    vm: int
    bvm: int
    bpo: int
    sum_rules: int
    theta_strongly_invertible: bool
    round_trip: bool

    @property
    def holds(self) -> bool:
        return self.quasi_tight.holds and self.oep.holds and self.theta_strongly_invertible and self.round_trip


def verify_bank(bank: QtFilterBank, cap: int | None = None) -> BankReport:
    """Quasi-tight identities for ``(a_ring, b_ring)``, the OEP for ``(a, b, Theta)`` and moment orders."""
    M, r = bank.M, bank.r
    strong = bank.theta_poly.is_strongly_invertible()
    ar = bank.a_ring
    br = bank.b_ring_poly
    # a_ring^* a_ring + (1/s2) br^* eps br = I
    qt = verify_oep(ar, br, LaurentMatrix.identity(r), M, b_dual=bank.eps_matrix * br,
                    hp_weight=Fraction(1) / bank.theta_scale2)
    phi = bank.phi_jet
    oep = verify_oep(bank.a, bank.b, bank.Theta_poly, M, b_dual=bank.eps_matrix * bank.b,
                     theta_weight=bank.theta_scale2, phi_jet=phi)
    cap = (bank.m + 1) if cap is None else cap
    vm = vanishing_moments(bank.b, phi, cap) if phi is not None and phi.order >= cap else -1
    bvm = balanced_vm(br, r, cap)
    bpo = balancing_order(ar, br, M, r, cap)
    sr = sum_rules(bank.a, M, cap=cap).order
    round_trip = (br * bank.theta_poly) == bank.b
    return BankReport(qt, oep, vm, bvm, bpo, sr, strong, round_trip)


def construct_quasitight(a: LaurentMatrix, M: int, m: int | None = None, n: int | None = None,
                         split=hermitian_split) -> QtFilterBank:
    """Quasi-tight bank with ``m`` vanishing moments, balanced to order ``m``.

    Steps: a normal form ``theta_poly`` moving the matching filter to ``Upsilon / r`` and
    the refinable jet to ``conj(Upsilon)^T``; an orthogonal normal form ``U`` of the
    transformed mask; the Gram residuals of ``U(M.) a_ring U^{-1}`` with weight
    ``r^{-1} U^{-*} U^{-1}``; division by ``E_{Delta_m;M}``; a Hermitian split; and the
    high-pass ``b = b_breve U theta_poly``.
    """
    r = a.rows
    if r < 2:
        raise MultiplicityOne("quasi-tight construction needs multiplicity r >= 2")
    if m is None:
        m = sum_rules(a, M).order
    if m < 1:
        raise ValueError("mask must satisfy at least one sum rule")
    n = 2 * m if n is None else n
    if n < 2 * m:
        raise ValueError("need n >= 2 m")
    v, phi = matching_pair(a, M, m, n)
    ups_v = upsilon_jet(r, m) * GaussRational(Fraction(1, r))
    ups_u = upsilon_jet(r, n).star()
    nf = normal_form_general(a, M, m, n, ups_v, ups_u, v, phi)
    theta0 = nf.U
    aring = nf.new_mask
    onf = orthogonal_normal_form(aring, M, m, n, ups_v, ups_u)
    U, Uinv = onf.U, onf.U_inv
    Ucal = (Uinv.adjoint() * Uinv) * _frac(Fraction(1, r))
    abreve = onf.new_mask
    Mring = polyphase_gram(abreve, Ucal, M, m)
    sp = split(Mring)
    bbreve, eps = assemble_highpass(sp, m, M, r)
    b = bbreve * U * theta0
    meta = {
        "normal_form_checks": dict(nf.checks),
        "orthogonal_checks": dict(onf.checks),
        "s1": sp.s1,
        "s2": sp.s2,
    }
    return QtFilterBank(M, a, theta0, b, eps, Fraction(1, r), m, n, v, phi, meta)


# theta diagnostics

@dataclass
class ThetaItemI:
    holds: bool
    proportional: bool
    c_jet: Optional[MomentJet]
    d_jet: Optional[MomentJet]
    c_scale: QuadScalar
    d_scale: QuadScalar
    c_abs2: Optional[Fraction]
    d_abs2: Optional[Fraction]
    detail: str = ""


@dataclass
class ThetaItemII:
    holds: bool
    generators: list
    M_matrices: list
    M0_direct: Optional[LaurentMatrix]
    failing_entry: Optional[dict] = None


@dataclass
class ThetaReport:
    item_i: ThetaItemI
    item_ii: ThetaItemII

    @property
    def holds(self) -> bool:
        return self.item_i.holds and self.item_ii.holds


def _fourth_root(q: Fraction) -> Optional[Fraction]:
    from math import isqrt

    def rsqrt(x: Fraction):
        if x < 0:
            return None
        n, d = isqrt(x.numerator), isqrt(x.denominator)
        return Fraction(n, d) if n * n == x.numerator and d * d == x.denominator else None

    s = rsqrt(q)
    return rsqrt(s) if s is not None else None


def _item_i(theta0: LaurentMatrix, s2: Fraction, v: JetMatrix, phi: JetMatrix, m: int, balance: bool) -> ThetaItemI:
    r = theta0.rows
    tinv = theta0.strong_inverse()
    w = v.truncate(m).matmul(jet_matrix(tinv, m))
    u = jet_matrix(theta0, m).matmul(phi.truncate(m))
    ups = upsilon_jet(r, m)
    upc = ups.star()
    c0 = w[0, 0]
    d0 = u[0, 0]
    prop = all(w[0, j] == c0 * ups[0, j] for j in range(r)) and all(u[j, 0] == d0 * upc[j, 0] for j in range(r))
    c_abs2 = c0[0].abs2() / s2
    d_abs2 = d0[0].abs2() * s2
    target = Fraction(1, r)
    c_scale = QuadScalar.sqrt(s2).inverse()
    d_scale = QuadScalar.sqrt(s2)
    cj, dj = c0, d0
    detail = ""
    if balance and c_abs2 and d_abs2 and c_abs2 != d_abs2:
        # v -> lam v, phi -> phi / lam with lam^4 = |d|^2 / |c|^2
        lam = _fourth_root(d_abs2 / c_abs2)
        if lam is None:
            detail = "balancing factor is irrational"
            c_abs2 = d_abs2 = None
        else:
            cj, dj = c0 * GaussRational(lam), d0 * GaussRational(1 / lam)
            c_abs2, d_abs2 = c_abs2 * lam * lam, d_abs2 / (lam * lam)
            detail = f"matching pair rescaled by {lam}"
    holds = prop and c_abs2 == target and d_abs2 == target
    if not prop:
        detail = "transformed moment vectors are not proportional to Upsilon"
    return ThetaItemI(holds, prop, cj, dj, c_scale, d_scale, c_abs2, d_abs2, detail)


def _item_ii(theta0: LaurentMatrix, a: LaurentMatrix, M: int, m: int) -> ThetaItemII:
    r = a.rows
    ar = theta0.upsample(M) * a * theta0.strong_inverse()
    P = _residual_polyphase(ar, LaurentMatrix.identity(r), M)
    Enab = build_E(LaurentMatrix.scalar(nabla(m)), r)
    try:
        Mt = _conjugate_out(P, build_E(Enab, M)) if m else P
    except NotDivisible as exc:
        i, j = exc.entry
        return ThetaItemII(False, [], [], None, {"block": (i // r, j // r), "entry": (i % r, j % r),
                                                 "remainder": str(exc.remainder)})
    gens = generators(Mt, M, r)
    rs = ResidualSet(M, r, Mt, gens)
    mats = rs.as_list() if M in (2, 4) else [rs.first]
    direct = None
    if m:
        direct = _conjugate_out(LaurentMatrix.identity(r) - ar.adjoint() * ar, Enab)
    else:
        direct = LaurentMatrix.identity(r) - ar.adjoint() * ar
    ok = direct == rs.first
    fail = None if ok else {"cross_check": "M0 differs between the coset and direct routes"}
    return ThetaItemII(ok, gens, mats, direct, fail)


def check_theta(theta: LaurentMatrix, a: LaurentMatrix, M: int, m: int,
                v_jet: JetMatrix | None = None, phi_jet: JetMatrix | None = None,
                theta_scale2=1, balance: bool = True) -> ThetaReport:
    """Both characterizing properties of a quasi-tight ``theta = sqrt(theta_scale2) * theta``.

    Item (i): ``v theta^{-1} = c Upsilon`` and ``theta phi = d conj(Upsilon)^T`` to order
    ``m`` with ``|c(0)|^2 = |d(0)|^2 = 1/r``.  The matching pair is only determined up to
    ``v -> lam v, phi -> phi / lam``; with ``balance`` the positive ``lam`` equalizing the
    two moduli is used when it is rational.
    Item (ii): the residual matrices conjugated by ``E_{nabla^m delta;r}^{-1}`` are Laurent
    polynomials; the division is done on the polyphase matrix and cross-checked
    against the unshifted matrix computed directly.
    """
    if not theta.is_strongly_invertible():
        raise ValueError("theta must be strongly invertible")
    s2 = Fraction(theta_scale2)
    if v_jet is None or phi_jet is None:
        v_jet, phi_jet = matching_pair(a, M, m, m)
    return ThetaReport(_item_i(theta, s2, v_jet, phi_jet, m, balance), _item_ii(theta, a, M, m))


# semi-definiteness probe

@dataclass
class PSDReport:
    min_eigenvalue: float
    argmin: float
    psd: bool
    min_inside: Optional[float] = None
    samples: int = 0
    window: tuple = ()


def _eval_matrix(A: LaurentMatrix, z):
    import mpmath

    return mpmath.matrix([[p.eval_mp(z) for p in row] for row in A.entries()])


def psd_probe(a: LaurentMatrix, Theta: LaurentMatrix, M: int, samples: int = 64,
              window: tuple = (-0.25, 0.25), precision: int | None = None, tol: float = 1e-20) -> PSDReport:
    """Minimum eigenvalue of ``Diag(Theta(xi + 2 pi g/M)) - [a(xi + 2 pi g/M)]^* Theta(M xi) [a(xi + 2 pi g'/M)]``.

    ``window`` is a sub-interval of ``xi / pi`` whose minimum is reported separately.
    Diagnostic only: evaluation is in ``mpmath`` floating point.
    """
    import os

    import mpmath

    dps = precision or int(os.environ.get("FRAMELET_PRECISION", "50"))
    r = a.rows
    with mpmath.workdps(dps):
        best, arg = None, None
        best_in = None
        xs = [mpmath.mpf(-1) + mpmath.mpf(2) * (k + mpmath.mpf(1) / 2) / samples for k in range(samples)]
        lo, hi = window
        xs += [mpmath.mpf(lo) + (mpmath.mpf(hi) - lo) * (k + mpmath.mpf(1) / 2) / samples for k in range(samples)]
        for x in xs:
            xi = x * mpmath.pi
            zs = [mpmath.expj(-(xi + 2 * mpmath.pi * g / M)) for g in range(M)]
            ZM = mpmath.expj(-M * xi)
            ThM = _eval_matrix(Theta, ZM)
            big = mpmath.zeros(M * r, M * r)
            avals = [_eval_matrix(a, z) for z in zs]
            for g in range(M):
                Tg = _eval_matrix(Theta, zs[g])
                for i in range(r):
                    for j in range(r):
                        big[g * r + i, g * r + j] += Tg[i, j]
            for g in range(M):
                left = avals[g].transpose_conj() * ThM
                for h in range(M):
                    blk = left * avals[h]
                    for i in range(r):
                        for j in range(r):
                            big[g * r + i, h * r + j] -= blk[i, j]
            big = (big + big.transpose_conj()) / 2
            ev = min(mpmath.re(e) for e in mpmath.eighe(big, eigvals_only=True))
            if best is None or ev < best:
                best, arg = ev, x
            if lo <= x <= hi and (best_in is None or ev < best_in):
                best_in = ev
        return PSDReport(float(best), float(arg), bool(best > -tol),
                         None if best_in is None else float(best_in), samples, tuple(window))
