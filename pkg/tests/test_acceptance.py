"""The nine acceptance criteria, each reported as one PASS/FAIL line."""

import random
import time
from contextlib import contextmanager
from fractions import Fraction

import pytest

import conftest
import test_properties
from conftest import BANK_SPECS, ONE, Z, build_bank, lp
from qtframelet.bankio import fixture
from qtframelet.exactnum import GaussRational, QuadScalar
from qtframelet.laurent import LaurentMatrix, LaurentPoly
from qtframelet.moments import matching_pair, sum_rules
from qtframelet.normalform import normal_form_canonical, orthogonal_normal_form
from qtframelet.qtconstruct import check_theta, construct_quasitight, psd_probe, verify_bank, verify_oep
from qtframelet.transform import (
    Signal,
    TransformBank,
    analyze,
    annihilator_witness,
    classify_theta_conv,
    convolve,
    synthesize,
    valid_range,
    vector_convert,
)


@contextmanager
def criterion(n: int, title: str):
    info: dict = {}
    try:
        yield info
    except BaseException as exc:
        conftest.ACCEPTANCE_LINES.append(f"criterion {n}: FAIL  {title} ({type(exc).__name__}: {exc})")
        raise
    detail = info.get("detail", "")
    conftest.ACCEPTANCE_LINES.append(f"criterion {n}: PASS  {title}" + (f" ({detail})" if detail else ""))


def test_c1_exact_quasi_tight_identities():
    with criterion(1, "exact quasi-tight and OEP identities, < 60 s per fixture") as info:
        times = {}
        for label, name, M, m in BANK_SPECS:
            t0 = time.perf_counter()
            bank = construct_quasitight(fixture(name), M, m)
            rep = verify_bank(bank)
            times[label] = time.perf_counter() - t0
            assert rep.quasi_tight.holds and rep.oep.holds, label
            assert all(c.witness is None for c in rep.quasi_tight.checks + rep.oep.checks)
            assert times[label] < 60, label
        info["detail"] = ", ".join(f"{k} {v:.1f}s" for k, v in times.items())


def test_c2_orders():
    with criterion(2, "sum rules and moment orders") as info:
        assert sum_rules(fixture("hermite"), 2).order == 4
        h = verify_bank(build_bank("hermite-m2"))
        assert (h.vm, h.bvm, h.bpo) == (2, 2, 2)
        v = verify_bank(build_bank("vec-bspline2-m2"))
        assert (v.bvm, v.bpo) == (2, 2)
        info["detail"] = f"hermite sr=4; hermite m=2 vm/bvm/bpo={h.vm}/{h.bvm}/{h.bpo}; vec-bspline2 bvm/bpo={v.bvm}/{v.bpo}"


def test_c3_perfect_reconstruction():
    with criterion(3, "exact 3-level round trips, 20 signals per bank, < 30 s total") as info:
        rng = random.Random(2024)
        banks = [build_bank(label) for label, *_ in BANK_SPECS]
        t0 = time.perf_counter()
        for bank in banks:
            for _ in range(20):
                length = rng.randint(1, 64)
                v = conftest.random_signal(bank.r, length, rng, start=rng.randint(-20, 20))
                assert synthesize(analyze(v, bank, 3), bank) == v
        elapsed = time.perf_counter() - t0
        assert elapsed < 30
        info["detail"] = f"{len(banks) * 20} signals in {elapsed:.1f}s"


def _level_filters(tb: TransformBank, J: int):
    """Composite filters giving the level-j details directly: b(z^{M^{j-1}}) a(z^{M^{j-2}}) ... a(z)."""
    out = []
    acc = None
    for j in range(J):
        low = tb.a.matrix if acc is None else acc
        high = tb.b.matrix if acc is None else tb.b.matrix.upsample(tb.M ** j) * acc
        out.append(high)
        acc = tb.a.matrix if acc is None else tb.a.matrix.upsample(tb.M ** j) * acc
    return out


def _poly_signal(coeffs, r: int, blocks: int) -> Signal:
    vals = {}
    for k in range(r * blocks):
        x = sum(Fraction(c) * k ** d for d, c in enumerate(coeffs))
        if x:
            vals[k] = [GaussRational(x)]
    return vector_convert(Signal.from_dict(vals, 1), r)


def _interior_details(v: Signal, tb: TransformBank, filters, blocks: int):
    pyr = analyze(v, tb, len(filters))
    out = []
    for j, (F, w) in enumerate(zip(filters, pyr.details)):
        n0, n1 = valid_range(0, blocks - 1, F, tb.M ** (j + 1))
        assert n1 - n0 >= 2, "window too small for an interior"
        out.append([w[n] for n in range(n0, n1 + 1)])
    return out


def test_c4_balancing_sparsity():
    with criterion(4, "polynomial inputs give zero interior details; degree m does not") as info:
        parts = []
        for label, *_ in BANK_SPECS:
            bank = build_bank(label)
            rep = verify_bank(bank)
            m = bank.m
            if rep.bpo != m:
                continue
            tb = TransformBank.from_qt(bank)
            filters = _level_filters(tb, 3)
            span = max(F.support()[1] - F.support()[0] for F in filters)
            blocks = span + 8 * tb.M ** 3
            zero = QuadScalar(0, 1)
            rng = random.Random(m)
            inputs = [[0] * d + [1] for d in range(m)] + [[rng.randint(-5, 5) for _ in range(m)]]
            for coeffs in inputs:
                for level in _interior_details(_poly_signal(coeffs, bank.r, blocks), tb, filters, blocks):
                    assert all(x == zero for row in level for x in row), (label, coeffs)
            witness = _interior_details(_poly_signal([0] * m + [1], bank.r, blocks), tb, filters[:1], blocks)[0]
            assert any(x != zero for row in witness for x in row), (label, "maximality")
            parts.append(f"{label} m={m}")
        assert len(parts) == len(BANK_SPECS)
        info["detail"] = "; ".join(parts)


def test_c5_normal_form_structure():
    with criterion(5, "canonical normal form checks and orthogonal Gram diagonality") as info:
        a = fixture("hermite")
        v, phi = matching_pair(a, 2, 4, 8)
        can = normal_form_canonical(a, 2, 4, 8, v, phi)
        for name in ("a11_box_divisible", "a12_divisible", "a21_divisible", "a11_jet"):
            assert can.checks[name], name
        orth = orthogonal_normal_form(can.new_mask, 2, 4, 8, can.new_matching_jet, can.new_phi_jet)
        from qtframelet.moments import jet_matrix

        gram = jet_matrix(orth.U_inv.adjoint() * orth.U_inv, 8)
        assert orth.checks["gram_diagonal"] and gram[0, 1].is_zero() and gram[1, 0].is_zero()
        info["detail"] = "four block checks pass; Gram jet diagonal through order 8"


def test_c6_theta_characterization():
    with criterion(6, "constructed theta passes both items; identity fails item (i)") as info:
        for label, *_ in BANK_SPECS:
            bank = build_bank(label)
            rep = check_theta(bank.theta_poly, bank.a, bank.M, bank.m, bank.v_jet, bank.phi_jet,
                              theta_scale2=bank.theta_scale2)
            assert rep.item_i.holds and rep.item_ii.holds, label
        assert not check_theta(LaurentMatrix.identity(2), fixture("hermite"), 2, 2).item_i.holds
        info["detail"] = f"{len(BANK_SPECS)} banks"


def test_c7_negative_controls():
    with criterion(7, "OEP banks with singular Theta") as info:
        # scalar hat-function bank whose Theta vanishes at pi
        a = LaurentMatrix([[(ONE + Z) ** 2 * Fraction(1, 4)]])
        theta = LaurentMatrix([[(ONE + Z) * Fraction(1, 2)]])
        Theta = theta.adjoint() * theta
        b = LaurentMatrix([[(Z - ONE) * (Z + ONE) ** 3 * Fraction(1, 8)], [(Z * Z - ONE) * Fraction(1, 4)]])
        assert verify_oep(a, b, Theta, 2).holds
        cls = classify_theta_conv(Theta)
        assert cls.kind == "Singular" and Fraction(1) in cls.singular_points
        assert cls.det(GaussRational(-1)) == GaussRational(0)
        v, (lo, hi) = annihilator_witness(Theta, 1, 16)
        assert all(v[k][0] == QuadScalar((-1) ** k, 1) for k in range(16))
        out = convolve(v, Theta)
        assert all(not out.data[0, 0].coeff(n) for n in range(lo, hi + 1))
        # multiplicity-two bank with identically singular Theta
        a2 = LaurentMatrix([[lp({-1: Fraction(1, 4), 0: Fraction(1, 2), 1: Fraction(1, 4)}), 0],
                            [0, lp({0: Fraction(1, 4)})]])
        theta2 = LaurentMatrix([[(ONE + Z) * Fraction(1, 2), 0], [0, 0]])
        Theta2 = theta2.adjoint() * theta2
        b2 = LaurentMatrix([[LaurentPoly.monomial(-1) * (ONE - Z) * (ONE + Z) ** 3 * Fraction(1, 8), 0],
                            [Z * (Z * Z - ONE) * Fraction(1, 4), 0]])
        assert verify_oep(a2, b2, Theta2, 2).holds
        cls2 = classify_theta_conv(Theta2)
        assert cls2.kind == "Singular" and cls2.det.is_zero()
        info["detail"] = f"first: witness interior {lo}..{hi}; second: det identically zero"


def test_c8_psd_obstruction():
    with criterion(8, "semi-definiteness fails near the origin for the Hermite mask, < 5 s") as info:
        t0 = time.perf_counter()
        rep = psd_probe(fixture("hermite"), LaurentMatrix.identity(2), 2, window=(-0.25, 0.25))
        elapsed = time.perf_counter() - t0
        assert rep.min_inside < -1e-6 and elapsed < 5
        info["detail"] = f"min eigenvalue {rep.min_inside:.4f} in {elapsed:.2f}s"


PROPERTY_SUITES = [
    "test_coset_round_trip",
    "test_adjoint_involution",
    "test_det_multiplicative",
    "test_jet_homomorphism",
    "test_balanced_vm_iff_factorization",
    "test_hermitian_split_identity",
]


def test_c9_property_suites():
    with criterion(9, "1000-case property suites, < 60 s total") as info:
        t0 = time.perf_counter()
        for name in PROPERTY_SUITES:
            getattr(test_properties, name)()
        elapsed = time.perf_counter() - t0
        assert elapsed < 60
        info["detail"] = f"{len(PROPERTY_SUITES)} suites in {elapsed:.1f}s"
