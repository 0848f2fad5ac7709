from fractions import Fraction

import pytest

from conftest import ONE, Z, haar, lp
from qtframelet.bankio import fixture
from qtframelet.exactnum import GaussRational, QuadScalar
from qtframelet.laurent import LaurentMatrix, LaurentPoly
from qtframelet.moments import refinable_jets
from qtframelet.qtconstruct import (
    MultiplicityOne,
    NotHermitian,
    assemble_highpass,
    check_theta,
    construct_quasitight,
    delta_factorize,
    hermitian_split,
    mask_residuals,
    psd_probe,
    verify_bank,
    verify_oep,
)

ID1 = LaurentMatrix.identity(1)


def test_haar_residual():
    a, _ = haar()
    res = mask_residuals(a, ID1, 2)
    assert res.first[0, 0] == lp({-1: Fraction(-1, 4), 0: Fraction(1, 2), 1: Fraction(-1, 4)})


def test_residuals_of_tight_mask_factor():
    a, b = haar()
    res = mask_residuals(a, ID1, 2)
    # residuals equal b^* b at both shifts for a tight pair
    assert res.first == b.adjoint() * b
    assert res.shifted(1) == b.adjoint() * b.subs_neg()


def test_residuals_reject_non_hermitian():
    a = fixture("hermite")
    with pytest.raises(NotHermitian):
        mask_residuals(a, LaurentMatrix([[ONE, Z], [0, ONE]]), 2)


def test_delta_factorize_needs_multiplicity():
    a, _ = haar()
    with pytest.raises(MultiplicityOne):
        delta_factorize(mask_residuals(a, ID1, 2), 1)


def test_hermitian_split_zero_and_identity():
    for H in (LaurentMatrix.zeros(2, 2), LaurentMatrix.identity(2)):
        sp = hermitian_split(H)
        assert sp.product() == H
        assert sp.eps == [1, 1, -1, -1]


def test_hermitian_split_general():
    H = LaurentMatrix([[lp({-1: 1, 0: 3, 1: 1}), lp({0: 2, 1: GaussRational(0, 1)})],
                       [lp({0: 2, -1: GaussRational(0, -1)}), lp({0: -5})]])
    assert hermitian_split(H).product() == H
    with pytest.raises(NotHermitian):
        hermitian_split(LaurentMatrix([[Z]]))


def test_assemble_highpass_lazy():
    sp = hermitian_split(LaurentMatrix.zeros(2, 2))
    b, eps = assemble_highpass(sp, 0, 2, 1)
    assert b == LaurentMatrix([[ONE], [Z], [ONE], [Z]])
    assert eps == [1, 1, -1, -1]


def test_verify_oep_haar():
    a, b = haar()
    phi = refinable_jets(a, 2, 1)
    rep = verify_oep(a, b, ID1, 2, phi_jet=phi)
    assert rep.holds
    assert {c.route for c in rep.checks} == {"coset", "direct"}


def test_verify_oep_witness_on_perturbation():
    a, b = haar()
    bad = LaurentMatrix([[b[0, 0] + lp({0: Fraction(1, 1000)})]])
    rep = verify_oep(a, bad, ID1, 2)
    assert not rep.holds
    assert all(not c.holds and c.witness for c in rep.checks)


@pytest.mark.parametrize("label", ["hermite-m2", "vec-bspline2-m2", "example61-m2"])
def test_constructed_bank_checks(banks, label):
    bank = banks[label]
    rep = verify_bank(bank)
    assert rep.holds
    assert rep.vm == rep.bvm == rep.bpo == bank.m
    assert sorted(set(bank.eps)) in ([1], [-1, 1])


@pytest.mark.parametrize("label", ["hermite-m2", "hermite-m4", "vec-bspline2-m2", "example61-m2", "vec-bspline3"])
def test_constructed_theta_passes_check(banks, label):
    bank = banks[label]
    rep = check_theta(bank.theta_poly, bank.a, bank.M, bank.m, bank.v_jet, bank.phi_jet,
                      theta_scale2=bank.theta_scale2)
    assert rep.holds
    assert rep.item_i.c_abs2 == rep.item_i.d_abs2 == Fraction(1, bank.r)


def test_identity_theta_fails_on_hermite():
    rep = check_theta(LaurentMatrix.identity(2), fixture("hermite"), 2, 2)
    assert not rep.item_i.holds


def test_printed_vec_bspline_theta_item_i():
    theta = LaurentMatrix([[ONE, lp({-1: -1, 0: 2, 1: -1})], [0, ONE]])
    rep = check_theta(theta, fixture("vec-bspline2"), 2, 2, theta_scale2=Fraction(2, 576))
    item = rep.item_i
    assert item.holds
    half_sqrt2 = QuadScalar(Fraction(1, 2), 2)
    assert QuadScalar(item.c_jet[0], 1) * item.c_scale == half_sqrt2
    assert QuadScalar(item.d_jet[0], 1) * item.d_scale == half_sqrt2


def test_construct_rejects_scalar_mask():
    a, _ = haar()
    with pytest.raises(MultiplicityOne):
        construct_quasitight(a, 2, 1)


def test_psd_probe():
    a, _ = haar()
    assert psd_probe(a, ID1, 2, samples=16).psd
    rep = psd_probe(fixture("hermite"), LaurentMatrix.identity(2), 2, samples=32)
    assert not rep.psd and rep.min_inside < -1e-6
