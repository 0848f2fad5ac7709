from fractions import Fraction

import pytest

from conftest import ONE, Z, haar, lp
from qtframelet.bankio import fixture
from qtframelet.exactnum import GaussRational
from qtframelet.laurent import LaurentMatrix
from qtframelet.moments import (
    MomentJet,
    NotBalanced,
    SpectralConditionViolated,
    ZeroConstantTerm,
    balanced_assemble,
    balanced_factorize,
    balanced_vm,
    balancing_order,
    jet_exp,
    jet_inverse,
    jet_matrix,
    jet_of,
    jet_star,
    matching_pair,
    refinable_jets,
    sum_rules,
    upsilon_jet,
    vanishing_moments,
)

I = GaussRational(0, 1)
G = GaussRational


def test_jet_of_backward_difference():
    assert jet_of(ONE - Z, 2) == MomentJet([0, I])


def test_jet_exp():
    assert jet_exp(Fraction(1, 2), 3) == MomentJet([1, GaussRational(0, Fraction(1, 2)), Fraction(-1, 8)])


def test_jet_inverse():
    assert jet_inverse(MomentJet([1, 1, 0])) == MomentJet([1, -1, 1])
    with pytest.raises(ZeroConstantTerm):
        jet_inverse(MomentJet([0, 1]))


def test_jet_star_is_involution():
    p = MomentJet([G(1, 2), G(0, 3), G(-1, 1)])
    assert jet_star(jet_star(p)) == p
    assert jet_star(p) == MomentJet([G(1, -2), G(0, -3), G(-1, -1)])


def test_jet_product_is_homomorphic():
    p, q = lp({-1: 2, 0: 1, 2: 3}), lp({0: 1, 1: Fraction(-1, 2)})
    assert jet_of(p * q, 4) == jet_of(p, 4) * jet_of(q, 4)


def test_haar_refinable_jet():
    a, _ = haar()
    phi = refinable_jets(a, 2, 2)
    assert phi[0, 0] == MomentJet([1, GaussRational(0, Fraction(-1, 2))])


def test_hermite_refinable_jet():
    phi = refinable_jets(fixture("hermite"), 2, 3)
    assert phi.coeff(0) == [[G(1)], [G(0)]]
    assert phi[0, 0] == MomentJet([1, 0, Fraction(-1, 15)])
    assert phi[1, 0] == MomentJet([0, GaussRational(0, Fraction(-1, 15)), 0])


def test_spectral_condition_violated():
    a = LaurentMatrix([[lp({0: Fraction(1, 4), 1: Fraction(1, 4)})]])
    with pytest.raises(SpectralConditionViolated):
        refinable_jets(a, 2, 2)
    with pytest.raises(SpectralConditionViolated):
        sum_rules(a, 2)


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_bspline_sum_rules(m):
    rep = sum_rules(fixture(f"bspline({m},2)"), 2, cap=8)
    assert rep.order == m and rep.failed_at == m + 1


def test_hermite_sum_rules():
    rep = sum_rules(fixture("hermite"), 2)
    assert rep.order == 4 and rep.failed_at == 5
    assert rep.matching_jet[0, 0] == MomentJet([1, 0, 0, 0])
    assert rep.matching_jet[0, 1] == MomentJet([0, I, 0, 0])


def test_vectorized_bspline_matching_jet():
    rep = sum_rules(fixture("vec-bspline2"), 2)
    assert rep.order == 2
    assert rep.matching_jet == upsilon_jet(2, 2)


def test_sum_rules_normalization_flag():
    a = fixture("hermite")
    rep = sum_rules(a, 2, phi0=[G(1), G(0)])
    assert rep.normalized


@pytest.mark.parametrize("name,m", [("hermite", 4), ("vec-bspline2", 2), ("example61", 2), ("bspline(3,2)", 3)])
def test_matching_pair_is_normalized(name, m):
    v, phi = matching_pair(fixture(name), 2, m, m)
    assert v.matmul(phi)[0, 0] == MomentJet.one(m)


def test_vanishing_moments_haar():
    a, b = haar()
    phi = refinable_jets(a, 2, 4)
    assert vanishing_moments(b, phi, 4) == 1
    assert vanishing_moments(a, phi, 4) == 0


def test_balanced_vm():
    zero = LaurentMatrix([[0, 0]])
    assert balanced_vm(zero, 2, 5) == 5
    _, b = haar()
    assert balanced_vm(b, 1, 4) == 1


def test_balancing_order():
    a, b = haar()
    assert balancing_order(a, b, 2, 1, 4) == 1
    assert balancing_order(a, a, 2, 1, 4) == 0


def test_balanced_factorize_examples():
    b = LaurentMatrix([[ONE - Z, Z - ONE]])
    assert balanced_factorize(b, 0) == LaurentMatrix([[(ONE - Z).upsample(2) + (Z - ONE).upsample(2).shift(1)]])
    q = balanced_factorize(b, 1)
    assert q[0, 0] == ONE - Z * Z
    assert balanced_assemble(q, 1, 2) == b


def test_balanced_factorize_rejects():
    with pytest.raises(NotBalanced):
        balanced_factorize(LaurentMatrix([[ONE, ONE]]), 1)


def test_sum_rules_invariant_under_normal_form():
    from qtframelet.normalform import normal_form_canonical

    a = fixture("hermite")
    v, phi = matching_pair(a, 2, 4, 4)
    res = normal_form_canonical(a, 2, 4, 4, v, phi)
    assert sum_rules(res.new_mask, 2).order == 4
    assert jet_matrix(res.new_mask, 1).coeff(0)[0][0] == G(1)
