import random
from fractions import Fraction

import pytest

from conftest import ONE, Z, lp, random_poly
from qtframelet.exactnum import GaussRational
from qtframelet.laurent import (
    LaurentMatrix,
    LaurentPoly,
    NotDivisible,
    NotStronglyInvertible,
    adjoint,
    adjugate,
    build_D,
    build_E,
    build_F2,
    coset_merge,
    coset_split,
    det,
    divide_exact,
    lp_arith,
    strong_inverse,
    upsample,
)
from qtframelet.moments import nabla


def test_identity_product():
    A = LaurentMatrix([[lp({0: 1, 1: 2}), lp({-1: 3})], [lp({2: -1}), lp({0: Fraction(1, 2)})]])
    assert lp_arith(LaurentMatrix.identity(2), A, "mul") == A


def test_scalar_product():
    p = (ONE + Z) * Fraction(1, 2)
    q = (ONE - Z) * Fraction(1, 2)
    assert p * q == lp({0: Fraction(1, 4), 2: Fraction(-1, 4)})


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        LaurentMatrix.identity(2) * LaurentMatrix.identity(3)


def test_adjoint_scalar():
    assert adjoint(LaurentMatrix([[(ONE + Z) * Fraction(1, 2)]]))[0, 0] == lp({0: Fraction(1, 2), -1: Fraction(1, 2)})


def test_adjoint_conjugates_coefficients():
    p = LaurentPoly({2: GaussRational(1, 3)})
    A = LaurentMatrix([[0, p]])
    assert adjoint(A)[1, 0] == LaurentPoly({-2: GaussRational(1, -3)})


def test_adjoint_reverses_products():
    rng = random.Random(5)
    for _ in range(20):
        A = LaurentMatrix([[random_poly(rng) for _ in range(2)] for _ in range(2)])
        B = LaurentMatrix([[random_poly(rng) for _ in range(2)] for _ in range(2)])
        assert adjoint(A * B) == adjoint(B) * adjoint(A)


def test_cosets_of_one_plus_z():
    parts = coset_split(LaurentMatrix([[ONE + Z]]), 2).parts
    assert parts[0][0, 0] == ONE and parts[1][0, 0] == ONE


def test_coset_merge_wide_support():
    u = LaurentMatrix([[lp({k: k + 7 for k in range(-4, 4)})]])
    for M in (2, 3, 4):
        assert coset_merge(coset_split(u, M)) == u


def test_upsample():
    assert upsample(LaurentMatrix([[Z]]), 2)[0, 0] == Z * Z
    A = LaurentMatrix([[lp({-1: 2, 3: 1})]])
    assert upsample(A, 1) == A
    assert adjoint(upsample(A, 3)) == upsample(adjoint(A), 3)


def test_build_E_identity():
    assert build_E(LaurentMatrix.identity(2), 3) == LaurentMatrix.identity(6)


def test_build_E_nabla():
    E = build_E(LaurentMatrix([[ONE - Z]]), 2)
    assert E == LaurentMatrix([[ONE, -ONE], [-Z, ONE]])


@pytest.mark.parametrize("m", [1, 2, 3])
def test_det_E_nabla(m):
    assert det(build_E(LaurentMatrix([[nabla(m)]]), 2)) == (ONE - Z) ** m


def test_F_identity_for_M2():
    # F D F^* = M E(M .) with the rational unitary F of the dilation-2 case
    u = LaurentMatrix([[lp({0: 5, 1: -2, 2: 3}), lp({-1: 1})], [lp({0: 1, 1: 1}), lp({0: 2, 3: -1})]])
    F2 = build_F2(2)
    assert F2 * build_D(u, 2) * F2.adjoint() == build_E(u, 2).upsample(2) * Fraction(2)


def test_det_identity_and_example_theta():
    assert det(LaurentMatrix.identity(3)) == ONE
    theta = LaurentMatrix([[ONE, lp({-1: -1, 0: 2, 1: -1})], [0, ONE]])
    assert det(theta).is_monomial()


def test_adjugate_identity():
    rng = random.Random(2)
    A = LaurentMatrix([[random_poly(rng) for _ in range(3)] for _ in range(3)])
    assert A * adjugate(A) == LaurentMatrix.identity(3) * det(A)


def test_strong_inverse_examples():
    assert strong_inverse(LaurentMatrix.identity(2)) == LaurentMatrix.identity(2)
    A = LaurentMatrix([[Z, 0], [0, ONE]])
    assert strong_inverse(A) == LaurentMatrix([[LaurentPoly.monomial(-1), 0], [0, ONE]])
    U = LaurentMatrix([[ONE, lp({0: 3, 1: -1})], [0, ONE]])
    Ui = strong_inverse(U)
    assert U * Ui == LaurentMatrix.identity(2) and Ui[1, 0].is_zero()


def test_strong_inverse_rejects_non_monomial_det():
    with pytest.raises(NotStronglyInvertible):
        strong_inverse(LaurentMatrix([[ONE + Z]]))


def test_divide_exact_examples():
    assert divide_exact(LaurentMatrix([[ONE - Z * Z]]), ONE - Z)[0, 0] == ONE + Z
    bs = (ONE + Z) ** 2 * Fraction(1, 4)
    assert divide_exact(LaurentMatrix([[bs]]), (ONE + Z) ** 2)[0, 0] == LaurentPoly.const(Fraction(1, 4))
    with pytest.raises(NotDivisible) as info:
        divide_exact(LaurentMatrix([[ONE + Z]]), ONE - Z)
    assert info.value.entry == (0, 0)


def test_evaluation_matches_coefficients():
    p = lp({-1: 1, 0: 2, 1: 1})
    assert p(GaussRational(-1)) == GaussRational(0)
    assert p(GaussRational(1)) == GaussRational(4)
