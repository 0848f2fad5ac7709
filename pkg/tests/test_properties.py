"""Property tests for the algebraic invariants, 1000 examples each."""

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from qtframelet.exactnum import DivisionByZero, GaussRational
from qtframelet.laurent import LaurentMatrix, LaurentPoly, adjoint, coset_merge, coset_split, det
from qtframelet.moments import (
    NotBalanced,
    balanced_assemble,
    balanced_factorize,
    balanced_vm,
    jet_of,
)
from qtframelet.qtconstruct import hermitian_split
from qtframelet.transform import Signal, vector_convert, vector_convert_inverse

PROPS = settings(max_examples=1000, deadline=None, suppress_health_check=[HealthCheck.too_slow])

# coefficients as (re, im, denominator) integer triples; cheaper to draw than st.fractions
gauss = st.tuples(st.integers(-8, 8), st.integers(-8, 8), st.integers(1, 6)).map(
    lambda t: GaussRational(Fraction(t[0], t[2]), Fraction(t[1], t[2])))
real = st.tuples(st.integers(-8, 8), st.integers(1, 6)).map(lambda t: GaussRational(Fraction(t[0], t[1])))
nonzero_gauss = gauss.filter(bool)


def _poly(k0, coeffs):
    return LaurentPoly({k0 + j: c for j, c in enumerate(coeffs)})


def polys(max_terms=4, real_only=False):
    return st.builds(_poly, st.integers(-3, 3), st.lists(real if real_only else gauss, max_size=max_terms))


def matrices(rows, cols, max_terms=3):
    row = st.lists(polys(max_terms), min_size=cols, max_size=cols)
    return st.lists(row, min_size=rows, max_size=rows).map(LaurentMatrix)


M22, M23, M44 = matrices(2, 2), matrices(2, 3), matrices(4, 4, max_terms=2)
SQUARE = {r: matrices(r, r, max_terms=6) for r in (1, 2)}


# exact scalars

@PROPS
@given(gauss, gauss, gauss)
def test_field_axioms(x, y, w):
    assert x + y == y + x and x * y == y * x
    assert (x + y) + w == x + (y + w)
    assert (x * y) * w == x * (y * w)
    assert x * (y + w) == x * y + x * w
    assert x - x == GaussRational(0)


@PROPS
@given(gauss, nonzero_gauss)
def test_division_inverts_product(x, y):
    assert x * y * y.inverse() == x
    assert (x * y) / y == x


@PROPS
@given(gauss)
def test_zero_has_no_inverse(x):
    if not x:
        with pytest.raises(DivisionByZero):
            x.inverse()
    else:
        assert x * x.inverse() == GaussRational(1)


# Laurent matrices

@PROPS
@given(st.integers(2, 4), st.one_of(SQUARE[1], SQUARE[2]))
def test_coset_round_trip(M, u):
    assert coset_merge(coset_split(u, M)) == u


@PROPS
@given(M23)
def test_adjoint_involution(A):
    assert adjoint(adjoint(A)) == A


@PROPS
@given(M22, M22)
def test_det_multiplicative(A, B):
    assert det(A * B) == det(A) * det(B)


# moment jets

@PROPS
@given(polys(), polys(), st.integers(1, 5))
def test_jet_homomorphism(p, q, n):
    assert jet_of(p * q, n) == jet_of(p, n) * jet_of(q, n)
    assert jet_of(p + q, n) == jet_of(p, n) + jet_of(q, n)


def _case(r, m, assembled, qs, entries):
    if assembled:
        # balanced by construction: assemble from an arbitrary q
        b = balanced_assemble(LaurentMatrix([[q] for q in qs]), m, r)
    else:
        b = LaurentMatrix([row[:r] for row in entries[:len(qs)]])
    return b, m, r


highpass_cases = st.builds(
    _case, st.integers(1, 3), st.integers(0, 2), st.booleans(),
    st.lists(polys(5), min_size=1, max_size=2),
    st.lists(st.lists(polys(3), min_size=3, max_size=3), min_size=2, max_size=2))


@PROPS
@given(highpass_cases)
def test_balanced_vm_iff_factorization(case):
    b, m, r = case
    has_moments = balanced_vm(b, r, m) >= m
    try:
        q = balanced_factorize(b, m)
    except NotBalanced:
        assert not has_moments
    else:
        assert has_moments
        assert balanced_assemble(q, m, r) == b


# Hermitian split

@PROPS
@given(M44)
def test_hermitian_split_identity(A):
    H = A + A.adjoint()
    sp = hermitian_split(H)
    assert sp.product() == H and sp.s1 == sp.s2 == 4


# signals

@PROPS
@given(polys(8, real_only=True), st.integers(1, 4))
def test_vector_convert_round_trip(p, r):
    v = Signal(LaurentMatrix([[p]]))
    assert vector_convert_inverse(vector_convert(v, r)) == v
