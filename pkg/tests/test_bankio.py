import json
import random
from fractions import Fraction

import pytest

from conftest import ONE, Z, lp, random_signal
from qtframelet.bankio import (
    ParseError,
    UnknownFixture,
    dump_bank,
    dump_mask,
    dump_signal,
    fixture,
    fixture_dilation,
    fixture_names,
    load_bank,
    load_json_text,
    load_mask,
    load_signal,
    matrix_from_json,
    matrix_to_json,
    parse_laurent,
    save_bank,
    save_mask,
    save_signal,
    vectorize_mask,
)
from qtframelet.exactnum import GaussRational, QuadScalar
from qtframelet.laurent import LaurentMatrix
from qtframelet.moments import sum_rules
from qtframelet.qtconstruct import verify_bank
from qtframelet.transform import Signal

F = Fraction


def test_bspline_fixture():
    assert fixture("bspline(2,2)") == LaurentMatrix([[lp({0: F(1, 4), 1: F(1, 2), 2: F(1, 4)})]])
    assert fixture("bspline(1,3)") == LaurentMatrix([[lp({0: F(1, 3), 1: F(1, 3), 2: F(1, 3)})]])
    assert fixture_dilation("bspline(2,3)") == 3


def test_hermite_fixture():
    a = fixture("hermite")
    assert a[0, 0] == lp({-1: F(1, 4), 0: F(1, 2), 1: F(1, 4)})
    assert a[0, 1] == lp({-1: F(3, 8), 1: F(-3, 8)})
    assert a[1, 0] == lp({-1: F(-1, 16), 1: F(1, 16)})
    assert a[1, 1] == lp({-1: F(-1, 16), 0: F(1, 4), 1: F(-1, 16)})


def test_vectorized_bspline_fixture():
    a = fixture("vec-bspline2")
    expected = LaurentMatrix([[lp({0: F(1, 2)}), lp({-1: F(1, 4), 0: F(1, 4)})],
                              [lp({1: F(1, 2)}), lp({0: F(1, 4), 1: F(1, 4)})]])
    assert a == expected
    assert vectorize_mask(lp({-1: F(1, 4), 0: F(1, 2), 1: F(1, 4)}), 2, 2) == expected


def test_example61_fixture():
    a = fixture("example61")
    assert a[1, 1] == lp({-1: F(1, 4), 0: F(7, 2), 1: F(1, 4)})
    assert a[0, 1].is_zero() and a[1, 0].is_zero()
    b = fixture("example61(1/2+1/2*z)")
    assert b[1, 1] == (ONE + Z) * F(1, 2)


def test_unknown_fixture():
    with pytest.raises(UnknownFixture):
        fixture("daubechies")
    assert "hermite" in " ".join(fixture_names())


def test_parse_laurent():
    assert parse_laurent("1/4*z^-1 + 1/2 + 1/4*z") == lp({-1: F(1, 4), 0: F(1, 2), 1: F(1, 4)})
    assert parse_laurent("(1+z)^2/4") == (ONE + Z) ** 2 * F(1, 4)
    assert parse_laurent("3/4-1/2*i") == lp({0: GaussRational(F(3, 4), F(-1, 2))})
    for bad in ("z^(1/2)", "sin(z)", "1 +"):
        with pytest.raises(ParseError):
            parse_laurent(bad)


def test_matrix_json_round_trip():
    A = LaurentMatrix([[lp({-2: 3, 1: GaussRational(F(3, 4), F(-1, 2))}), 0]])
    assert matrix_from_json(json.loads(json.dumps(matrix_to_json(A)))) == A


@pytest.mark.parametrize("name", ["hermite", "vec-bspline2", "example61", "bspline(3,2)", "vec-bspline(3,2,2)"])
def test_mask_file_round_trip(tmp_path, name):
    a = fixture(name)
    path = tmp_path / "mask.json"
    save_mask(path, a, 2, notes=name)
    b, M = load_mask(path)
    assert b == a and M == 2
    assert dump_mask(b, M, notes=name) == path.read_text()


def test_hermite_file_keeps_sum_rules(tmp_path):
    path = tmp_path / "h.json"
    save_mask(path, fixture("hermite"), 2)
    a, M = load_mask(path)
    assert sum_rules(a, M).order == 4


@pytest.mark.parametrize("label", ["hermite-m2", "vec-bspline2-m2", "example61-m2", "vec-bspline3"])
def test_bank_file_round_trip(tmp_path, banks, label):
    bank = banks[label]
    path = tmp_path / "bank.json"
    save_bank(path, bank)
    back = load_bank(path)
    assert back.a == bank.a and back.b == bank.b and back.theta_poly == bank.theta_poly
    assert back.eps == bank.eps and back.theta_scale2 == bank.theta_scale2 and back.m == bank.m
    assert dump_bank(back) == path.read_text()
    assert verify_bank(back).holds


def test_signal_round_trip(tmp_path):
    rng = random.Random(0)
    v = random_signal(2, 9, rng, start=-4).scaled(QuadScalar.sqrt(F(1, 2)))
    v = Signal(v.data * lp({0: GaussRational(1, 1)}), v.scale)
    path = tmp_path / "sig.json"
    save_signal(path, v)
    w = load_signal(path)
    assert w == v and w.scale == v.scale
    assert dump_signal(w) == path.read_text()


def test_parse_error_locations(tmp_path):
    with pytest.raises(ParseError) as info:
        load_json_text('{"format_version": 1,\n "kind": }')
    assert info.value.where == 2
    with pytest.raises(ParseError) as info:
        load_json_text('{"format_version": 7}')
    assert info.value.where == "format_version"
    bad = json.loads(dump_mask(fixture("hermite"), 2))
    bad["mask"]["entries"][0][1]["coeffs"][0] = "three"
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    with pytest.raises(ParseError) as info:
        load_mask(path)
    assert "coeffs[0]" in str(info.value.where)
