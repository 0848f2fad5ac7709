import json

import pytest

from qtframelet.bankio import fixture, save_bank, save_mask
from qtframelet.cli import JSON_MARKER, run
from conftest import haar
from qtframelet.laurent import LaurentMatrix
from qtframelet.qtconstruct import QtFilterBank


def invoke(capsys, *argv):
    code = run(list(argv))
    cap = capsys.readouterr()
    out = cap.out if code != 2 else cap.err
    human, _, block = out.partition(JSON_MARKER)
    return code, human, json.loads(block)


@pytest.fixture(scope="module")
def hermite_bank_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("cli") / "h2.json"
    assert run(["construct", "--mask", "fixture:hermite", "--order", "2", "--out", str(path)]) == 0
    return path


def test_construct_hermite(capsys, tmp_path):
    out = tmp_path / "bank.json"
    code, human, rec = invoke(capsys, "construct", "--mask", "fixture:hermite", "--order", "2", "--out", str(out))
    assert code == 0 and rec["ok"]
    assert rec["report"]["vm"] == rec["report"]["bvm"] == rec["report"]["bpo"] == 2
    assert out.exists() and "verdict: pass" in human


def test_construct_from_mask_file(capsys, tmp_path):
    mask = tmp_path / "mask.json"
    save_mask(mask, fixture("vec-bspline2"), 2)
    code, _, rec = invoke(capsys, "construct", "--mask", str(mask), "--out", str(tmp_path / "b.json"))
    assert code == 0 and rec["m"] == 2


def test_verify_haar(capsys, tmp_path):
    a, b = haar()
    path = tmp_path / "haar.json"
    save_bank(path, QtFilterBank(2, a, LaurentMatrix.identity(1), b, [1], m=1, n=1))
    code, _, rec = invoke(capsys, "verify", "--bank", str(path))
    assert code == 0 and rec["ok"]


def test_verify_constructed(capsys, hermite_bank_file):
    code, _, rec = invoke(capsys, "verify", "--bank", str(hermite_bank_file))
    assert code == 0 and rec["report"]["holds"]


def test_transform_round_trip(capsys, hermite_bank_file):
    code, human, rec = invoke(capsys, "transform", "--bank", str(hermite_bank_file), "--roundtrip", "--seed", "3")
    assert code == 0 and "exact: true" in human and rec["exact"] is True


def test_transform_is_deterministic(capsys, hermite_bank_file):
    args = ("transform", "--bank", str(hermite_bank_file), "--roundtrip", "--seed", "5", "--length", "9")
    first = invoke(capsys, *args)
    second = invoke(capsys, *args)
    assert first == second


def test_check_theta_identity_fails(capsys):
    code, _, rec = invoke(capsys, "check-theta", "--mask", "fixture:hermite", "--order", "2")
    assert code == 1 and rec["ok"] is False


def test_normal_form(capsys):
    code, _, rec = invoke(capsys, "normal-form", "--mask", "fixture:hermite", "--order", "4", "--smooth-order", "8")
    assert code == 0 and rec["ok"]
    code, _, rec = invoke(capsys, "normal-form", "--mask", "fixture:hermite", "--order", "4", "--smooth-order", "8",
                          "--orthogonal")
    assert code == 0 and rec["ok"]


def test_classify_theta_expr(capsys):
    code, _, rec = invoke(capsys, "classify-theta", "--expr", "(1+z)*(1+z^-1)/4", "--witness", "1")
    assert code == 0 and rec["kind"] == "Singular"


def test_fixtures_listing(capsys):
    code, human, rec = invoke(capsys, "fixtures")
    assert code == 0 and "hermite" in human


def test_cascade(capsys, tmp_path):
    out = tmp_path / "phi.csv"
    code, _, rec = invoke(capsys, "cascade", "--mask", "fixture:bspline(2,2)", "--levels", "4", "--out", str(out))
    assert code == 0 and out.read_text().startswith("x,y1")


def test_error_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, human, rec = invoke(capsys, "verify", "--bank", str(bad))
    assert code == 2 and rec["ok"] is False and rec["error"] == "ParseError"
    code, _, rec = invoke(capsys, "construct", "--mask", "fixture:nope")
    assert code == 2 and rec["error"] == "UnknownFixture"
