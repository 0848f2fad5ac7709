"""Files and fixtures: masks, filter banks and signals as JSON with exact scalars.

Every scalar is a string in the ``exactnum`` text form (``"3/4-1/2*i"``, and
``"1/2 sqrt(2)"`` for radical scales).  A Laurent matrix is stored entrywise as
``{"kmin": k, "coeffs": [...]}`` so supports are explicit.  Files written by ``save_*``
are canonical: loading and saving again reproduces them byte for byte.

Fixtures: ``bspline(m,M)``, ``hermite``, ``vec-bspline2``, ``vec-bspline(m,M,r)``,
``example61`` and ``example61(p)`` with ``p`` a Laurent polynomial in ``z``.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Any

from .exactnum import (
    GaussRational,
    ScalarParseError,
    format_gauss,
    format_quad,
    parse_gauss,
    parse_quad,
)
from .laurent import LaurentMatrix, LaurentPoly
from .qtconstruct import QtFilterBank
from .transform import Signal

__all__ = [
    "ParseError",
    "UnknownFixture",
    "FORMAT_VERSION",
    "fixture",
    "fixture_names",
    "vectorize_mask",
    "parse_laurent",
    "fixture_dilation",
    "matrix_to_json",
    "matrix_from_json",
    "dump_mask",
    "load_mask",
    "save_mask",
    "dump_bank",
    "load_bank",
    "save_bank",
    "dump_signal",
    "load_signal",
    "save_signal",
    "load_json_text",
]

FORMAT_VERSION = 1


class ParseError(ValueError):
    """Malformed file; ``where`` is a line number or a field path."""

    def __init__(self, message: str, where: str | int | None = None):
        self.where = where
        super().__init__(f"{message} (at {where})" if where is not None else message)


class UnknownFixture(KeyError):
    """No fixture with that name."""


# Laurent text

def parse_laurent(text: str) -> LaurentPoly:
    """Laurent polynomial from text such as ``"1/4*z^-1 + 7/2 + 1/4*z"``; ``i`` is the imaginary unit."""
    import sympy as sp

    z = sp.Symbol("z")
    try:
        expr = sp.sympify(text.replace("^", "**"), locals={"z": z, "i": sp.I, "I": sp.I})
    except (sp.SympifyError, SyntaxError, TypeError) as exc:
        raise ParseError(f"cannot parse Laurent polynomial {text!r}") from exc
    expr = sp.expand(expr)
    if expr.free_symbols - {z}:
        raise ParseError(f"unknown symbols in {text!r}")
    num, den = sp.fraction(sp.together(expr))
    try:
        dpoly, npoly = sp.Poly(den, z), sp.Poly(num, z)
    except sp.PolynomialError as exc:
        raise ParseError(f"{text!r} is not a Laurent polynomial") from exc
    if len(dpoly.terms()) != 1:
        raise ParseError(f"{text!r} is not a Laurent polynomial")
    (dk,), dc = dpoly.terms()[0]
    out = {}
    for (k,), c in npoly.terms():
        c = sp.nsimplify(c / dc)
        re_, im_ = sp.re(c), sp.im(c)
        if not (re_.is_Rational and im_.is_Rational):
            raise ParseError(f"coefficient {c} of {text!r} is not Gaussian rational")
        out[k - dk] = GaussRational(Fraction(int(re_.p), int(re_.q)), Fraction(int(im_.p), int(im_.q)))
    return LaurentPoly(out)


# fixtures

def _bspline(m: int, M: int) -> LaurentMatrix:
    box = LaurentPoly({k: 1 for k in range(M)})
    return LaurentMatrix([[box ** m * LaurentPoly.const(GaussRational(Fraction(1, M ** m)))]])


def vectorize_mask(A: LaurentPoly, r: int, M: int) -> LaurentMatrix:
    """Mask of ``[phi(r.), phi(r. - 1), ..., phi(r. - r + 1)]`` from a scalar mask: entry ``(j, l)`` is ``A^{[l - M j; r]}``."""
    return LaurentMatrix([[A.coset(l - M * j, r) for l in range(r)] for j in range(r)])


def _hermite() -> LaurentMatrix:
    F = Fraction
    L = LaurentPoly
    return LaurentMatrix([
        [L({-1: F(4, 16), 0: F(8, 16), 1: F(4, 16)}), L({-1: F(6, 16), 1: F(-6, 16)})],
        [L({-1: F(-1, 16), 1: F(1, 16)}), L({-1: F(-1, 16), 0: F(4, 16), 1: F(-1, 16)})],
    ])


_DEFAULT_P = LaurentPoly({-1: Fraction(1, 4), 0: Fraction(7, 2), 1: Fraction(1, 4)})
_CENTERED_B2 = LaurentPoly({-1: Fraction(1, 4), 0: Fraction(1, 2), 1: Fraction(1, 4)})


def _example61(p: LaurentPoly = _DEFAULT_P) -> LaurentMatrix:
    return LaurentMatrix([[_CENTERED_B2, 0], [0, p]])


_INT_ARGS = re.compile(r"^(?P<name>[a-z0-9-]+)(?:\((?P<args>.*)\))?$")


def fixture_names() -> list[str]:
    return ["bspline(m,M)", "hermite", "vec-bspline2", "vec-bspline(m,M,r)", "example61", "example61(p)"]


def fixture(name: str) -> LaurentMatrix:
    """Mask by name; raises ``UnknownFixture``."""
    m = _INT_ARGS.match(name.strip())
    if not m:
        raise UnknownFixture(name)
    base, args = m.group("name"), m.group("args")
    try:
        if base == "hermite" and args is None:
            return _hermite()
        if base == "vec-bspline2" and args is None:
            return vectorize_mask(_CENTERED_B2, 2, 2)
        if base == "example61":
            return _example61(parse_laurent(args) if args else _DEFAULT_P)
        if base == "bspline" and args:
            mm, M = (int(x) for x in args.split(","))
            if mm < 1 or M < 2:
                raise UnknownFixture(name)
            return _bspline(mm, M)
        if base == "vec-bspline" and args:
            mm, M, r = (int(x) for x in args.split(","))
            if mm < 1 or M < 2 or r < 1:
                raise UnknownFixture(name)
            return vectorize_mask(_bspline(mm, M)[0, 0], r, M)
    except (ValueError, ParseError) as exc:
        raise UnknownFixture(name) from exc
    raise UnknownFixture(name)


def fixture_dilation(name: str) -> int:
    """Dilation implied by a fixture name (2 unless given)."""
    m = _INT_ARGS.match(name.strip())
    if m and m.group("name") in ("bspline", "vec-bspline") and m.group("args"):
        return int(m.group("args").split(",")[1])
    return 2


# JSON encoding

def _poly_to_json(p: LaurentPoly) -> dict:
    sup = p.support()
    if sup is None:
        return {"kmin": 0, "coeffs": []}
    return {"kmin": sup[0], "coeffs": [format_gauss(p.coeff(k)) for k in range(sup[0], sup[1] + 1)]}


def _poly_from_json(d: Any, where: str) -> LaurentPoly:
    if not isinstance(d, dict) or "kmin" not in d or "coeffs" not in d:
        raise ParseError("polynomial needs 'kmin' and 'coeffs'", where)
    if not isinstance(d["kmin"], int) or not isinstance(d["coeffs"], list):
        raise ParseError("bad polynomial fields", where)
    out = {}
    for j, c in enumerate(d["coeffs"]):
        try:
            out[d["kmin"] + j] = parse_gauss(str(c))
        except ScalarParseError as exc:
            raise ParseError(str(exc), f"{where}.coeffs[{j}]") from exc
    return LaurentPoly({k: v for k, v in out.items() if v})


def matrix_to_json(A: LaurentMatrix) -> dict:
    return {"rows": A.rows, "cols": A.cols,
            "entries": [[_poly_to_json(x) for x in row] for row in A.entries()]}


def matrix_from_json(d: Any, where: str = "matrix") -> LaurentMatrix:
    if not isinstance(d, dict) or "entries" not in d:
        raise ParseError("matrix needs 'entries'", where)
    ent = d["entries"]
    if not isinstance(ent, list) or not ent or not all(isinstance(r, list) for r in ent):
        raise ParseError("entries must be a nonempty list of rows", where)
    rows = [[_poly_from_json(x, f"{where}.entries[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(ent)]
    if d.get("rows", len(rows)) != len(rows) or any(len(r) != d.get("cols", len(rows[0])) for r in rows):
        raise ParseError("declared shape does not match entries", where)
    return LaurentMatrix(rows)


def _dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2) + "\n"


def load_json_text(text: str) -> dict:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno) from exc
    if not isinstance(obj, dict):
        raise ParseError("top level must be an object", 1)
    if obj.get("format_version") != FORMAT_VERSION:
        raise ParseError(f"unsupported format_version {obj.get('format_version')!r}", "format_version")
    return obj


def _read(path) -> dict:
    return load_json_text(Path(path).read_text())


def _frac_field(obj: dict, key: str, default: str = "1") -> Fraction:
    try:
        return Fraction(str(obj.get(key, default)))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {obj.get(key)!r}", key) from exc


def _int_field(obj: dict, key: str) -> int:
    v = obj.get(key)
    if not isinstance(v, int):
        raise ParseError(f"field '{key}' must be an integer", key)
    return v


# masks

def dump_mask(a: LaurentMatrix, M: int, notes: str = "") -> str:
    obj = {"format_version": FORMAT_VERSION, "kind": "mask", "M": M, "r": a.rows,
           "mask": matrix_to_json(a), "notes": notes}
    return _dumps(obj)


def load_mask(path) -> tuple[LaurentMatrix, int]:
    obj = _read(path)
    if obj.get("kind") != "mask":
        raise ParseError("not a mask file", "kind")
    return matrix_from_json(obj.get("mask"), "mask"), _int_field(obj, "M")


def save_mask(path, a: LaurentMatrix, M: int, notes: str = "") -> None:
    Path(path).write_text(dump_mask(a, M, notes))


# banks

def dump_bank(bank: QtFilterBank, notes: str = "") -> str:
    obj = {
        "format_version": FORMAT_VERSION,
        "kind": "bank",
        "M": bank.M,
        "r": bank.r,
        "s": bank.s,
        "m": bank.m,
        "n": bank.n,
        "scale2": str(bank.theta_scale2),
        "a": matrix_to_json(bank.a),
        "theta": matrix_to_json(bank.theta_poly),
        "b": matrix_to_json(bank.b),
        "eps": list(bank.eps),
        "notes": notes,
    }
    return _dumps(obj)


def bank_from_obj(obj: dict) -> QtFilterBank:
    if obj.get("kind") != "bank":
        raise ParseError("not a bank file", "kind")
    M = _int_field(obj, "M")
    a = matrix_from_json(obj.get("a"), "a")
    theta = matrix_from_json(obj.get("theta"), "theta")
    b = matrix_from_json(obj.get("b"), "b")
    eps = obj.get("eps")
    if not isinstance(eps, list) or any(e not in (1, -1) for e in eps) or len(eps) != b.rows:
        raise ParseError("eps must list one sign per row of b", "eps")
    s2 = _frac_field(obj, "scale2")
    if s2 <= 0:
        raise ParseError("scale2 must be positive", "scale2")
    m = obj.get("m", 0)
    n = obj.get("n", 0)
    bank = QtFilterBank(M, a, theta, b, list(eps), s2, int(m), int(n))
    _attach_jets(bank)
    return bank


def _attach_jets(bank: QtFilterBank) -> None:
    from .moments import SpectralConditionViolated, matching_pair, refinable_jets

    order = max(bank.m + 1, bank.n, 1)
    try:
        if bank.m >= 1:
            bank.v_jet, bank.phi_jet = matching_pair(bank.a, bank.M, bank.m, order)
        else:
            bank.phi_jet = refinable_jets(bank.a, bank.M, order, strict=False)
    except (SpectralConditionViolated, ZeroDivisionError, ValueError):
        bank.v_jet = bank.phi_jet = None


def load_bank(path) -> QtFilterBank:
    return bank_from_obj(_read(path))


def save_bank(path, bank: QtFilterBank, notes: str = "") -> None:
    Path(path).write_text(dump_bank(bank, notes))


# signals

def dump_signal(v: Signal) -> str:
    sup = v.support()
    lo, hi = sup if sup is not None else (0, -1)
    rows = [[format_gauss(v.data[0, j].coeff(k)) for j in range(v.r)] for k in range(lo, hi + 1)]
    obj = {"format_version": FORMAT_VERSION, "kind": "signal", "r": v.r,
           "scale": format_quad(v.scale), "kmin": lo, "values": rows}
    return _dumps(obj)


def signal_from_obj(obj: dict) -> Signal:
    if obj.get("kind") != "signal":
        raise ParseError("not a signal file", "kind")
    r = _int_field(obj, "r")
    lo = _int_field(obj, "kmin")
    vals = obj.get("values")
    if not isinstance(vals, list):
        raise ParseError("values must be a list of rows", "values")
    table = {}
    for i, row in enumerate(vals):
        if not isinstance(row, list) or len(row) != r:
            raise ParseError(f"row must have {r} entries", f"values[{i}]")
        try:
            table[lo + i] = [parse_gauss(str(x)) for x in row]
        except ScalarParseError as exc:
            raise ParseError(str(exc), f"values[{i}]") from exc
    try:
        scale = parse_quad(str(obj.get("scale", "1")))
    except (ScalarParseError, ValueError) as exc:
        raise ParseError(str(exc), "scale") from exc
    if not table:
        return Signal.zeros(r)
    return Signal.from_dict(table, r, scale)


def load_signal(path) -> Signal:
    return signal_from_obj(_read(path))


def save_signal(path, v: Signal) -> None:
    Path(path).write_text(dump_signal(v))
