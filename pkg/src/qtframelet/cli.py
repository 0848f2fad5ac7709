"""Command-line front end.

Every subcommand prints a short human-readable report followed by a JSON block
(introduced by a ``--- json ---`` line) and exits 0 exactly when its checks pass.
Failures from bad input exit 2 with a JSON failure record.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import bankio
from .exactnum import GaussRational, format_quad
from .laurent import LaurentMatrix, LaurentPoly
from .moments import matching_pair, sum_rules
from .normalform import moment_condition_holds, normal_form_canonical, orthogonal_normal_form
from .qtconstruct import QtFilterBank, check_theta, construct_quasitight, verify_bank
from .transform import (
    Signal,
    TransformBank,
    analyze,
    annihilator_witness,
    cascade_csv,
    cascade_render,
    classify_theta_conv,
    synthesize,
    vector_convert,
)

JSON_MARKER = "--- json ---"


class CliError(Exception):
    pass


# helpers

def _emit(lines: list[str], record: dict, out=None) -> None:
    out = out or sys.stdout
    for ln in lines:
        print(ln, file=out)
    print(JSON_MARKER, file=out)
    print(json.dumps(record, indent=2, sort_keys=True, default=str), file=out)


def _load_mask(spec: str, dilation: int | None) -> tuple[LaurentMatrix, int, str]:
    if spec.startswith("fixture:"):
        name = spec[len("fixture:"):]
        a = bankio.fixture(name)
        return a, dilation or bankio.fixture_dilation(name), name
    path = Path(spec)
    if path.name.endswith(".bank.json"):
        bank = bankio.load_bank(path)
        return bank.a, dilation or bank.M, str(path)
    a, M = bankio.load_mask(path)
    return a, dilation or M, str(path)


def _matrix_text(A: LaurentMatrix) -> list[str]:
    return [f"  [{i},{j}] {A[i, j]}" for i in range(A.rows) for j in range(A.cols)]


def _oep_record(rep) -> dict:
    return {"holds": rep.holds,
            "checks": [{"name": c.name, "holds": c.holds, "route": c.route, "witness": c.witness} for c in rep.checks],
            "items": rep.items}


def _bank_record(rep) -> dict:
    return {
        "holds": rep.holds,
        "quasi_tight": _oep_record(rep.quasi_tight),
        "oep": _oep_record(rep.oep),
        "vm": rep.vm,
        "bvm": rep.bvm,
        "bpo": rep.bpo,
        "sum_rules": rep.sum_rules,
        "theta_strongly_invertible": rep.theta_strongly_invertible,
        "round_trip": rep.round_trip,
    }


def _bank_lines(rep) -> list[str]:
    return [
        f"quasi-tight identity: {'pass' if rep.quasi_tight.holds else 'FAIL'}",
        f"OEP identity: {'pass' if rep.oep.holds else 'FAIL'}",
        f"theta strongly invertible: {rep.theta_strongly_invertible}",
        f"orders (capped at the check limit): sum rules {rep.sum_rules}  vm {rep.vm}  bvm {rep.bvm}  bpo {rep.bpo}",
    ]


def _theta_record(tr) -> dict:
    i1, i2 = tr.item_i, tr.item_ii
    return {
        "holds": tr.holds,
        "item_i": {"holds": i1.holds, "proportional": i1.proportional,
                   "c_abs2": None if i1.c_abs2 is None else str(i1.c_abs2),
                   "d_abs2": None if i1.d_abs2 is None else str(i1.d_abs2), "detail": i1.detail},
        "item_ii": {"holds": i2.holds, "failing_entry": i2.failing_entry},
    }


def _theta_lines(tr) -> list[str]:
    i1 = tr.item_i
    return [
        f"theta item (i): {'pass' if i1.holds else 'FAIL'} (|c|^2={i1.c_abs2}, |d|^2={i1.d_abs2}"
        + (f"; {i1.detail}" if i1.detail else "") + ")",
        f"theta item (ii): {'pass' if tr.item_ii.holds else 'FAIL'}",
    ]


def _bank_theta(bank: QtFilterBank):
    if bank.m < 1 or bank.r < 2:
        return None
    return check_theta(bank.theta_poly, bank.a, bank.M, bank.m, bank.v_jet, bank.phi_jet, bank.theta_scale2)


def random_signal(r: int, length: int, rng: random.Random, start: int = 0) -> Signal:
    """Random Gaussian-rational signal with small numerators and denominators."""
    table = {}
    for k in range(start, start + length):
        table[k] = [GaussRational(Fraction(rng.randint(-9, 9), rng.randint(1, 6)),
                                  Fraction(rng.randint(-9, 9), rng.randint(1, 6)) if rng.random() < 0.3 else 0)
                    for _ in range(r)]
    return Signal.from_dict(table, r)


# subcommands

def cmd_construct(args) -> int:
    a, M, src = _load_mask(args.mask, args.dilation)
    bank = construct_quasitight(a, M, args.order, args.smooth_order)
    rep = verify_bank(bank, args.cap)
    bankio.save_bank(args.out, bank, notes=f"constructed from {src} with M={M}, m={bank.m}, n={bank.n}")
    tr = _bank_theta(bank)
    ok = rep.holds and (tr is None or tr.holds)
    lines = [f"constructed bank from {src}: M={M} r={bank.r} s={bank.s} m={bank.m} n={bank.n}",
             f"written to {args.out}"] + _bank_lines(rep) + (_theta_lines(tr) if tr else [])
    lines.append(f"verdict: {'pass' if ok else 'FAIL'}")
    rec = {"command": "construct", "ok": ok, "out": str(args.out), "M": M, "r": bank.r, "s": bank.s,
           "m": bank.m, "n": bank.n, "eps": bank.eps, "report": _bank_record(rep),
           "theta": _theta_record(tr) if tr else None}
    _emit(lines, rec)
    return 0 if ok else 1


def cmd_verify(args) -> int:
    bank = bankio.load_bank(args.bank)
    rep = verify_bank(bank, args.cap)
    tr = _bank_theta(bank)
    ok = rep.holds and (tr is None or tr.holds)
    lines = [f"bank {args.bank}: M={bank.M} r={bank.r} s={bank.s} m={bank.m}"] + _bank_lines(rep)
    if tr:
        lines += _theta_lines(tr)
    lines.append(f"verdict: {'pass' if ok else 'FAIL'}")
    _emit(lines, {"command": "verify", "ok": ok, "report": _bank_record(rep),
                  "theta": _theta_record(tr) if tr else None})
    return 0 if ok else 1


def cmd_check_theta(args) -> int:
    if args.bank:
        bank = bankio.load_bank(args.bank)
        a, M, m, theta, s2 = bank.a, bank.M, args.order or bank.m, bank.theta_poly, bank.theta_scale2
    else:
        if not args.mask:
            raise CliError("need --bank or --mask")
        a, M, _ = _load_mask(args.mask, args.dilation)
        m = args.order if args.order is not None else sum_rules(a, M).order
        theta = LaurentMatrix.identity(a.rows) if args.theta is None else bankio.load_mask(args.theta)[0]
        s2 = Fraction(args.scale2)
    tr = check_theta(theta, a, M, m, theta_scale2=s2, balance=not args.no_balance)
    lines = [f"theta check at m={m}"] + _theta_lines(tr) + [f"verdict: {'pass' if tr.holds else 'FAIL'}"]
    _emit(lines, {"command": "check-theta", "ok": tr.holds, "m": m, "theta": _theta_record(tr)})
    return 0 if tr.holds else 1


def cmd_normal_form(args) -> int:
    a, M, src = _load_mask(args.mask, args.dilation)
    m = args.order if args.order is not None else sum_rules(a, M).order
    n = args.smooth_order if args.smooth_order is not None else m
    v, phi = matching_pair(a, M, m, max(m, n))
    if args.orthogonal:
        if moment_condition_holds(v, phi, m):
            res = orthogonal_normal_form(a, M, m, n, v, phi)
        else:
            # the canonical form has v = e1, phi = e1, which meets the moment condition
            can = normal_form_canonical(a, M, m, n, v, phi)
            res = orthogonal_normal_form(can.new_mask, M, m, n, can.new_matching_jet, can.new_phi_jet)
            res.U, res.U_inv = res.U * can.U, can.U_inv * res.U_inv
    else:
        res = normal_form_canonical(a, M, m, n, v, phi)
    ok = all(bool(x) for x in res.checks.values())
    lines = [f"normal form of {src}: M={M} m={m} n={n}{' (orthogonal)' if args.orthogonal else ''}", "U:"]
    lines += _matrix_text(res.U) + ["transformed mask:"] + _matrix_text(res.new_mask)
    lines += [f"check {k}: {'pass' if v else 'FAIL'}" for k, v in res.checks.items()]
    lines.append(f"verdict: {'pass' if ok else 'FAIL'}")
    rec = {"command": "normal-form", "ok": ok, "m": m, "n": n,
           "U": bankio.matrix_to_json(res.U), "mask": bankio.matrix_to_json(res.new_mask),
           "checks": {k: bool(v) for k, v in res.checks.items()}}
    _emit(lines, rec)
    return 0 if ok else 1


def cmd_transform(args) -> int:
    bank = bankio.load_bank(args.bank)
    tb = TransformBank.from_qt(bank, derived=not args.raw)
    if args.signal:
        v = bankio.load_signal(args.signal)
    else:
        v = random_signal(bank.r, args.length, random.Random(args.seed))
    if args.save_signal:
        bankio.save_signal(args.save_signal, v)
    if v.r == 1 and bank.r > 1:
        v = vector_convert(v, bank.r)
    if v.r != bank.r:
        raise CliError(f"signal has {v.r} components but the bank has multiplicity {bank.r}")
    pyr = analyze(v, tb, args.levels)
    lines = [f"{args.levels}-level analysis with {'raw OEP' if args.raw else 'derived quasi-tight'} filters"]
    rec = {"command": "transform", "levels": args.levels,
           "details": [{"support": d.support(), "nonzero": not d.is_zero()} for d in pyr.details],
           "approx_support": pyr.approx.support()}
    for j, d in enumerate(pyr.details, 1):
        lines.append(f"level {j} detail support: {d.support()}")
    ok = True
    if args.roundtrip:
        w = synthesize(pyr, tb)
        ok = w == v
        lines.append(f"exact: {'true' if ok else 'false'}")
        rec["exact"] = ok
    if args.out:
        Path(args.out).write_text(json.dumps(
            {"format_version": bankio.FORMAT_VERSION, "kind": "pyramid",
             "details": [json.loads(bankio.dump_signal(d)) for d in pyr.details],
             "approx": json.loads(bankio.dump_signal(pyr.approx))}, indent=2) + "\n")
    rec["ok"] = ok
    _emit(lines, rec)
    return 0 if ok else 1


def cmd_classify_theta(args) -> int:
    if args.bank:
        bank = bankio.load_bank(args.bank)
        Theta = bank.Theta_poly
    elif args.theta:
        Theta = bankio.load_mask(args.theta)[0]
    elif args.expr:
        Theta = LaurentMatrix([[bankio.parse_laurent(args.expr)]])
    else:
        raise CliError("need --bank, --theta or --expr")
    tc = classify_theta_conv(Theta)
    lines = [f"det Theta = {tc.det}", f"class: {tc.kind} ({tc.method})"]
    rec = {"command": "classify-theta", "kind": tc.kind, "det": str(tc.det), "method": tc.method,
           "unit_roots": tc.unit_roots, "singular_points_over_pi": [str(x) for x in tc.singular_points]}
    ok = True
    if args.witness is not None:
        sig, interior = annihilator_witness(Theta, Fraction(args.witness))
        lines.append(f"annihilator witness at xi0={args.witness}*pi: interior {interior} annihilated")
        rec["witness"] = {"interior": interior,
                          "values": [[format_quad(x) for x in sig[k]] for k in range(*_span(sig))]}
    if args.expect:
        ok = tc.kind == args.expect
        lines.append(f"expected {args.expect}: {'pass' if ok else 'FAIL'}")
    rec["ok"] = ok
    _emit(lines, rec)
    return 0 if ok else 1


def _span(sig: Signal) -> tuple[int, int]:
    sup = sig.support()
    return (0, 0) if sup is None else (sup[0], sup[1] + 1)


def cmd_cascade(args) -> int:
    if args.bank:
        src = bankio.load_bank(args.bank)
        xs, ys = cascade_render(src, args.component, args.levels)
    else:
        a, M, _ = _load_mask(args.mask, args.dilation)
        xs, ys = cascade_render(a, args.component, args.levels, M=M)
    text = cascade_csv(xs, ys)
    if args.out:
        Path(args.out).write_text(text)
        _emit([f"wrote {len(xs)} samples to {args.out}"],
              {"command": "cascade", "ok": True, "samples": len(xs), "out": args.out})
    else:
        sys.stdout.write(text)
    return 0


def cmd_fixtures(args) -> int:
    if args.name:
        a = bankio.fixture(args.name)
        M = args.dilation or bankio.fixture_dilation(args.name)
        if args.out:
            bankio.save_mask(args.out, a, M, notes=f"fixture {args.name}")
        sr = sum_rules(a, M).order
        _emit([f"{args.name}: M={M} r={a.rows} sum rules={sr}"] + _matrix_text(a),
              {"command": "fixtures", "ok": True, "name": args.name, "M": M, "r": a.rows, "sum_rules": sr,
               "mask": bankio.matrix_to_json(a)})
        return 0
    names = bankio.fixture_names()
    _emit(names, {"command": "fixtures", "ok": True, "names": names})
    return 0


# parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qtframelet", description="Quasi-tight multiframelet construction and verification.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a quasi-tight bank from a mask")
    c.add_argument("--mask", required=True, help="mask file or fixture:NAME")
    c.add_argument("--dilation", type=int)
    c.add_argument("--order", type=int, help="vanishing moments m (default: sum-rule order)")
    c.add_argument("--smooth-order", type=int, help="refinable jet order n (default 2m)")
    c.add_argument("--cap", type=int)
    c.add_argument("--out", default="bank.json")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="exact checks on a bank file")
    v.add_argument("--bank", required=True)
    v.add_argument("--cap", type=int)
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("check-theta", help="characterization of theta")
    t.add_argument("--bank")
    t.add_argument("--mask")
    t.add_argument("--theta", help="theta as a mask-format file (default identity)")
    t.add_argument("--scale2", default="1")
    t.add_argument("--dilation", type=int)
    t.add_argument("--order", type=int)
    t.add_argument("--no-balance", action="store_true")
    t.set_defaults(func=cmd_check_theta)

    n = sub.add_parser("normal-form", help="normal form of a mask")
    n.add_argument("--mask", required=True)
    n.add_argument("--dilation", type=int)
    n.add_argument("--order", type=int)
    n.add_argument("--smooth-order", type=int)
    n.add_argument("--orthogonal", action="store_true")
    n.set_defaults(func=cmd_normal_form)

    x = sub.add_parser("transform", help="multi-level analysis and synthesis")
    x.add_argument("--bank", required=True)
    x.add_argument("--signal", help="signal file (default: random signal from --seed)")
    x.add_argument("--levels", type=int, default=3)
    x.add_argument("--roundtrip", action="store_true")
    x.add_argument("--raw", action="store_true", help="use (a, b, Theta) instead of the derived bank")
    x.add_argument("--seed", type=int, default=0)
    x.add_argument("--length", type=int, default=32)
    x.add_argument("--save-signal")
    x.add_argument("--out", help="write the coefficient pyramid as JSON")
    x.set_defaults(func=cmd_transform)

    k = sub.add_parser("classify-theta", help="classify convolution with Theta")
    k.add_argument("--bank")
    k.add_argument("--theta")
    k.add_argument("--expr", help="scalar Theta as a Laurent polynomial in z")
    k.add_argument("--witness", help="xi0/pi for an annihilator witness")
    k.add_argument("--expect", choices=["StronglyInvertible", "NonvanishingDet", "Singular"])
    k.set_defaults(func=cmd_classify_theta)

    r = sub.add_parser("cascade", help="sample phi or psi_i as CSV")
    r.add_argument("--bank")
    r.add_argument("--mask")
    r.add_argument("--dilation", type=int)
    r.add_argument("--component", default="phi")
    r.add_argument("--levels", type=int, default=8)
    r.add_argument("--out")
    r.set_defaults(func=cmd_cascade)

    f = sub.add_parser("fixtures", help="list fixtures or show one")
    f.add_argument("name", nargs="?")
    f.add_argument("--dilation", type=int)
    f.add_argument("--out")
    f.set_defaults(func=cmd_fixtures)
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (bankio.ParseError, bankio.UnknownFixture, CliError, OSError, ValueError, ArithmeticError) as exc:
        _emit([f"error: {exc}"], {"command": args.command, "ok": False,
                                   "error": type(exc).__name__, "message": str(exc)}, sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
