"""Shared fixtures: constructed banks are built once per session."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from qtframelet.bankio import fixture
from qtframelet.exactnum import GaussRational
from qtframelet.laurent import LaurentMatrix, LaurentPoly
from qtframelet.qtconstruct import construct_quasitight
from qtframelet.transform import Signal

# (label, fixture name, dilation, m); m = None means the full sum-rule order
BANK_SPECS = [
    ("hermite-m2", "hermite", 2, 2),
    ("hermite-m4", "hermite", 2, 4),
    ("vec-bspline2-m2", "vec-bspline2", 2, 2),
    ("example61-m2", "example61", 2, 2),
    ("vec-bspline3", "vec-bspline(3,2,2)", 2, None),
]

_CACHE: dict = {}


def build_bank(label: str):
    if label not in _CACHE:
        _, name, M, m = next(s for s in BANK_SPECS if s[0] == label)
        _CACHE[label] = construct_quasitight(fixture(name), M, m)
    return _CACHE[label]


@pytest.fixture(scope="session")
def banks():
    return {label: build_bank(label) for label, *_ in BANK_SPECS}


Z = LaurentPoly.monomial(1)
ONE = LaurentPoly.const(1)


def lp(d: dict) -> LaurentPoly:
    return LaurentPoly({k: Fraction(v) if not isinstance(v, GaussRational) else v for k, v in d.items()})


def haar() -> tuple[LaurentMatrix, LaurentMatrix]:
    return (LaurentMatrix([[lp({0: Fraction(1, 2), 1: Fraction(1, 2)})]]),
            LaurentMatrix([[lp({0: Fraction(1, 2), 1: Fraction(-1, 2)})]]))


def random_poly(rng: random.Random, lo: int = -3, hi: int = 3, complex_: bool = True) -> LaurentPoly:
    k0 = rng.randint(lo, hi)
    n = rng.randint(0, 4)
    out = {}
    for k in range(k0, k0 + n):
        re = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        im = Fraction(rng.randint(-5, 5), rng.randint(1, 4)) if complex_ and rng.random() < 0.4 else 0
        out[k] = GaussRational(re, im)
    return LaurentPoly(out)


def random_signal(r: int, length: int, rng: random.Random, start: int = 0) -> Signal:
    table = {k: [GaussRational(Fraction(rng.randint(-9, 9), rng.randint(1, 5))) for _ in range(r)]
             for k in range(start, start + length)}
    return Signal.from_dict(table, r)


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
