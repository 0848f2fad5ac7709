"""Dense exact linear algebra over the Gaussian rationals (small systems only)."""

from __future__ import annotations

from typing import Sequence

from .exactnum import GaussRational

G0 = GaussRational(0)
G1 = GaussRational(1)


def _g(x) -> GaussRational:
    return x if isinstance(x, GaussRational) else GaussRational.coerce(x)


def rref(A: Sequence[Sequence]) -> tuple[list[list[GaussRational]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    R = [[_g(x) for x in row] for row in A]
    if not R:
        return R, []
    nr, nc = len(R), len(R[0])
    piv = []
    i = 0
    for j in range(nc):
        p = next((k for k in range(i, nr) if R[k][j]), None)
        if p is None:
            continue
        R[i], R[p] = R[p], R[i]
        inv = R[i][j].inverse()
        R[i] = [x * inv for x in R[i]]
        for k in range(nr):
            if k != i and R[k][j]:
                f = R[k][j]
                R[k] = [x - f * y for x, y in zip(R[k], R[i])]
        piv.append(j)
        i += 1
        if i == nr:
            break
    return R, piv


def rank(A) -> int:
    return len(rref(A)[1])


def nullspace(A: Sequence[Sequence], ncols: int | None = None) -> list[list[GaussRational]]:
    """Basis of ``{x : A x = 0}``."""
    if not A:
        n = ncols or 0
        return [[G1 if i == j else G0 for i in range(n)] for j in range(n)]
    R, piv = rref(A)
    nc = len(R[0])
    free = [j for j in range(nc) if j not in piv]
    basis = []
    for f in free:
        x = [G0] * nc
        x[f] = G1
        for i, p in enumerate(piv):
            x[p] = -R[i][f]
        basis.append(x)
    return basis


def solve(A: Sequence[Sequence], b: Sequence) -> list[GaussRational] | None:
    """One solution of ``A x = b`` with free variables set to zero, or ``None``."""
    nc = len(A[0]) if A else 0
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    if not aug:
        return [G0] * nc
    R, piv = rref(aug)
    if nc in piv:
        return None
    x = [G0] * nc
    for i, p in enumerate(piv):
        x[p] = R[i][nc]
    return x


def matmul(A, B):
    return [[sum((a * b for a, b in zip(row, col)), G0) for col in zip(*B)] for row in A]


def eye(n: int):
    return [[G1 if i == j else G0 for j in range(n)] for i in range(n)]


def det(A) -> GaussRational:
    R = [[_g(x) for x in row] for row in A]
    n = len(R)
    d = G1
    for j in range(n):
        p = next((k for k in range(j, n) if R[k][j]), None)
        if p is None:
            return G0
        if p != j:
            R[j], R[p] = R[p], R[j]
            d = -d
        d = d * R[j][j]
        inv = R[j][j].inverse()
        for k in range(j + 1, n):
            if R[k][j]:
                f = R[k][j] * inv
                R[k] = [x - f * y for x, y in zip(R[k], R[j])]
    return d
