"""Small exact linear algebra over Q and Z (matrices are lists of rows)."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    m = [[Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    if not m:
        return m, pivots
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows) -> int:
    return len(rref(rows)[1]) if rows else 0


def nullspace(rows, ncols: int) -> list[list[Fraction]]:
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    m, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -m[r][f]
        basis.append(v)
    return basis


def solve(rows, rhs) -> list[Fraction] | None:
    """Unique solution of rows * x = rhs, or None if inconsistent.

    Raises ValueError if the solution is not unique.
    """
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    m, pivots = rref(aug)
    if ncols in pivots:
        return None
    if len(pivots) < ncols:
        raise ValueError("system has more than one solution")
    x = [Fraction(0)] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = m[r][ncols]
    return x


def primitive(v) -> tuple[int, ...]:
    """Scale a rational vector to a primitive integer vector with the same direction."""
    v = [Fraction(x) for x in v]
    den = math.lcm(*(x.denominator for x in v)) if v else 1
    ints = [int(x * den) for x in v]
    g = math.gcd(*ints)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> list[tuple[int, ...]]:
    """A Z-basis of {x in Z^ncols : rows * x = 0}.

    Column reduction with a unimodular transform U: once rows * U is in column
    echelon form, the columns of U past the rank span the kernel lattice.
    """
    a = [list(map(int, r)) for r in rows]
    u = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def col_op(dst, src, f):  # col[dst] -= f * col[src]
        for r in a:
            r[dst] -= f * r[src]
        for r in u:
            r[dst] -= f * r[src]

    def swap(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in u:
            r[i], r[j] = r[j], r[i]

    col = 0
    for row in range(len(a)):
        if col >= ncols:
            break
        while True:
            nz = [j for j in range(col, ncols) if a[row][j] != 0]
            if not nz:
                break
            j = min(nz, key=lambda j: abs(a[row][j]))
            swap(col, j)
            done = True
            for k in range(col + 1, ncols):
                if a[row][k]:
                    col_op(k, col, a[row][k] // a[row][col])
                    if a[row][k]:
                        done = False
            if done:
                col += 1
                break
    return [tuple(u[i][j] for i in range(ncols)) for j in range(col, ncols)]
