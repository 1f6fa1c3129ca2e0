"""Small exact linear algebra helpers shared across modules.

Everything here works on lists-of-lists over an exact ring (Fraction, or any
type with +, -, * and a truthy zero test).  No pivoting strategy games: these
matrices are small and exact, so plain Gaussian elimination is enough.
"""
from __future__ import annotations

from fractions import Fraction


def identity(n: int, one=Fraction(1), zero=Fraction(0)):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def mat_mul(a, b, zero=Fraction(0)):
    n, k = len(a), len(b)
    m = len(b[0]) if b else 0
    out = [[zero] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            v = ai[t]
            if not v:
                continue
            bt = b[t]
            for j in range(m):
                w = bt[j]
                if w:
                    oi[j] = oi[j] + v * w
    return out


def mat_vec(a, v, zero=Fraction(0)):
    out = []
    for row in a:
        acc = zero
        for x, y in zip(row, v):
            if x and y:
                acc = acc + x * y
        out.append(acc)
    return out


def transpose(a):
    return [list(col) for col in zip(*a)] if a else []


def exact_rank(rows) -> int:
    """Rank over the rationals by fraction-exact row reduction.

    Accepts any iterable of rows of Fractions/ints; the input is copied.
    """
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    col = 0
    nrows = len(m)
    while rank < nrows and col < ncols:
        pivot = None
        for r in range(rank, nrows):
            if m[r][col]:
                pivot = r
                break
        if pivot is None:
            col += 1
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        pv = m[rank][col]
        prow = m[rank]
        for r in range(rank + 1, nrows):
            f = m[r][col]
            if f:
                ratio = f / pv
                row = m[r]
                for c in range(col, ncols):
                    row[c] -= ratio * prow[c]
        rank += 1
        col += 1
    return rank


def mat_inv(a):
    """Inverse of a square Fraction matrix; raises ValueError when singular."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(1 if i == j else 0) for j in range(n)]
         for i, row in enumerate(a)]
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if m[r][col]:
                pivot = r
                break
        if pivot is None:
            raise ValueError("matrix is singular")
        m[col], m[pivot] = m[pivot], m[col]
        pv = m[col][col]
        m[col] = [x / pv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]
