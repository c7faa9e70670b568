"""Exact rational linear algebra: determinants, solves and Pfaffians."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Sequence

Matrix = Sequence[Sequence]


def _bareiss_int(rows: list[list[int]]) -> int:
    """Fraction-free elimination on an integer matrix (destroys `rows`)."""
    n = len(rows)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            for i in range(k + 1, n):
                if rows[i][k] != 0:
                    rows[k], rows[i] = rows[i], rows[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = rows[k][k]
        rk = rows[k]
        for i in range(k + 1, n):
            ri = rows[i]
            lead = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * pivot - lead * rk[j]) // prev
            ri[k] = 0
        prev = pivot
    return sign * rows[n - 1][n - 1]


def det(m: Matrix) -> Fraction:
    """Exact determinant of a square matrix of ints/Fractions."""
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("matrix is not square")
    scale = 1
    rows = []
    for r in m:
        r = [Fraction(x) for x in r]
        den = lcm(*(x.denominator for x in r)) if r else 1
        scale *= den
        rows.append([int(x * den) for x in r])
    return Fraction(_bareiss_int(rows), scale)


def solve(a: Matrix, b: Matrix) -> list[list[Fraction]]:
    """Solve a·X = b exactly by Gauss-Jordan elimination; `a` must be invertible."""
    n = len(a)
    width = len(b[0]) if b else 0
    aug = [[Fraction(x) for x in a[i]] + [Fraction(x) for x in b[i]] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            f = aug[r][col]
            if r != col and f != 0:
                pr = aug[col]
                aug[r] = [x - f * y for x, y in zip(aug[r], pr)]
    return [row[n:n + width] for row in aug]


def matmul(a: Matrix, b: Matrix) -> list[list]:
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))]
            for i in range(len(a))]


def pfaffian(m: Matrix) -> Fraction:
    """Pfaffian of an antisymmetric matrix by memoized first-row expansion."""
    n = len(m)
    if n % 2:
        return Fraction(0)
    a = [[Fraction(x) for x in r] for r in m]
    for i in range(n):
        for j in range(n):
            if a[i][j] != -a[j][i]:
                raise ValueError("matrix is not antisymmetric")

    @lru_cache(maxsize=None)
    def pf(idx: tuple[int, ...]) -> Fraction:
        if not idx:
            return Fraction(1)
        i, rest = idx[0], idx[1:]
        total = Fraction(0)
        for k, j in enumerate(rest):
            if a[i][j] != 0:
                sub = rest[:k] + rest[k + 1:]
                term = a[i][j] * pf(sub)
                total += term if k % 2 == 0 else -term
        return total

    return pf(tuple(range(n)))
