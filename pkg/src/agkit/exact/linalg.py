"""Dense exact linear algebra over Q and Z."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence


def rref(matrix: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns (increasing).

    The rank is ``len(pivots)``.
    """
    rows = [[Fraction(x) for x in row] for row in matrix]
    if not rows:
        return [], []
    ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise ValueError("matrix rows must have equal length")
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(matrix: Sequence[Sequence]) -> int:
    return len(rref(matrix)[1])


def solve(matrix: Sequence[Sequence], rhs: Sequence) -> list[Fraction] | None:
    """One exact solution of ``matrix @ x = rhs``, or ``None`` if inconsistent."""
    ncols = len(matrix[0])
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    red, piv = rref(aug)
    if ncols in piv:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(red, piv):
        x[p] = row[-1]
    return x


def det(matrix: Sequence[Sequence]) -> Fraction:
    m = [[Fraction(x) for x in row] for row in matrix]
    n = len(m)
    result = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            result = -result
        result *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            if f:
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return result


def integer_kernel(columns: Sequence[Sequence[int]]) -> list[list[int]]:
    """Basis of the integer kernel of the map Z^k -> Z^r sending e_j to ``columns[j]``.

    Unimodular column operations reduce the r x k matrix to echelon form; the
    transformation columns that end up mapping to zero span the kernel.
    """
    k = len(columns)
    if k == 0:
        return []
    r = len(columns[0])
    a = [list(map(int, c)) for c in columns]  # working columns
    u = [[int(i == j) for i in range(k)] for j in range(k)]  # u[j] = coefficients of column j
    row = 0
    start = 0
    while row < r and start < k:
        while True:
            nz = [j for j in range(start, k) if a[j][row]]
            if len(nz) <= 1:
                break
            j0 = min(nz, key=lambda j: abs(a[j][row]))
            for j in nz:
                if j != j0:
                    q = a[j][row] // a[j0][row]
                    a[j] = [x - q * y for x, y in zip(a[j], a[j0])]
                    u[j] = [x - q * y for x, y in zip(u[j], u[j0])]
        nz = [j for j in range(start, k) if a[j][row]]
        if nz:
            j0 = nz[0]
            a[start], a[j0] = a[j0], a[start]
            u[start], u[j0] = u[j0], u[start]
            start += 1
        row += 1
    kernel = [u[j] for j in range(k) if not any(a[j])]
    out = []
    for v in kernel:
        g = 0
        for x in v:
            g = gcd(g, x)
        v = [x // g for x in v] if g > 1 else v
        first = next(x for x in v if x)
        out.append([-x for x in v] if first < 0 else v)
    return out


def gcd_of_minors(vectors: Sequence[Sequence[int]]) -> int:
    """gcd of the maximal minors of the matrix whose rows are ``vectors``."""
    from itertools import combinations

    k = len(vectors)
    n = len(vectors[0])
    g = 0
    for cols in combinations(range(n), k):
        sub = [[v[c] for c in cols] for v in vectors]
        g = gcd(g, int(abs(det(sub))))
    return g
