"""Reference values worked out by hand or by brute force, independent of agkit."""

from fractions import Fraction
from itertools import product
from math import comb

# 7/3 = 3 - 1/(2 - 1/2)
HJ_7_3 = [3, 2, 2]
# 7/5 = 2 - 1/(2 - 1/3)
HJ_7_5 = [2, 2, 3]

# Sym^3 of a rank-2 bundle: roots 3a, 2a+b, a+2b, 3b. The degree-4 part is
# 3a * 3b * (2a+b)(a+2b) = 9ab(2a^2 + 5ab + 2b^2) = 18 c1^2 c2 + 9 c2^2.
SYM3_PARTS = ["1", "6*c1", "11*c1^2 + 10*c2", "6*c1^3 + 30*c1*c2", "18*c1^2*c2 + 9*c2^2"]

J_COEFFS = {-1: 1, 0: 744, 1: 196884, 2: 21493760}
E4_COEFFS = [1, 240, 2160, 6720, 17520]
E6_COEFFS = [1, -504, -16632, -122976]


def sigma(k, n):
    return sum(d**k for d in range(1, n + 1) if n % d == 0)


def chi_projective(n, k):
    """(k+1)(k+2)...(k+n)/n!"""
    num = 1
    for i in range(1, n + 1):
        num *= k + i
    den = 1
    for i in range(1, n + 1):
        den *= i
    return Fraction(num, den)


def monomial_count(nvars, d):
    return comb(nvars - 1 + d, nvars - 1)


def plane_curve_hilbert(k, d):
    return d * k - Fraction(k * (k - 3), 2)


def invariant_count(modulus, exponent_vectors, d):
    """Monomials of degree d fixed by every listed diagonal element, by enumeration."""
    k = len(exponent_vectors[0])
    total = 0
    for m in product(range(d + 1), repeat=k):
        if sum(m) != d:
            continue
        if all(sum(a * e for a, e in zip(g, m)) % modulus == 0 for g in exponent_vectors):
            total += 1
    return total


def vanishing_order(coeffs):
    """Index of the first nonzero coefficient."""
    for i, c in enumerate(coeffs):
        if c:
            return i
    return None


def fraction_free_rank(matrix):
    """Bareiss elimination over the integers, independent of rref."""
    m = [[int(x) for x in row] for row in matrix]
    rows, cols = len(m), len(m[0]) if m else 0
    r = 0
    prev = 1
    for c in range(cols):
        p = next((i for i in range(r, rows) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                m[i][j] = (m[i][j] * m[r][c] - m[i][c] * m[r][j]) // prev
            m[i][c] = 0
        prev = m[r][c]
        r += 1
        if r == rows:
            break
    return r


def convolve(a, b, n):
    return [sum(a[i] * b[k - i] for i in range(k + 1) if i < len(a) and k - i < len(b)) for k in range(n)]
