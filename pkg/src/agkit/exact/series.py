"""Truncated rational power series and univariate helpers.

Univariate polynomials are plain coefficient lists, lowest degree first.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .poly import MPoly, PolyRing

# -- univariate coefficient lists ---------------------------------------


def utrim(p: Sequence) -> list[Fraction]:
    p = [Fraction(c) for c in p]
    while p and not p[-1]:
        p.pop()
    return p


def uadd(a, b):
    n = max(len(a), len(b))
    return utrim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def usub(a, b):
    return uadd(a, [-c for c in b])


def umul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return utrim(out)


def udivmod(a, b):
    a, b = utrim(a), utrim(b)
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        f = r[-1] / b[-1]
        q[shift] = f
        for i, c in enumerate(b):
            r[i + shift] -= f * c
        r = utrim(r)
    return utrim(q), r


def ugcd(a, b):
    a, b = utrim(a), utrim(b)
    while b:
        a, b = b, udivmod(a, b)[1]
    if not a:
        return []
    lead = a[-1]
    return [c / lead for c in a]


def ueval(p, x):
    v = 0
    for c in reversed(p):
        v = v * x + c
    return v


def one_minus_t_pow(k: int) -> list[Fraction]:
    """Coefficients of (1 - t)^k."""
    return [Fraction((-1) ** i * comb(k, i)) for i in range(k + 1)]


def series_coeffs(num, den, n: int) -> list[Fraction]:
    """First ``n`` Taylor coefficients of num/den (den[0] != 0)."""
    num, den = list(num), list(den)
    if not den or not den[0]:
        raise ZeroDivisionError("denominator must have nonzero constant term")
    out = []
    inv0 = 1 / Fraction(den[0])
    for k in range(n):
        acc = Fraction(num[k]) if k < len(num) else Fraction(0)
        for j in range(1, min(k, len(den) - 1) + 1):
            acc -= den[j] * out[k - j]
        out.append(acc * inv0)
    return out


# -- truncated Laurent series -------------------------------------------


@dataclass(frozen=True)
class QSeries:
    """Coefficients for degrees ``min_degree .. order-1``; unknown from ``order`` on."""

    min_degree: int
    coeffs: tuple[Fraction, ...]
    order: int

    def __init__(self, coeffs: Sequence, order: int | None = None, min_degree: int = 0):
        coeffs = tuple(Fraction(c) for c in coeffs)
        if order is None:
            order = min_degree + len(coeffs)
        keep = max(order - min_degree, 0)
        coeffs = coeffs[:keep] + (Fraction(0),) * max(keep - len(coeffs), 0)
        object.__setattr__(self, "min_degree", min_degree)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "order", order)

    def __getitem__(self, n: int) -> Fraction:
        if n >= self.order:
            raise IndexError(f"coefficient {n} lies beyond truncation order {self.order}")
        if n < self.min_degree:
            return Fraction(0)
        return self.coeffs[n - self.min_degree]

    def valuation(self) -> int | None:
        for i, c in enumerate(self.coeffs):
            if c:
                return self.min_degree + i
        return None

    def items(self):
        return [(self.min_degree + i, c) for i, c in enumerate(self.coeffs)]

    def _binary(self, other, sign):
        if isinstance(other, (int, Fraction)):
            other = QSeries([other], order=self.order)
        lo = min(self.min_degree, other.min_degree)
        order = min(self.order, other.order)
        out = []
        for n in range(lo, order):
            a = self[n] if n >= self.min_degree else 0
            b = other[n] if n >= other.min_degree else 0
            out.append(a + sign * b)
        return QSeries(out, order=order, min_degree=lo)

    def __add__(self, other):
        return self._binary(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, -1)

    def __neg__(self):
        return QSeries([-c for c in self.coeffs], self.order, self.min_degree)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QSeries([c * other for c in self.coeffs], self.order, self.min_degree)
        lo = self.min_degree + other.min_degree
        order = min(self.order + other.min_degree, other.order + self.min_degree)
        out = [Fraction(0)] * max(order - lo, 0)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                k = i + j
                if k >= len(out):
                    break
                out[k] += a * b
        return QSeries(out, order, lo)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = QSeries([1], order=self.order - self.min_degree)
        for _ in range(k):
            result = result * self
        return result

    def inverse(self) -> "QSeries":
        v = self.valuation()
        if v is None:
            raise ZeroDivisionError("series is zero to its truncation order")
        unit = [self[n] for n in range(v, self.order)]
        m = len(unit)
        inv = series_coeffs([1], unit, m)
        return QSeries(inv, order=m - v, min_degree=-v)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        return self * other.inverse()

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)


# -- rational functions g(t) / (1 - t)^k --------------------------------

T_RING = PolyRing(("t",))


@dataclass(frozen=True)
class RatFunc:
    numerator: MPoly
    denominator_pow: int

    @classmethod
    def from_coeffs(cls, coeffs: Sequence, k: int) -> "RatFunc":
        return cls(MPoly(T_RING, {(i,): c for i, c in enumerate(coeffs)}), k)

    def numerator_coeffs(self) -> list[Fraction]:
        d = self.numerator.degree()
        return [self.numerator.coefficient((i,)) for i in range(d + 1)]

    def reduced(self) -> "RatFunc":
        """Cancel common factors (1 - t) until g(1) != 0."""
        num = self.numerator_coeffs()
        k = self.denominator_pow
        while k > 0 and num and ueval(num, 1) == 0:
            num, rem = udivmod(num, [1, -1])
            assert not rem
            k -= 1
        return RatFunc.from_coeffs(num, k)

    def expand(self, n: int) -> list[Fraction]:
        return series_coeffs(self.numerator_coeffs(), one_minus_t_pow(self.denominator_pow), n)

    def __str__(self):
        return f"({self.numerator.to_str(('t',))})/(1 - t)^{self.denominator_pow}"
