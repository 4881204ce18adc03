"""Hilbert functions, series and polynomials of graded quotients; Molien series."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd, lcm
from typing import Sequence

from .exact.graded import InhomogeneousError, graded_piece_basis
from .exact.poly import MPoly, PolyRing
from .exact.series import (
    QSeries,
    RatFunc,
    series_coeffs,
    uadd,
    udivmod,
    ugcd,
    umul,
    utrim,
)
from .ideal import GroebnerBasis, MonomialOrder, buchberger

EMPTY_DIMENSION = float("-inf")
"""Dimension reported for an empty projective set (zero Hilbert polynomial)."""


class StabilizationError(RuntimeError):
    pass


class EmptyProjectiveSet(ValueError):
    pass


@dataclass(frozen=True)
class GradedQuotient:
    ring: PolyRing
    gens: tuple[MPoly, ...]

    def __init__(self, ring: PolyRing, gens: Sequence[MPoly] = ()):
        gens = tuple(g for g in gens if not g.is_zero())
        for g in gens:
            if not ring.compatible(g.ring):
                raise ValueError("generator lives in a different ring")
            if not g.is_homogeneous():
                raise InhomogeneousError(f"generator {g} is not homogeneous")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "gens", gens)

    @classmethod
    def parse(cls, names: Sequence[str], gens: Sequence[str], weights=None) -> "GradedQuotient":
        ring = PolyRing(names, weights)
        return cls(ring, [ring.parse(g) for g in gens])

    @property
    def standard_grading(self) -> bool:
        return all(w == 1 for w in self.ring.weights)

    def groebner(self) -> GroebnerBasis:
        return buchberger(self.gens, MonomialOrder.for_ring(self.ring), ring=self.ring)


def _count_standard(gb: GroebnerBasis, d: int) -> int:
    return len(gb.standard_monomials(d))


def hilbert_function(q: GradedQuotient, d: int, cross_check: bool = True, gb: GroebnerBasis | None = None) -> int:
    """Dimension of the degree-``d`` piece, by standard monomials.

    With ``cross_check`` the value is compared against the rank computation
    of :func:`graded_piece_basis`, and a mismatch raises.
    """
    if d < 0:
        raise ValueError("degree must be nonnegative")
    gb = gb or q.groebner()
    a = _count_standard(gb, d)
    if cross_check:
        b = graded_piece_basis(list(q.gens), d, ring=q.ring).codim
        if a != b:
            raise AssertionError(f"standard monomials give {a}, linear algebra gives {b} in degree {d}")
    return a


# -- univariate polynomials in d --------------------------------------


def interpolate(points: Sequence[tuple[int, int]]) -> list[Fraction]:
    """Coefficients (constant first) of the Lagrange interpolant."""
    out: list[Fraction] = []
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j != i:
                basis = umul(basis, [Fraction(-xj), Fraction(1)])
                denom *= xi - xj
        out = uadd(out, [c * yi / denom for c in basis])
    return utrim(out)


def poly_eval(p: Sequence[Fraction], x) -> Fraction:
    v = Fraction(0)
    for c in reversed(p):
        v = v * x + c
    return v


@dataclass(frozen=True)
class HilbertData:
    series: RatFunc
    polynomial: tuple[Fraction, ...]
    stable_from: int
    dimension: int | float
    values: tuple[int, ...]

    @property
    def degree(self) -> int:
        """Degree of the Hilbert polynomial, ``-1`` for the zero polynomial."""
        return len(self.polynomial) - 1

    def P(self, d: int) -> Fraction:
        return poly_eval(self.polynomial, d)

    def leading_coefficient_degree(self) -> int:
        """(dim)! times the leading coefficient: the degree of the projective set."""
        if not self.polynomial:
            return 0
        e = len(self.polynomial) - 1
        v = self.polynomial[-1]
        for i in range(2, e + 1):
            v *= i
        return int(v)


def _fit(values: list[int], nvars: int, lo: int, hi: int):
    pts = [(d, values[d]) for d in range(max(lo, hi - nvars), hi + 1)]
    return interpolate(pts)


def hilbert_data(q: GradedQuotient, extra: int = 3) -> HilbertData:
    """Hilbert polynomial, reduced Hilbert series and dimension.

    The values ``a_0 .. a_D`` are computed with ``D = sum(deg) + nvars + 2``.
    The interpolant through the tail of that window must match ``extra``
    further values; otherwise the window is doubled once and then
    :class:`StabilizationError` is raised.
    """
    if not q.standard_grading:
        raise ValueError("hilbert_data needs the standard grading; use hilbert_series for weights")
    n = q.ring.nvars
    gb = q.groebner()
    window = sum(g.degree() for g in q.gens) + n + 2
    for attempt in range(2):
        top = window + extra
        values = [_count_standard(gb, d) for d in range(top + 1)]
        poly = _fit(values, n, 0, window)
        if all(poly_eval(poly, d) == values[d] for d in range(window + 1, top + 1)):
            break
        window *= 2
    else:
        raise StabilizationError(f"Hilbert function did not stabilize by degree {window // 2 + extra}")
    s = top
    while s > 0 and poly_eval(poly, s - 1) == values[s - 1]:
        s -= 1
    dim = len(poly) - 1 if poly else EMPTY_DIMENSION
    # numerator of (1 - t)^n * H(t); it is a polynomial of degree < s + n
    length = s + n + 1
    while len(values) < length:
        values.append(int(poly_eval(poly, len(values))))
    num = [Fraction(v) for v in values[:length]]
    factor = [Fraction((-1) ** i * comb(n, i)) for i in range(n + 1)]
    num = utrim(umul(num, factor)[:length])
    series = RatFunc.from_coeffs(num, n).reduced()
    expected_pow = 0 if poly == [] else len(poly)
    if num and series.denominator_pow != expected_pow:
        raise AssertionError("reduced series pole order disagrees with the Hilbert polynomial")
    return HilbertData(series, tuple(poly), s, dim, tuple(values[: top + 1]))


def projective_dimension(q: GradedQuotient) -> int:
    data = hilbert_data(q)
    if data.dimension == EMPTY_DIMENSION:
        raise EmptyProjectiveSet("the ideal defines the empty projective set")
    return data.dimension


@dataclass(frozen=True)
class BezoutResult:
    product: int
    hilbert_constant: int | None
    agrees: bool
    diagnostic: str = ""


def bezout_check(f1: MPoly, f2: MPoly) -> BezoutResult:
    if f1.nvars != 3 or f2.nvars != 3:
        raise ValueError("bezout_check needs polynomials in exactly 3 variables")
    q = GradedQuotient(f1.ring, [f1, f2])
    if len(q.gens) != 2:
        raise ValueError("both polynomials must be nonzero")
    data = hilbert_data(q)
    product = f1.degree() * f2.degree()
    if data.degree == 0:
        c = int(data.polynomial[0])
        ok = c == product
        return BezoutResult(product, c, ok, "" if ok else f"constant {c} differs from {product}")
    if data.degree >= 1:
        return BezoutResult(product, None, False, "Hilbert polynomial is not constant: common component")
    return BezoutResult(product, 0, product == 0, "empty intersection")


# -- weighted Hilbert series via the leading-term ideal ----------------


def _minimalize(monos):
    monos = sorted(set(monos), key=sum)
    out = []
    for m in monos:
        if not any(all(a <= b for a, b in zip(o, m)) for o in out):
            out.append(m)
    return out


def _monomial_numerator(monos, weights) -> list[Fraction]:
    """K(t) with HS(S/(monos)) = K(t) / prod(1 - t^w_i)."""
    monos = _minimalize(monos)
    if not monos:
        return [Fraction(1)]
    # a set of pure powers in distinct variables gives a product
    if all(sum(1 for e in m if e) == 1 for m in monos):
        out = [Fraction(1)]
        for m in monos:
            d = sum(e * w for e, w in zip(m, weights))
            out = umul(out, [Fraction(1)] + [Fraction(0)] * (d - 1) + [Fraction(-1)])
        return out
    pivot, rest = monos[-1], monos[:-1]
    colon = [tuple(max(a - b, 0) for a, b in zip(m, pivot)) for m in rest]
    d = sum(e * w for e, w in zip(pivot, weights))
    a = _monomial_numerator(rest, weights)
    b = _monomial_numerator(colon, weights)
    return utrim(uadd(a, [Fraction(0)] * d + [-c for c in b]))


@dataclass(frozen=True)
class WeightedSeries:
    """``numerator(t) / prod_i (1 - t^weights[i])``."""

    numerator: tuple[Fraction, ...]
    weights: tuple[int, ...]

    def denominator(self) -> list[Fraction]:
        out = [Fraction(1)]
        for w in self.weights:
            out = umul(out, [Fraction(1)] + [Fraction(0)] * (w - 1) + [Fraction(-1)])
        return out

    def expand(self, n: int) -> list[Fraction]:
        return series_coeffs(self.numerator, self.denominator(), n)


def hilbert_series(q: GradedQuotient) -> WeightedSeries:
    """Exact Hilbert series for any positive weights, from leading monomials."""
    gb = q.groebner()
    lead = gb.leading_monomials() if q.gens else []
    return WeightedSeries(tuple(_monomial_numerator(lead, q.ring.weights)), q.ring.weights)


# -- Molien series of diagonal abelian groups --------------------------


def cyclotomic(n: int) -> list[Fraction]:
    """Phi_n as a coefficient list, by dividing u^n - 1 by Phi_d for d | n, d < n."""
    num = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    for d in range(1, n):
        if n % d == 0:
            num, rem = udivmod(num, cyclotomic(d))
            if rem:
                raise AssertionError("cyclotomic division left a remainder")
    return num


class CyclotomicField:
    """Q[u]/Phi_n(u) with u standing for a primitive n-th root of unity."""

    def __init__(self, n: int):
        self.n = n
        self.phi = cyclotomic(n)

    def reduce(self, p):
        return udivmod(p, self.phi)[1]

    def root_power(self, k: int):
        k %= self.n
        return self.reduce([Fraction(0)] * k + [Fraction(1)])

    def mul(self, a, b):
        return self.reduce(umul(a, b))


@dataclass(frozen=True)
class DiagonalGroup:
    modulus: int
    elements: tuple[tuple[int, ...], ...]

    def __init__(self, modulus: int, elements: Sequence[Sequence[int]]):
        if modulus < 1:
            raise ValueError("modulus must be positive")
        elems = tuple(sorted({tuple(a % modulus for a in e) for e in elements}))
        if not elems:
            raise ValueError("group needs at least one element")
        k = len(elems[0])
        if any(len(e) != k for e in elems):
            raise ValueError("all exponent vectors need the same length")
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "elements", elems)

    @property
    def rank(self) -> int:
        return len(self.elements[0])

    def order(self) -> int:
        return len(self.elements)

    def is_closed(self) -> bool:
        s = set(self.elements)
        if (0,) * self.rank not in s:
            return False
        n = self.modulus
        return all(tuple((x + y) % n for x, y in zip(a, b)) in s for a in s for b in s)

    @classmethod
    def cyclic(cls, n: int, exponents: Sequence[int]) -> "DiagonalGroup":
        """The group generated by diag(xi^e_1, ..., xi^e_k), xi = exp(2 pi i / n)."""
        return cls(n, [[j * e % n for e in exponents] for j in range(n)])

    @classmethod
    def generated(cls, n: int, generators: Sequence[Sequence[int]]) -> "DiagonalGroup":
        """Closure of ``generators`` under addition mod n."""
        gens = [tuple(a % n for a in g) for g in generators]
        if not gens:
            raise ValueError("need at least one generator")
        seen = {(0,) * len(gens[0])}
        frontier = list(seen)
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = tuple((x + y) % n for x, y in zip(a, g))
                    if b not in seen:
                        seen.add(b)
                        nxt.append(b)
            frontier = nxt
        return cls(n, sorted(seen))

    def is_invariant(self, mono: Sequence[int]) -> bool:
        return all(sum(a * e for a, e in zip(g, mono)) % self.modulus == 0 for g in self.elements)


class NonRationalCoefficient(ArithmeticError):
    pass


@dataclass(frozen=True)
class MolienResult:
    series: QSeries
    numerator: tuple[int, ...]
    denominator: tuple[int, ...]

    def expand(self, n: int) -> list[Fraction]:
        return series_coeffs(self.numerator, self.denominator, n)


def invariant_monomial_counts(g: DiagonalGroup, n: int) -> list[int]:
    ring = PolyRing(g.rank)
    return [sum(1 for m in ring.monomials_of_degree(d) if g.is_invariant(m)) for d in range(n)]


def molien_series(g: DiagonalGroup, truncation: int, cross_check: bool = True) -> MolienResult:
    """Average of det(1 - t g)^(-1), computed exactly in Q[u]/Phi_n.

    Each factor 1/(1 - xi^a t) is rewritten as
    (sum_{j<n} xi^(a j) t^j) / (1 - t^n), so the average is a polynomial over
    the cyclotomic field divided by (1 - t^n)^k. Its coefficients must be
    rational, which is asserted.
    """
    if not g.is_closed():
        raise ValueError("element list is not closed under addition")
    n, k = g.modulus, g.rank
    field = CyclotomicField(n)
    total: list[list[Fraction]] = []  # coefficient of t^j as an element of the field
    for elem in g.elements:
        prod = [[Fraction(1)]]
        for a in elem:
            factor = [field.root_power(a * j) for j in range(n)]
            new = [[] for _ in range(len(prod) + n - 1)]
            for i, x in enumerate(prod):
                if not x:
                    continue
                for j, y in enumerate(factor):
                    new[i + j] = uadd(new[i + j], field.mul(x, y))
            prod = new
        if len(total) < len(prod):
            total.extend([] for _ in range(len(prod) - len(total)))
        for i, x in enumerate(prod):
            total[i] = uadd(total[i], x)
    num = []
    for j, c in enumerate(total):
        if len(c) > 1:
            raise NonRationalCoefficient(f"coefficient of t^{j} is not rational: {c}")
        num.append(c[0] / g.order() if c else Fraction(0))
    num = utrim(num)
    den = [Fraction(1)]
    for _ in range(k):
        den = umul(den, [Fraction(1)] + [Fraction(0)] * (n - 1) + [Fraction(-1)])
    common = ugcd(num, den)
    num = udivmod(num, common)[0]
    den = udivmod(den, common)[0]
    scale = 1 / den[0]
    num = [c * scale for c in num]
    den = [c * scale for c in den]
    mult = lcm(*(c.denominator for c in num + den))
    num_i = [int(c * mult) for c in num]
    den_i = [int(c * mult) for c in den]
    content = 0
    for c in num_i + den_i:
        content = gcd(content, c)
    num_i = [c // content for c in num_i]
    den_i = [c // content for c in den_i]
    coeffs = series_coeffs(num_i, den_i, truncation)
    if cross_check:
        direct = invariant_monomial_counts(g, truncation)
        if [int(c) for c in coeffs] != direct or any(c.denominator != 1 for c in coeffs):
            raise AssertionError(f"Molien coefficients {coeffs} differ from invariant counts {direct}")
    return MolienResult(QSeries(coeffs, order=truncation), tuple(num_i), tuple(den_i))
