"""Chern classes through Chern roots, presented cohomology rings, HRR.

Cohomological degrees are halved throughout: deg H = deg c_1 = deg s_1 = 1,
deg c_2 = deg s_2 = 2, and integration reads the part of degree dim X.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import comb, factorial
from typing import Sequence

from .exact.poly import MPoly, PolyRing
from .ideal import GroebnerBasis, MonomialOrder, buchberger

# -- symmetric functions in Chern roots --------------------------------


def root_ring(r: int, line: bool = False) -> PolyRing:
    names = [f"x{i}" for i in range(1, r + 1)] + (["l"] if line else [])
    return PolyRing(names)


def chern_ring(r: int, line: bool = False) -> PolyRing:
    names = [f"c{i}" for i in range(1, r + 1)] + (["l"] if line else [])
    weights = list(range(1, r + 1)) + ([1] if line else [])
    return PolyRing(names, weights)


def elementary(ring: PolyRing, r: int, i: int) -> MPoly:
    """e_i of the first ``r`` variables of ``ring``."""
    out = ring.zero()
    for idx in combinations(range(r), i):
        e = [0] * ring.nvars
        for j in idx:
            e[j] = 1
        out = out + ring.monomial(e)
    return out


class NotSymmetric(AssertionError):
    pass


def is_symmetric(p: MPoly, r: int) -> bool:
    ring = p.ring
    for i in range(r - 1):
        images = list(ring.gens)
        images[i], images[i + 1] = images[i + 1], images[i]
        if p.substitute(images) != p:
            return False
    return True


def to_elementary(p: MPoly, r: int, target: PolyRing | None = None) -> MPoly:
    """Rewrite a polynomial symmetric in the first ``r`` variables in c_1..c_r.

    Any further variables are carried along unchanged. The leading term
    c x^a under lex has a_1 >= ... >= a_r and is cancelled by
    c e_1^(a_1-a_2) ... e_r^(a_r).
    """
    ring = p.ring
    extra = ring.nvars - r
    target = target or chern_ring(r, line=extra == 1)
    if not is_symmetric(p, r):
        raise NotSymmetric(f"{p} is not symmetric in the roots")
    es = [elementary(ring, r, i) for i in range(1, r + 1)]
    out: dict = {}
    rest = p
    while rest:
        m, c = max(rest.terms.items(), key=lambda t: t[0])
        a = list(m[:r]) + [0]
        ce = tuple(a[i] - a[i + 1] for i in range(r)) + tuple(m[r:])
        lead = ring.monomial((0,) * r + tuple(m[r:]), c)
        for i, k in enumerate(ce[:r]):
            if k:
                lead = lead * es[i] ** k
        if any(x < 0 for x in ce):
            raise NotSymmetric("leading exponents are not weakly decreasing")
        rest = rest - lead
        out[ce] = out.get(ce, 0) + c
    return MPoly(target, out)


@dataclass(frozen=True)
class Construction:
    """``identity``, ``dual``, ``sym(k)``, ``lambda(k)`` or ``tensor-line``."""

    kind: str
    k: int = 0

    @classmethod
    def parse(cls, text: str) -> "Construction":
        text = text.strip().lower().replace(" ", "")
        m = re.fullmatch(r"(sym|lambda)\((\d+)\)", text)
        if m:
            return cls(m.group(1), int(m.group(2)))
        if text in ("identity", "dual", "tensor-line"):
            return cls(text)
        raise ValueError(f"unknown construction {text!r}")

    def weights(self, r: int) -> list[tuple[int, ...]]:
        """Coefficient vectors (on x_1..x_r, then l) of the Chern roots."""
        unit = [tuple(int(i == j) for j in range(r)) for i in range(r)]
        if self.kind == "identity":
            return unit
        if self.kind == "dual":
            return [tuple(-x for x in u) for u in unit]
        if self.kind == "tensor-line":
            return [u + (1,) for u in unit]
        if self.kind == "sym":
            pick = combinations_with_replacement(range(r), self.k)
        else:
            pick = combinations(range(r), self.k)
        out = []
        for idx in pick:
            v = [0] * r
            for i in idx:
                v[i] += 1
            out.append(tuple(v))
        return out

    @property
    def uses_line(self) -> bool:
        return self.kind == "tensor-line"


@dataclass(frozen=True)
class SymExpr:
    rank: int
    truncation: int
    roots: MPoly
    chern: MPoly

    def part(self, d: int) -> MPoly:
        return self.chern.homogeneous_part(d)


def total_chern_sym(r: int, construction: Construction | str, D: int) -> SymExpr:
    """Total Chern class of a construction on a rank-``r`` bundle, up to degree D.

    For ``tensor-line`` the extra variable ``l`` is the first Chern class of
    the line bundle.
    """
    if r < 1:
        raise ValueError("rank must be positive")
    if isinstance(construction, str):
        construction = Construction.parse(construction)
    ring = root_ring(r, construction.uses_line)
    total = ring.one()
    for w in construction.weights(r):
        factor = ring.one()
        for i, a in enumerate(w):
            if a:
                factor = factor + ring.gen(i) * a
        total = (total * factor).truncate(D)
    return SymExpr(r, D, total, to_elementary(total, r))


# -- presented cohomology rings -----------------------------------------


@dataclass(frozen=True, eq=False)
class CohomRing:
    """Graded Q-algebra ``ring / relations`` truncated above ``top_degree``.

    ``point`` is the monomial exponent of the class integrating to 1, or
    ``None`` for a plain truncated polynomial ring.
    """

    name: str
    ring: PolyRing
    relations: tuple[MPoly, ...]
    top_degree: int
    point: tuple[int, ...] | None
    gb: GroebnerBasis | None

    @classmethod
    def build(cls, name, ring, relations, top_degree, point=None) -> "CohomRing":
        gb = buchberger(relations, MonomialOrder.for_ring(ring, "wgrevlex"), ring=ring) if relations else None
        out = cls(name, ring, tuple(relations), top_degree, point, gb)
        if point is not None:
            out._check_point()
        return out

    def _check_point(self):
        if self.ring.degree_of(self.point) != self.top_degree:
            raise ValueError("point class must sit in the top degree")
        if self.basis(self.top_degree) and len(self.basis(self.top_degree)) != 1:
            raise ValueError("top degree piece is not one-dimensional")
        nf = self.reduce(self.ring.monomial(self.point))
        if len(nf.terms) != 1:
            raise ValueError("point class does not reduce to a single standard monomial")

    def reduce(self, p: MPoly) -> MPoly:
        p = p.truncate(self.top_degree)
        return self.gb.normal_form(p) if self.gb else p

    def basis(self, d: int) -> list[tuple]:
        monos = self.ring.monomials_of_degree(d)
        if d > self.top_degree:
            return []
        return [m for m in monos if self.gb is None or self.gb.is_standard(m)]

    def graded_dimensions(self) -> list[int]:
        return [len(self.basis(d)) for d in range(self.top_degree + 1)]

    def element(self, p: MPoly | str | int | Fraction) -> "CohomClass":
        if isinstance(p, str):
            p = self.ring.parse(p)
        elif not isinstance(p, MPoly):
            p = self.ring.constant(p)
        return CohomClass(self, self.reduce(p))

    def gen(self, i: int) -> "CohomClass":
        return CohomClass(self, self.reduce(self.ring.gen(i)))

    def __getitem__(self, name: str) -> "CohomClass":
        return self.gen(self.ring.names.index(name))

    def one(self) -> "CohomClass":
        return self.element(1)

    def integrate(self, x: "CohomClass") -> Fraction:
        if self.point is None:
            raise ValueError(f"{self.name} has no integration functional")
        ref = self.reduce(self.ring.monomial(self.point))
        (m, c), = ref.terms.items()
        return x.poly.coefficient(m) / c


@dataclass(frozen=True, eq=False)
class CohomClass:
    ring: CohomRing
    poly: MPoly

    def _lift(self, other) -> MPoly:
        if isinstance(other, CohomClass):
            if other.ring is not self.ring:
                raise ValueError("classes live in different rings")
            return other.poly
        return self.ring.ring.constant(other)

    def __add__(self, other):
        return CohomClass(self.ring, self.ring.reduce(self.poly + self._lift(other)))

    __radd__ = __add__

    def __neg__(self):
        return CohomClass(self.ring, -self.poly)

    def __sub__(self, other):
        return CohomClass(self.ring, self.ring.reduce(self.poly - self._lift(other)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        return CohomClass(self.ring, self.ring.reduce(self.poly * self._lift(other)))

    __rmul__ = __mul__

    def __truediv__(self, c):
        return CohomClass(self.ring, self.poly / c)

    def __pow__(self, k: int):
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, CohomClass):
            return self.ring is other.ring and self.poly == other.poly
        return self.poly == self.ring.reduce(self.ring.ring.constant(other))

    def __hash__(self):
        return hash(self.poly)

    def part(self, d: int) -> "CohomClass":
        return CohomClass(self.ring, self.poly.homogeneous_part(d))

    def integrate(self) -> Fraction:
        return self.ring.integrate(self)

    def __repr__(self):
        return f"[{self.poly}] in {self.ring.name}"


def integrate(x: CohomClass) -> Fraction:
    return x.ring.integrate(x)


def projective_space(n: int) -> CohomRing:
    ring = PolyRing(("H",))
    return CohomRing.build(f"CP{n}", ring, [ring.gen(0) ** (n + 1)], n, (n,))


def grassmannian_ring(preset: str) -> CohomRing:
    """``Gr24`` or ``Gr25`` in Schubert generators s1 (degree 1), s2 (degree 2)."""
    ring = PolyRing(("s1", "s2"), (1, 2))
    key = preset.lower().replace("(", "").replace(")", "").replace(",", "")
    if key == "gr24":
        rels = ["s1^3 - 2*s1*s2", "s1^2*s2 - s2^2"]
        return CohomRing.build("Gr(2,4)", ring, [ring.parse(r) for r in rels], 4, (0, 2))
    if key == "gr25":
        rels = [
            "s2^2 - 3*s1^2*s2 + s1^4",
            "-3*s1*s2^2 + 4*s1^3*s2 - s1^5",
            "-s2^3 + 6*s1^2*s2^2 - 5*s1^4*s2 + s1^6",
        ]
        return CohomRing.build("Gr(2,5)", ring, [ring.parse(r) for r in rels], 6, (0, 3))
    raise ValueError(f"unknown Grassmannian preset {preset!r}")


def truncated_ring(names: Sequence[str], weights: Sequence[int], top: int, name: str = "free") -> CohomRing:
    return CohomRing.build(name, PolyRing(names, weights), [], top)


def chern_substitute(expr: MPoly, classes: Sequence[CohomClass]) -> CohomClass:
    """Evaluate a polynomial in c_1..c_r (and possibly l) at given classes."""
    if len(classes) != expr.nvars:
        raise ValueError(f"need {expr.nvars} classes, got {len(classes)}")
    target = classes[0].ring
    out = target.element(0)
    for m, c in expr.terms.items():
        t = target.element(c)
        for cls, e in zip(classes, m):
            if e:
                t = t * cls**e
        out = out + t
    return out


# -- Chern character and Todd class ------------------------------------


def power_sums(c: Sequence[CohomClass], top: int) -> list[CohomClass]:
    """p_0 .. p_top of the Chern roots by Newton's identities."""
    ring = c[0].ring
    r = len(c)
    e = [ring.one()] + list(c)
    p = [ring.element(r)]
    for k in range(1, top + 1):
        acc = ring.element(0)
        for i in range(1, min(k - 1, r) + 1):
            acc = acc + e[i] * p[k - i] * (-1) ** (i - 1)
        if k <= r:
            acc = acc + e[k] * ((-1) ** (k - 1) * k)
        p.append(acc)
    return p


def chern_character(c: Sequence[CohomClass], r: int) -> CohomClass:
    """rank + sum_k p_k / k!, truncated at the ring's top degree."""
    if len(c) > r:
        if any(x.poly for x in c[r:]):
            raise ValueError("Chern classes beyond the rank must vanish")
        c = c[:r]
    if not c:
        raise ValueError("need at least one Chern class (use 0 for a trivial bundle)")
    ring = c[0].ring
    p = power_sums(c, ring.top_degree)
    out = ring.element(r)
    for k in range(1, ring.top_degree + 1):
        out = out + p[k] / factorial(k)
    return out


def exp_class(x: CohomClass) -> CohomClass:
    ring = x.ring
    out = ring.one()
    term = ring.one()
    for k in range(1, ring.top_degree + 1):
        term = term * x / k
        out = out + term
    return out


def _series_log(coeffs: list[Fraction], n: int) -> list[Fraction]:
    """log f for f = 1 + ..., first n coefficients."""
    # f * (log f)' = f'
    d = [Fraction(0)] * n
    fprime = [k * coeffs[k] for k in range(1, n + 1)]
    for k in range(n):
        acc = fprime[k] if k < len(fprime) else Fraction(0)
        for j in range(1, k + 1):
            acc -= coeffs[j] * d[k - j]
        d[k] = acc
    return [Fraction(0)] + [d[k - 1] / k for k in range(1, n)]


def todd_log_coefficients(n: int) -> list[Fraction]:
    """b_k with log(x / (1 - e^(-x))) = sum_k b_k x^k, for k < n."""
    g = [Fraction((-1) ** k, factorial(k + 1)) for k in range(n + 1)]  # (1 - e^-x)/x
    inv = [Fraction(0)] * (n + 1)
    inv[0] = Fraction(1)
    for k in range(1, n + 1):
        inv[k] = -sum(g[j] * inv[k - j] for j in range(1, k + 1))
    return _series_log(inv, n)


def todd_class(c: Sequence[CohomClass], dim: int | None = None) -> CohomClass:
    """exp(sum_k b_k p_k): the product of x / (1 - e^(-x)) over the roots."""
    ring = c[0].ring
    top = ring.top_degree if dim is None else min(dim, ring.top_degree)
    p = power_sums(c, top)
    b = todd_log_coefficients(top + 1)
    log_td = ring.element(0)
    for k in range(1, top + 1):
        log_td = log_td + p[k] * b[k]
    td = exp_class(log_td)
    if dim is not None:
        td = CohomClass(ring, td.poly.truncate(dim))
    return td


def symbolic_chern_classes(r: int, top: int) -> tuple[CohomRing, list[CohomClass]]:
    ring = truncated_ring([f"c{i}" for i in range(1, r + 1)], range(1, r + 1), top, name=f"Q[c1..c{r}]")
    return ring, [ring.gen(i) for i in range(r)]


# -- Hirzebruch-Riemann-Roch -------------------------------------------


def parse_line_bundle(text: str) -> int:
    """``O``, ``O(k)`` or ``O(-k)`` to the twist k."""
    m = re.fullmatch(r"\s*O\s*(?:\(\s*(-?\d+)\s*\))?\s*", text)
    if not m:
        raise ValueError(f"cannot parse line bundle {text!r}")
    return int(m.group(1) or 0)


def projective_tangent_chern(n: int) -> tuple[CohomRing, list[CohomClass]]:
    """c(T CP^n) = (1 + H)^(n+1) from the Euler sequence."""
    ring = projective_space(n)
    h = ring.gen(0)
    return ring, [h**i * comb(n + 1, i) for i in range(1, n + 1)] if n else [ring.element(0)]


def hrr_projective(n: int, k: int) -> Fraction:
    ring, c = projective_tangent_chern(n)
    h = ring.gen(0)
    ch = exp_class(h * k)
    return integrate(ch * todd_class(c, n))


@dataclass(frozen=True)
class SurfaceNumbers:
    D2: Fraction
    DK: Fraction
    chi_O: Fraction


def surface_hrr_symbolic() -> MPoly:
    """chi(X, L) on a surface as a polynomial in c1, c2 and D = c1(L)."""
    ring = truncated_ring(("c1", "c2", "D"), (1, 2, 1), 2, name="surface")
    c1, c2, d = ring.gen(0), ring.gen(1), ring.gen(2)
    ch = chern_character([d], 1)
    td = todd_class([c1, c2], 2)
    return (ch * td).part(2).poly


def surface_hrr(numbers: SurfaceNumbers | None = None):
    """Symbolic chi(O) for ``numbers=None``; otherwise the rational value.

    The symbolic degree-2 part has the form
    alpha D^2 + beta D c1 + gamma (c1^2 + c2); with K = -c1 and
    chi(O) = (c1^2 + c2)/12 it is evaluated from (D^2, D.K, chi(O)).
    """
    expr = surface_hrr_symbolic()
    ring = expr.ring
    if numbers is None:
        return expr.substitute([ring.gen(0), ring.gen(1), ring.zero()])
    alpha = expr.coefficient((0, 0, 2))
    beta = expr.coefficient((1, 0, 1))
    gamma = expr.coefficient((2, 0, 0))
    if expr.coefficient((0, 1, 0)) != gamma or len(expr.terms) != 4:
        raise AssertionError(f"unexpected surface HRR shape {expr}")
    return alpha * numbers.D2 - beta * numbers.DK + 12 * gamma * numbers.chi_O


def hrr_euler_char(preset: str, bundle: str = "O", numbers: SurfaceNumbers | None = None):
    """chi via integral of ch(W) Td(X).

    ``preset`` is ``CPn`` (for example ``CP3``) or ``surface``. On CP^n the
    bundle is a line bundle O(k). On the surface preset the result is a
    polynomial in c1, c2 when ``numbers`` is omitted.
    """
    m = re.fullmatch(r"(?i)cp\s*(\d+)", preset.strip())
    if m:
        return hrr_projective(int(m.group(1)), parse_line_bundle(bundle))
    if preset.strip().lower() in ("surface", "surface-symbolic"):
        if numbers is None:
            if parse_line_bundle(bundle) != 0:
                raise ValueError("symbolic surface preset only supports L = O")
            return surface_hrr(None)
        return surface_hrr(numbers)
    raise ValueError(f"unsupported preset {preset!r}")


# -- enumerative counts -------------------------------------------------


def dual_tautological(ring: CohomRing) -> list[CohomClass]:
    """Chern classes of the dual tautological subbundle: c(S^) = 1 - s1 + s2."""
    return [-ring["s1"], ring["s2"]]


def count_lines(preset: str) -> int:
    key = preset.lower().replace("_", "-")
    if key in ("fourlines", "four-lines"):
        gr = grassmannian_ring("Gr24")
        value = integrate(gr["s1"] ** 4)
    elif key in ("cubicsurface", "cubic-surface", "cubic-lines"):
        gr = grassmannian_ring("Gr24")
        c4 = total_chern_sym(2, "sym(3)", 4).part(4)
        value = integrate(chern_substitute(c4, dual_tautological(gr)))
    elif key in ("quintic", "quintic-lines"):
        gr = grassmannian_ring("Gr25")
        c6 = total_chern_sym(2, "sym(5)", 6).part(6)
        value = integrate(chern_substitute(c6, dual_tautological(gr)))
    else:
        raise ValueError(f"unknown preset {preset!r}")
    if value.denominator != 1:
        raise AssertionError(f"non-integral count {value}")
    return int(value)


# -- curves ---------------------------------------------------------------


def canonical_degree(g: int) -> int:
    if g < 0:
        raise ValueError("genus must be nonnegative")
    return 2 * g - 2


def riemann_hurwitz_check(gx: int, gy: int, deg: int, ramification: Sequence[int]) -> bool:
    """Compare 2g_X - 2 with deg (2g_Y - 2) + sum (m_p - 1)."""
    if gx < 0 or gy < 0 or deg < 1:
        raise ValueError("need genera >= 0 and degree >= 1")
    if any(m < 2 or m > deg for m in ramification):
        raise ValueError("ramification indices must lie in 2..deg")
    return canonical_degree(gx) == deg * canonical_degree(gy) + sum(m - 1 for m in ramification)
