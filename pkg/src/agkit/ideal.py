"""Groebner bases, normal forms, and Nullstellensatz decision procedures."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .exact.poly import DEGREE_CAP, DegreeCapExceeded, MPoly, PolyRing, RingMismatch


@dataclass(frozen=True)
class MonomialOrder:
    """``grevlex``, ``lex`` or ``wgrevlex``; variable 0 is the largest."""

    kind: str = "grevlex"
    weights: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "wgrevlex"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "wgrevlex" and not self.weights:
            raise ValueError("wgrevlex needs weights")

    def key(self, m):
        if self.kind == "lex":
            return m
        if self.kind == "grevlex":
            return (sum(m), tuple(-e for e in reversed(m)))
        return (sum(e * w for e, w in zip(m, self.weights)), tuple(-e for e in reversed(m)))

    @classmethod
    def for_ring(cls, ring: PolyRing, kind: str = "grevlex") -> "MonomialOrder":
        if kind == "grevlex" and any(w != 1 for w in ring.weights):
            return cls("wgrevlex", ring.weights)
        if kind == "wgrevlex":
            return cls("wgrevlex", ring.weights)
        return cls(kind)


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _lead(terms: dict, key):
    m = max(terms, key=key)
    return m, terms[m]


def _reduce(terms: dict, basis: list[tuple], key) -> dict:
    """Full reduction of ``terms`` by ``basis`` = [(lead_mono, lead_coeff, terms)]."""
    p = dict(terms)
    r: dict = {}
    while p:
        m, c = _lead(p, key)
        for lm, lc, g in basis:
            if _divides(lm, m):
                f = c / lc
                shift = tuple(a - b for a, b in zip(m, lm))
                for gm, gc in g.items():
                    t = tuple(a + b for a, b in zip(gm, shift))
                    v = p.get(t, 0) - f * gc
                    if v:
                        p[t] = v
                    else:
                        p.pop(t, None)
                break
        else:
            r[m] = c
            del p[m]
    return r


def _spoly(f: dict, lf, g: dict, lg, key) -> dict:
    (mf, cf), (mg, cg) = lf, lg
    l = _lcm(mf, mg)
    sf = tuple(a - b for a, b in zip(l, mf))
    sg = tuple(a - b for a, b in zip(l, mg))
    out: dict = {}
    for m, c in f.items():
        t = tuple(a + b for a, b in zip(m, sf))
        out[t] = out.get(t, 0) + c / cf
    for m, c in g.items():
        t = tuple(a + b for a, b in zip(m, sg))
        v = out.get(t, 0) - c / cg
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return {m: c for m, c in out.items() if c}


@dataclass(frozen=True)
class GroebnerBasis:
    ring: PolyRing
    order: MonomialOrder
    polys: tuple[MPoly, ...]
    _lead: tuple = field(default=(), repr=False, compare=False)

    def leading_monomials(self) -> list[tuple]:
        return [lm for lm, _, _ in self._lead]

    def is_unit(self) -> bool:
        return any(not any(lm) for lm in self.leading_monomials())

    def normal_form(self, f: MPoly) -> MPoly:
        return normal_form(f, self)

    def contains(self, f: MPoly) -> bool:
        return normal_form(f, self).is_zero()

    def is_standard(self, m) -> bool:
        return not any(_divides(lm, m) for lm in self.leading_monomials())

    def standard_monomials(self, d: int) -> list[tuple]:
        return [m for m in self.ring.monomials_of_degree(d) if self.is_standard(m)]

    def verify(self) -> bool:
        """Every S-polynomial of the basis reduces to zero."""
        key = self.order.key
        for (i, a), (j, b) in combinations(enumerate(self._lead), 2):
            s = _spoly(a[2], (a[0], a[1]), b[2], (b[0], b[1]), key)
            if _reduce(s, list(self._lead), key):
                return False
        return True


def _make_basis(ring, order, polys_terms) -> GroebnerBasis:
    key = order.key
    lead = []
    polys = []
    for t in polys_terms:
        m, c = _lead(t, key)
        lead.append((m, c, t))
        polys.append(MPoly(ring, t))
    return GroebnerBasis(ring, order, tuple(polys), tuple(lead))


def buchberger(gens: Sequence[MPoly], order: MonomialOrder | None = None, ring: PolyRing | None = None) -> GroebnerBasis:
    """Reduced, monic Groebner basis.

    Pairs are processed by increasing lcm degree; pairs with coprime leading
    monomials are skipped.
    """
    gens = list(gens)
    if ring is None:
        if not gens:
            raise ValueError("ring is required when there are no generators")
        ring = gens[0].ring
    for g in gens:
        if not ring.compatible(g.ring):
            raise RingMismatch("generators live in different rings")
    order = order or MonomialOrder.for_ring(ring)
    key = order.key
    deg = (lambda m: sum(e * w for e, w in zip(m, order.weights))) if order.weights else sum

    basis: list[tuple] = []
    for g in gens:
        if g.is_zero():
            continue
        t = _reduce(g.terms, basis, key) if basis else dict(g.terms)
        if t:
            m, c = _lead(t, key)
            basis.append((m, c, t))
    if any(not any(m) for m, _, _ in basis):
        one = {(0,) * ring.nvars: Fraction(1)}
        return _make_basis(ring, order, [one])

    pairs = [(i, j) for i, j in combinations(range(len(basis)), 2)]
    while pairs:
        pairs.sort(key=lambda p: deg(_lcm(basis[p[0]][0], basis[p[1]][0])))
        i, j = pairs.pop(0)
        mi, mj = basis[i][0], basis[j][0]
        if all(not (a and b) for a, b in zip(mi, mj)):
            continue
        if deg(_lcm(mi, mj)) > DEGREE_CAP:
            raise DegreeCapExceeded(f"S-polynomial degree exceeds cap {DEGREE_CAP}")
        s = _spoly(basis[i][2], basis[i][:2], basis[j][2], basis[j][:2], key)
        r = _reduce(s, basis, key)
        if not r:
            continue
        m, c = _lead(r, key)
        if not any(m):
            one = {(0,) * ring.nvars: Fraction(1)}
            return _make_basis(ring, order, [one])
        basis.append((m, c, r))
        n = len(basis) - 1
        pairs.extend((k, n) for k in range(n))

    # minimalize then interreduce
    minimal = []
    for idx, (m, c, t) in enumerate(basis):
        if any(
            _divides(m2, m) and (m2 != m or jdx < idx)
            for jdx, (m2, _, _) in enumerate(basis)
            if jdx != idx
        ):
            continue
        minimal.append((m, c, t))
    reduced = []
    for idx, (m, c, t) in enumerate(minimal):
        others = [b for k, b in enumerate(minimal) if k != idx]
        tail = _reduce({mm: cc for mm, cc in t.items() if mm != m}, others, key)
        tail[m] = c
        reduced.append({mm: cc / c for mm, cc in tail.items()})
    reduced.sort(key=lambda t: key(_lead(t, key)[0]), reverse=True)
    return _make_basis(ring, order, reduced)


def normal_form(f: MPoly, gb: GroebnerBasis) -> MPoly:
    if not f.ring.compatible(gb.ring):
        raise RingMismatch("polynomial and basis live in different rings")
    return MPoly(f.ring, _reduce(f.terms, list(gb._lead), gb.order.key))


def ideal_contains(gens: Sequence[MPoly], f: MPoly, order: MonomialOrder | None = None) -> bool:
    return buchberger(gens, order, ring=f.ring).contains(f)


def is_empty_variety(gens: Sequence[MPoly], order: MonomialOrder | None = None, ring: PolyRing | None = None) -> bool:
    """Weak Nullstellensatz: the common zero set is empty iff 1 is in the ideal."""
    gens = list(gens)
    if not gens:
        return False
    ring = ring or gens[0].ring
    gb = buchberger(gens, order, ring=ring)
    return normal_form(ring.one(), gb).is_zero()


def in_radical(f: MPoly, gens: Sequence[MPoly], order: str = "lex") -> bool:
    """Radical membership via 1 in (gens, f*t - 1) with a fresh variable t.

    The fresh variable is placed first, so it is the largest variable in
    either order.
    """
    ring = f.ring
    ext = ring.extend("_t", first=True)
    shift = list(range(1, ring.nvars + 1))
    t = ext.gen(0)
    lifted = [g.embed(ext, shift) for g in gens]
    lifted.append(f.embed(ext, shift) * t - 1)
    return is_empty_variety(lifted, MonomialOrder(order) if order != "grevlex" else GREVLEX, ring=ext)
