"""Exterior algebra on Q^n, contractions and Pluecker relations.

Basis vectors are indexed from 1 as in e_1, ..., e_n. Coefficients may be
rationals or :class:`MPoly` values, which is how the symbolic element
``sum x_I e_I`` is represented.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Mapping, Sequence

from .exact.linalg import rank
from .exact.poly import MPoly, PolyRing


class AmbientMismatch(ValueError):
    pass


def _sort_sign(idx: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Sign of the sorting permutation, or 0 on a repeated index."""
    idx = list(idx)
    if len(set(idx)) != len(idx):
        return 0, ()
    sign = 1
    for i in range(len(idx)):
        for j in range(len(idx) - 1 - i):
            if idx[j] > idx[j + 1]:
                idx[j], idx[j + 1] = idx[j + 1], idx[j]
                sign = -sign
    return sign, tuple(idx)


class ExtElement:
    """A homogeneous element of degree ``k`` in the exterior algebra of Q^n."""

    __slots__ = ("n", "k", "terms")

    def __init__(self, n: int, k: int, terms: Mapping[tuple[int, ...], object] | None = None):
        self.n, self.k = n, k
        clean = {}
        for idx, c in (terms or {}).items():
            idx = tuple(idx)
            if len(idx) != k or any(not 1 <= i <= n for i in idx):
                raise ValueError(f"index tuple {idx} does not fit degree {k} in dimension {n}")
            sign, key = _sort_sign(idx)
            if not sign:
                continue
            c = Fraction(c) if isinstance(c, (int, Fraction)) else c
            v = clean.get(key, 0) + sign * c
            if v:
                clean[key] = v
            else:
                clean.pop(key, None)
        self.terms = clean

    @classmethod
    def basis(cls, n: int, *idx: int) -> "ExtElement":
        return cls(n, len(idx), {idx: 1})

    @classmethod
    def vector(cls, coords: Sequence) -> "ExtElement":
        n = len(coords)
        return cls(n, 1, {(i + 1,): c for i, c in enumerate(coords) if c})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, ExtElement):
            return NotImplemented
        return (self.n, self.k, self.terms) == (other.n, other.k, other.terms)

    def __add__(self, other: "ExtElement") -> "ExtElement":
        self._check(other)
        if self.k != other.k:
            raise ValueError("sum of elements of different degrees")
        out = dict(self.terms)
        for i, c in other.terms.items():
            out[i] = out.get(i, 0) + c
        return ExtElement(self.n, self.k, out)

    def __neg__(self):
        return ExtElement(self.n, self.k, {i: -c for i, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "ExtElement":
        return ExtElement(self.n, self.k, {i: c * v for i, v in self.terms.items()})

    def _check(self, other):
        if self.n != other.n:
            raise AmbientMismatch(f"ambient dimensions {self.n} and {other.n} differ")

    def __xor__(self, other):
        return wedge(self, other)

    def coefficient(self, idx: Sequence[int]):
        sign, key = _sort_sign(idx)
        return sign * self.terms.get(key, 0) if sign else 0

    def __repr__(self):
        if not self.terms:
            return f"ExtElement(n={self.n}, k={self.k}, 0)"
        parts = [f"({c})e{''.join(map(str, i))}" for i, c in sorted(self.terms.items())]
        return " + ".join(parts)


def wedge(a: ExtElement, b: ExtElement) -> ExtElement:
    a._check(b)
    out: dict = {}
    for i, x in a.terms.items():
        for j, y in b.terms.items():
            sign, key = _sort_sign(i + j)
            if sign:
                out[key] = out.get(key, 0) + sign * (x * y)
    return ExtElement(a.n, a.k + b.k, out)


def contract(alpha: int, a: ExtElement) -> ExtElement:
    """Contraction with the dual basis covector e_alpha^*."""
    if not 1 <= alpha <= a.n:
        raise ValueError(f"covector index {alpha} outside 1..{a.n}")
    if a.k == 0:
        return ExtElement(a.n, 0, {})
    out: dict = {}
    for idx, c in a.terms.items():
        if alpha in idx:
            pos = idx.index(alpha)
            rest = idx[:pos] + idx[pos + 1 :]
            out[rest] = out.get(rest, 0) + (-1) ** pos * c
    return ExtElement(a.n, a.k - 1, out)


def contract_many(alphas: Sequence[int], a: ExtElement) -> ExtElement:
    """Apply contr_{alphas[0]} first, then contr_{alphas[1]}, and so on."""
    for al in alphas:
        a = contract(al, a)
    return a


def coordinate_ring(k: int, n: int) -> PolyRing:
    names = ["x" + "".join(map(str, idx)) if n < 10 else "x" + "_".join(map(str, idx)) for idx in combinations(range(1, n + 1), k)]
    return PolyRing(names)


def generic_element(k: int, n: int) -> tuple[ExtElement, PolyRing]:
    ring = coordinate_ring(k, n)
    idxs = list(combinations(range(1, n + 1), k))
    return ExtElement(n, k, {idx: ring.gen(i) for i, idx in enumerate(idxs)}), ring


def _monic(p: MPoly) -> MPoly:
    _, c = p.sorted_terms()[0]
    return p / c


@lru_cache(maxsize=None)
def _relations(k: int, n: int) -> tuple[MPoly, ...]:
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    w, ring = generic_element(k, n)
    seen: dict = {}
    for first in combinations(range(1, n + 1), k - 1):
        inner = wedge(contract_many(first, w), w)
        if not inner:
            continue
        for last in combinations(range(1, n + 1), k + 1):
            val = contract_many(last, inner).terms.get((), 0)
            if isinstance(val, MPoly) and val:
                m = _monic(val)
                seen.setdefault(m, None)
    return tuple(seen)


def pluecker_relations(k: int, n: int) -> list[MPoly]:
    """Distinct quadrics from contracting (contr_I w) ^ w by basis covectors.

    ``I`` runs over (k-1)-subsets and the outer contraction over
    (k+1)-subsets of dual basis vectors. Each relation is scaled so its
    leading coefficient is 1.
    """
    return list(_relations(k, n))


def coordinates(w: ExtElement) -> list:
    return [w.terms.get(idx, 0) for idx in combinations(range(1, w.n + 1), w.k)]


def is_decomposable(w: ExtElement) -> bool:
    if not w:
        raise ValueError("the zero element has no Pluecker point")
    point = coordinates(w)
    return all(r.evaluate(point) == 0 for r in pluecker_relations(w.k, w.n))


def relation_rank(relations: Sequence[MPoly]) -> int:
    """Dimension of the Q-span of the relations."""
    monos = sorted({m for r in relations for m in r.terms})
    col = {m: i for i, m in enumerate(monos)}
    rows = []
    for r in relations:
        row = [0] * len(monos)
        for m, c in r.terms.items():
            row[col[m]] = c
        rows.append(row)
    return rank(rows) if rows else 0
