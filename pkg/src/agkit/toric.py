"""Lattice cones and fans in rank 2 (and the simplicial rank-3 case)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import atan2, gcd, pi
from typing import Sequence

from .exact.linalg import gcd_of_minors, integer_kernel, rank, solve

Vec = tuple[int, ...]


class ConeError(ValueError):
    pass


def primitive(v: Sequence) -> Vec:
    v = [Fraction(x) for x in v]
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    w = [int(x * den) for x in v]
    g = 0
    for x in w:
        g = gcd(g, x)
    if g == 0:
        raise ConeError("the zero vector has no primitive multiple")
    return tuple(x // g for x in w)


def det2(a: Sequence, b: Sequence):
    return a[0] * b[1] - a[1] * b[0]


@dataclass(frozen=True)
class Sublattice:
    """N = Z^2 + Z (1/den) extra."""

    den: int
    extra: tuple[int, int]

    def basis(self) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
        """A Z-basis of N, from the Hermite form of den*N."""
        rows = [[self.den, 0], [0, self.den], list(self.extra)]
        # column 0: gcd step
        while sum(1 for r in rows if r[0]) > 1:
            rows.sort(key=lambda r: (r[0] == 0, abs(r[0])))
            p = rows[0]
            for r in rows[1:]:
                if r[0]:
                    q = r[0] // p[0]
                    r[0] -= q * p[0]
                    r[1] -= q * p[1]
        rows.sort(key=lambda r: (r[0] == 0, abs(r[0])))
        first, rest = rows[0], rows[1:]
        g = 0
        for r in rest:
            g = gcd(g, r[1])
        if first[0] < 0:
            first = [-first[0], -first[1]]
        b1 = (Fraction(first[0], self.den), Fraction(first[1], self.den))
        b2 = (Fraction(0), Fraction(g, self.den))
        return b1, b2

    def to_standard(self, v: Sequence) -> Vec:
        """Coordinates of ``v`` in the basis of :meth:`basis` (an element of Z^2)."""
        b1, b2 = self.basis()
        x = solve([[b1[0], b2[0]], [b1[1], b2[1]]], [Fraction(v[0]), Fraction(v[1])])
        if x is None or any(c.denominator != 1 for c in x):
            raise ConeError(f"{v} is not a lattice vector of N")
        return (int(x[0]), int(x[1]))

    def contains(self, v: Sequence) -> bool:
        try:
            self.to_standard(v)
            return True
        except ConeError:
            return False


def in_cone(v: Sequence, gens: Sequence[Sequence]) -> bool:
    """Membership in the cone spanned by linearly independent ``gens``."""
    if not any(v):
        return True
    if not gens:
        return False
    cols = [[g[i] for g in gens] for i in range(len(v))]
    x = solve(cols, list(v))
    return x is not None and all(c >= 0 for c in x)


@dataclass(frozen=True)
class Cone:
    """A rational polyhedral cone given by primitive generators.

    Two-dimensional cones store their generators with det(v1, v2) > 0, so the
    interior is swept counterclockwise from v1 to v2. An optional
    :class:`Sublattice` records that the lattice is N rather than Z^2.
    """

    generators: tuple[Vec, ...]
    lattice: Sublattice | None = None

    def __init__(self, generators: Sequence[Sequence], lattice: Sublattice | None = None, check: bool = True):
        gens = []
        for g in generators:
            p = primitive(g) if lattice is None else tuple(Fraction(x) for x in g)
            if p not in gens:
                gens.append(p)
        if len(gens) == 2 and len(gens[0]) == 2 and det2(gens[0], gens[1]) < 0:
            gens.reverse()
        object.__setattr__(self, "generators", tuple(gens))
        object.__setattr__(self, "lattice", lattice)
        if check:
            self._validate()

    @property
    def rank(self) -> int:
        return len(self.generators[0]) if self.generators else 2

    @property
    def dim(self) -> int:
        return rank(self.generators) if self.generators else 0

    def _validate(self):
        g = self.generators
        if len(g) == 2 and self.rank == 2:
            if det2(g[0], g[1]) == 0:
                raise ConeError("generators are opposite; the cone is not strongly convex")
        elif len(g) > 2 and self.rank == 2:
            raise ConeError("a strongly convex rank-2 cone has at most two rays")
        elif self.rank == 3 and len(g) > 3:
            raise ConeError("only simplicial rank-3 cones are supported")
        elif self.rank == 3 and rank(g) != len(g):
            raise ConeError("rank-3 cone generators must be linearly independent")

    def contains(self, v: Sequence) -> bool:
        return in_cone(v, self.generators)

    def standard(self) -> "Cone":
        """The same cone re-expressed in Z^2 through a basis of its lattice."""
        if self.lattice is None:
            return self
        return Cone([primitive(self.lattice.to_standard(primitive_in(v, self.lattice))) for v in self.generators])

    def faces(self) -> list["Cone"]:
        g = self.generators
        out = [Cone([], check=False)]
        out += [Cone([v], self.lattice) for v in g]
        for k in range(2, len(g) + 1):
            out += [Cone(list(c), self.lattice) for c in combinations(g, k)]
        return out

    def __repr__(self):
        lat = f", lattice={self.lattice}" if self.lattice else ""
        return f"Cone({[list(map(_num, v)) for v in self.generators]}{lat})"


def _num(x):
    x = Fraction(x)
    return int(x) if x.denominator == 1 else x


def primitive_in(v: Sequence, lattice: Sublattice) -> tuple[Fraction, ...]:
    """Shortest multiple of ``v`` that lies in ``lattice``."""
    w = primitive(v)
    std = lattice.to_standard(w)
    g = gcd(*std)
    return tuple(Fraction(x, g) for x in w)


def rot_ccw(v):
    return (-v[1], v[0])


def rot_cw(v):
    return (v[1], -v[0])


def dual_cone(c: Cone) -> Cone:
    """Primitive generators of the dual cone, in the counterclockwise convention.

    For v1, v2 with det(v1, v2) > 0 the dual is spanned by rot_cw(v2) and
    rot_ccw(v1). A single ray dualizes to a half-plane and a half-plane (three
    generators u, -u, w) to a ray; these are returned with ``check=False``.
    """
    if c.rank != 2:
        raise ConeError("dual_cone supports rank 2 only")
    g = [primitive(v) for v in c.generators]
    if len(g) == 2:
        return Cone([rot_cw(g[1]), rot_ccw(g[0])])
    if len(g) == 1:
        v = g[0]
        return Cone([rot_cw(v), v, rot_ccw(v)], check=False)
    if len(g) == 3:
        for i in range(3):
            for j in range(3):
                if i != j and det2(g[i], g[j]) == 0 and g[i][0] * g[j][0] + g[i][1] * g[j][1] < 0:
                    w = g[3 - i - j]
                    n = rot_ccw(g[i])
                    if n[0] * w[0] + n[1] * w[1] < 0:
                        n = (-n[0], -n[1])
                    return Cone([n], check=False)
    raise ConeError("unsupported cone for dualization")


def lattice_points_box(lo, hi):
    for x in range(lo[0], hi[0] + 1):
        for y in range(lo[1], hi[1] + 1):
            yield (x, y)


def _parallelogram_points(v1, v2) -> list[Vec]:
    """Nonzero lattice points a v1 + b v2 with 0 <= a, b <= 1."""
    corners = [(0, 0), v1, v2, (v1[0] + v2[0], v1[1] + v2[1])]
    lo = (min(p[0] for p in corners), min(p[1] for p in corners))
    hi = (max(p[0] for p in corners), max(p[1] for p in corners))
    d = det2(v1, v2)
    out = []
    for p in lattice_points_box(lo, hi):
        if p == (0, 0):
            continue
        a = Fraction(det2(p, v2), d)
        b = Fraction(det2(v1, p), d)
        if 0 <= a <= 1 and 0 <= b <= 1:
            out.append(p)
    return out


def ccw_key(v):
    """Counterclockwise angle order starting at the positive x-axis."""
    a = atan2(v[1], v[0])
    return a if a >= 0 else a + 2 * pi


def hilbert_basis(c: Cone) -> list[Vec]:
    """Minimal generating set of the semigroup of lattice points in ``c``.

    Irreducible elements lie in the closed parallelogram spanned by the two
    rays, and any decomposition of such an element uses summands from the
    same parallelogram. The result is ordered from v1 to v2 across the cone.
    """
    c = c.standard()
    if c.rank != 2 or len(c.generators) != 2:
        raise ConeError("hilbert_basis needs a two-dimensional strongly convex rank-2 cone")
    v1, v2 = c.generators
    pts = _parallelogram_points(v1, v2)
    pset = set(pts)
    irreducible = []
    for p in pts:
        if not any(
            (p[0] - q[0], p[1] - q[1]) in pset for q in pts if q != p
        ):
            irreducible.append(p)
    irreducible.sort(key=lambda p: Fraction(det2(v1, p), det2(p, v2)) if det2(p, v2) else Fraction(10**18))
    return irreducible


@dataclass(frozen=True)
class RelationLattice:
    kernel: tuple[tuple[int, ...], ...]
    binomials: tuple[str, ...]


def _monomial_text(names, exps) -> str:
    parts = []
    for n, e in zip(names, exps):
        if e == 1:
            parts.append(n)
        elif e > 1:
            parts.append(f"{n}^{e}")
    return "*".join(parts) if parts else "1"


def relation_lattice(basis: Sequence[Sequence[int]], names: Sequence[str] | None = None) -> RelationLattice:
    """Integer relations among semigroup generators, rendered as binomials."""
    if not basis:
        raise ValueError("basis must be nonempty")
    names = list(names or "uvwxyzabcdefghijklmnopqrst"[: len(basis)])
    ker = integer_kernel([list(v) for v in basis])
    rendered = []
    for k in ker:
        pos = [max(x, 0) for x in k]
        neg = [max(-x, 0) for x in k]
        rendered.append(f"{_monomial_text(names, pos)} - {_monomial_text(names, neg)}")
    return RelationLattice(tuple(tuple(k) for k in ker), tuple(rendered))


def is_smooth(c: Cone) -> bool:
    """True iff the generators are part of a basis of the cone's lattice."""
    c = c.standard()
    g = c.generators
    if not g:
        return True
    if len(g) > c.rank:
        raise ConeError("more generators than the rank")
    if rank(g) < len(g):
        return False
    return gcd_of_minors(g) == 1


@dataclass(frozen=True)
class Fan:
    cones: tuple[Cone, ...]

    def __init__(self, cones: Sequence[Cone | Sequence[Sequence[int]]], lattice: Sublattice | None = None):
        out = []
        for c in cones:
            out.append(c if isinstance(c, Cone) else Cone(c, lattice))
        object.__setattr__(self, "cones", tuple(out))

    @property
    def rank(self) -> int:
        for c in self.cones:
            if c.generators:
                return c.rank
        return 2

    def rays(self) -> list[Vec]:
        seen = []
        for c in self.cones:
            for g in c.generators:
                if g not in seen:
                    seen.append(g)
        return seen


@dataclass(frozen=True)
class Resolution:
    fan: Fan
    inserted: tuple[Vec, ...]
    rays: tuple[Vec, ...]

    def self_intersections(self) -> list[int]:
        """b_i with r_(i-1) + r_(i+1) = b_i r_i along the inserted rays."""
        out = []
        r = self.rays
        for i in range(1, len(r) - 1):
            s = (r[i - 1][0] + r[i + 1][0], r[i - 1][1] + r[i + 1][1])
            b = Fraction(s[0], r[i][0]) if r[i][0] else Fraction(s[1], r[i][1])
            if (b * r[i][0], b * r[i][1]) != s or b.denominator != 1:
                raise AssertionError("adjacent rays do not satisfy the chain relation")
            out.append(int(b))
        return out


def _triangle_points(v1, v2) -> list[Vec]:
    corners = [(0, 0), v1, v2]
    lo = (min(p[0] for p in corners), min(p[1] for p in corners))
    hi = (max(p[0] for p in corners), max(p[1] for p in corners))
    d = det2(v1, v2)
    out = []
    for p in lattice_points_box(lo, hi):
        if p == (0, 0):
            continue
        a = Fraction(det2(p, v2), d)
        b = Fraction(det2(v1, p), d)
        if a >= 0 and b >= 0 and a + b <= 1:
            out.append(p)
    return out


def resolve_2d(c: Cone) -> Resolution:
    """Hirzebruch-Jung subdivision through the compact boundary of the hull.

    The compact faces of conv(cone lattice points minus 0) lie in the
    triangle (0, v1, v2). They are traced from v1 to v2 by gift wrapping,
    keeping every lattice point on an edge, and each traced point becomes a
    ray of the subdivision.
    """
    c = c.standard()
    if c.rank != 2 or len(c.generators) != 2:
        raise ConeError("resolve_2d needs a two-dimensional strongly convex rank-2 cone")
    v1, v2 = c.generators
    pts = _triangle_points(v1, v2)
    chain = [v1]
    p = v1
    while p != v2:
        ahead = [q for q in pts if det2(p, q) > 0]
        best = None
        for q in ahead:
            if best is None:
                best = q
                continue
            turn = det2((best[0] - p[0], best[1] - p[1]), (q[0] - p[0], q[1] - p[1]))
            if turn > 0:
                best = q
            elif turn == 0 and abs(q[0] - p[0]) + abs(q[1] - p[1]) < abs(best[0] - p[0]) + abs(best[1] - p[1]):
                best = q
        chain.append(best)
        p = best
    cones = [Cone([chain[i], chain[i + 1]]) for i in range(len(chain) - 1)]
    return Resolution(Fan(cones), tuple(chain[1:-1]), tuple(chain))


def hj_continued_fraction(n: int, q: int) -> list[int]:
    """n/q = b1 - 1/(b2 - 1/(...)) with all b_i >= 2."""
    out = []
    while q:
        b = -(-n // q)
        out.append(b)
        n, q = q, b * q - n
    return out


# -- fans -----------------------------------------------------------------


def _same_rays(a: Sequence[Vec], b: Sequence[Vec]) -> bool:
    return set(a) == set(b)


def _intersection_rays(a: Cone, b: Cone) -> list[Vec]:
    rays = [g for g in a.generators if b.contains(g)] + [g for g in b.generators if a.contains(g)]
    out = []
    for r in rays:
        if r not in out:
            out.append(r)
    return out


def _is_face(rays: Sequence[Vec], c: Cone) -> bool:
    return any(_same_rays(rays, f.generators) for f in c.faces())


def fan_is_valid(f: Fan) -> bool:
    """Pairwise intersections are faces of both cones.

    In rank 2 the intersection of two cones is spanned by the generators of
    each cone lying in the other. In rank 3 only simplicial fans whose rays
    are linearly independent are supported, where this also holds.
    """
    cones = [c.standard() for c in f.cones]
    if f.rank == 3:
        rays = f.rays()
        if rank(rays) != len(rays):
            raise ConeError("rank-3 support is limited to fans with independent rays")
    for i, a in enumerate(cones):
        for b in cones[i + 1 :]:
            inter = _intersection_rays(a, b)
            if f.rank == 2 and len(inter) == 2 and det2(*inter) == 0:
                return False
            if len(inter) > 2 and f.rank == 2:
                return False
            if not (_is_face(inter, a) and _is_face(inter, b)):
                return False
    return True


def morphism_compatible(source: Fan, target: Fan, matrix: Sequence[Sequence[int]]) -> bool:
    """Every source cone maps into some target cone, checked on generators."""
    src = [c.standard() for c in source.cones]
    tgt = [c.standard() for c in target.cones]
    if len(matrix) != target.rank or any(len(row) != source.rank for row in matrix):
        raise ValueError(f"matrix must be {target.rank} x {source.rank}")

    def image(v):
        return tuple(sum(a * x for a, x in zip(row, v)) for row in matrix)

    for c in src:
        imgs = [image(g) for g in c.generators]
        if not any(all(t.contains(v) for v in imgs) for t in tgt):
            return False
    return True


def cp2_fan() -> Fan:
    return Fan(
        [
            [(1, 0), (0, 1)],
            [(0, 1), (-1, -1)],
            [(-1, -1), (1, 0)],
            [(1, 0)],
            [(0, 1)],
            [(-1, -1)],
            [],
        ]
    )


def octant_fan() -> Fan:
    return Fan([[(1, 0), (0, 1)], [(1, 0)], [(0, 1)], []])


def blowup_fan() -> Fan:
    return Fan([[(1, 0), (1, 1)], [(1, 1), (0, 1)], [(1, 0)], [(1, 1)], [(0, 1)], []])


def c3_minus_axis_fan() -> Fan:
    """The seven-cone fan in Z^3 built from pairs of coordinate rays."""
    e = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    return Fan([[e[0], e[1]], [e[1], e[2]], [e[2], e[0]], [e[0]], [e[1]], [e[2]], []])
