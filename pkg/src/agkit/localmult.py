"""Local intersection multiplicity of affine plane curves."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exact.poly import MPoly, PolyRing
from .ideal import GREVLEX, buchberger


class InfiniteMultiplicity(ArithmeticError):
    """The curves share a component through the point."""


@dataclass(frozen=True)
class MultiplicityResult:
    value: int
    stabilized_at: int
    colengths: tuple[int, ...] = field(default=(), compare=False)


def _translate(f: MPoly, point: Sequence[Fraction]) -> MPoly:
    ring = f.ring
    return f.substitute([ring.gen(i) + ring.constant(point[i]) for i in range(ring.nvars)])


def colength(f: MPoly, g: MPoly, n: int) -> int:
    """dim Q[y1, y2] / (f, g, m^n) with m the maximal ideal at the origin."""
    ring = f.ring
    gens = [f, g] + [ring.monomial(m) for m in ring.monomials_of_degree(n)]
    gb = buchberger(gens, GREVLEX, ring=ring)
    if gb.is_unit():
        return 0
    return sum(len(gb.standard_monomials(d)) for d in range(n))


def local_multiplicity(f: MPoly, g: MPoly, point: Sequence = (0, 0)) -> MultiplicityResult:
    """Multiplicity at ``point`` as the stable value of colength(f, g, m^N), N >= 2.

    ``colengths`` lists the values for N = 2, 3, ... up to the certificate.
    Returns 0 when the point is not on both curves. Raises
    :class:`InfiniteMultiplicity` when no two consecutive colengths agree
    before N = deg f * deg g + 3.
    """
    if f.nvars != 2 or g.nvars != 2:
        raise ValueError("local multiplicity is defined for two variables")
    point = [Fraction(c) for c in point]
    f0, g0 = _translate(f, point), _translate(g, point)
    if f0.constant_term() or g0.constant_term():
        return MultiplicityResult(0, 0, ())
    cap = max(f.degree(), 1) * max(g.degree(), 1) + 3
    seen = [colength(f0, g0, 2)]
    for n in range(3, cap + 2):
        seen.append(colength(f0, g0, n))
        if seen[-1] == seen[-2]:
            return MultiplicityResult(seen[-1], n - 1, tuple(seen))
    raise InfiniteMultiplicity(f"colength did not stabilize by N = {cap}: {seen}")


def line_multiplicity_oracle(g: MPoly) -> int:
    """Vanishing order at 0 of g(y1, 0)."""
    restricted = {m[0]: c for m, c in g.terms.items() if m[1] == 0}
    if not restricted:
        raise InfiniteMultiplicity("the line y2 = 0 is a component of g")
    order = min(restricted)
    if order == 0:
        raise ValueError("g does not vanish at the origin")
    return order


def dehomogenize(f: MPoly, chart: int, names=("y1", "y2")) -> MPoly:
    """Set variable ``chart`` of a ternary form to 1, keeping the others in order."""
    if f.nvars != 3:
        raise ValueError("dehomogenize expects a polynomial in 3 variables")
    ring = PolyRing(names)
    images = []
    k = 0
    for i in range(3):
        if i == chart:
            images.append(ring.one())
        else:
            images.append(ring.gen(k))
            k += 1
    return f.substitute(images)
