"""Graded pieces of homogeneous ideals by plain linear algebra."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .linalg import rref
from .poly import MPoly, PolyRing


class InhomogeneousError(ValueError):
    pass


@dataclass(frozen=True)
class GradedPiece:
    degree: int
    basis: list[MPoly]
    rank: int
    codim: int


def graded_piece_basis(gens: Sequence[MPoly], d: int, ring: PolyRing | None = None) -> GradedPiece:
    """Span of all ``m * g`` of weighted degree ``d`` and its codimension.

    ``ring`` is only needed when ``gens`` is empty.
    """
    if ring is None:
        if not gens:
            raise ValueError("ring is required when there are no generators")
        ring = gens[0].ring
    for g in gens:
        if not g.is_homogeneous():
            raise InhomogeneousError(f"generator {g} is not homogeneous")
    monos = ring.monomials_of_degree(d)
    col = {m: i for i, m in enumerate(monos)}
    rows = []
    for g in gens:
        if g.is_zero():
            continue
        k = d - g.degree()
        if k < 0:
            continue
        for m in ring.monomials_of_degree(k):
            row = [0] * len(monos)
            for gm, c in g.terms.items():
                row[col[tuple(a + b for a, b in zip(gm, m))]] = c
            rows.append(row)
    if not rows:
        return GradedPiece(d, [], 0, len(monos))
    red, piv = rref(rows)
    basis = [MPoly(ring, {monos[j]: c for j, c in enumerate(row) if c}) for row in red[: len(piv)]]
    return GradedPiece(d, basis, len(piv), len(monos) - len(piv))
