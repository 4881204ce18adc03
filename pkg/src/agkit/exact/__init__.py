"""Exact arithmetic substrate: polynomials, linear algebra and series over Q."""

from .linalg import det, integer_kernel, rank, rref, solve
from .poly import DEGREE_CAP, DegreeCapExceeded, MPoly, PolyRing, RingMismatch, parse_poly
from .series import QSeries, RatFunc

__all__ = [
    "DEGREE_CAP",
    "DegreeCapExceeded",
    "MPoly",
    "PolyRing",
    "QSeries",
    "RatFunc",
    "RingMismatch",
    "det",
    "integer_kernel",
    "parse_poly",
    "rank",
    "rref",
    "solve",
]
