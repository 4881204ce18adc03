"""Weierstrass and theta functions, the cubic group law, Eisenstein series.

Everything analytic is double precision; q-expansions are exact.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import pi
from typing import Callable, Sequence

import numpy as np

from .config import DEFAULT, Config
from .exact.series import QSeries


class PoleError(ValueError):
    pass


# -- lattices -------------------------------------------------------------


@dataclass(frozen=True)
class Lattice:
    g1: complex
    g2: complex

    def __post_init__(self):
        if (complex(self.g2) / complex(self.g1)).imag <= 0:
            raise ValueError("need Im(g2 / g1) > 0")

    @property
    def tau(self) -> complex:
        return complex(self.g2) / complex(self.g1)

    @classmethod
    def from_tau(cls, tau: complex) -> "Lattice":
        return cls(1.0, complex(tau))

    def normalized(self) -> "Lattice":
        return Lattice(1.0, self.tau)


@lru_cache(maxsize=8)
def _points(g1: complex, g2: complex, radius: float) -> np.ndarray:
    """Nonzero m g1 + n g2 with |l| <= radius."""
    area = abs((np.conj(g1) * g2).imag)
    mm = int(np.ceil(radius * abs(g2) / area))
    nn = int(np.ceil(radius * abs(g1) / area))
    m, n = np.meshgrid(np.arange(-mm, mm + 1), np.arange(-nn, nn + 1), indexing="ij")
    pts = (m * g1 + n * g2).ravel()
    keep = (np.abs(pts) <= radius) & (pts != 0)
    out = pts[keep]
    out.setflags(write=False)
    return out


def lattice_points(L: Lattice, R: float) -> np.ndarray:
    return _points(complex(L.g1), complex(L.g2), float(R) * max(abs(L.g1), abs(L.g2)))


def _guard(z: complex, L: Lattice, cfg: Config):
    # distance to the nearest lattice point, via reduced coordinates
    tau = L.tau
    w = complex(z) / complex(L.g1)
    n = round(w.imag / tau.imag)
    best = min(abs(w - (m + k * tau)) for k in (n - 1, n, n + 1) for m in (round((w - k * tau).real) + d for d in (-1, 0, 1)))
    if best * abs(L.g1) <= cfg.pole_guard:
        raise PoleError(f"z = {z} is within {cfg.pole_guard} of a lattice point")


def weierstrass_p(z: complex, L: Lattice, R: float | None = None, cfg: Config = DEFAULT) -> complex:
    """1/z^2 + sum over 0 < |l| <= R max|g| of 1/(z-l)^2 - 1/l^2."""
    R = cfg.lattice_radius if R is None else R
    _guard(z, L, cfg)
    ls = lattice_points(L, R)
    z = complex(z)
    return complex(1 / z**2 + np.sum(1 / (z - ls) ** 2 - 1 / ls**2))


def weierstrass_p_prime(z: complex, L: Lattice, R: float | None = None, cfg: Config = DEFAULT) -> complex:
    R = cfg.lattice_radius if R is None else R
    _guard(z, L, cfg)
    ls = lattice_points(L, R)
    z = complex(z)
    return complex(-2 / z**3 - 2 * np.sum(1 / (z - ls) ** 3))


def lattice_eisenstein(L: Lattice, k: int, R: float) -> complex:
    """G_k = sum of l^(-k) over the same disk used for the Weierstrass sum."""
    ls = lattice_points(L, R)
    return complex(np.sum(ls ** (-float(k))))


@dataclass(frozen=True)
class EllipticParams:
    """Coefficients of z^2 and z^4 in the Laurent expansion of the Weierstrass function."""

    a: complex
    b: complex

    @classmethod
    def of(cls, L: Lattice, R: float | None = None, cfg: Config = DEFAULT) -> "EllipticParams":
        R = cfg.lattice_radius if R is None else R
        return cls(3 * lattice_eisenstein(L, 4, R), 5 * lattice_eisenstein(L, 6, R))

    @property
    def g2(self) -> complex:
        return 20 * self.a

    @property
    def g3(self) -> complex:
        return 28 * self.b


def cubic_relation_residual(z: complex, L: Lattice, R: float | None = None, relative: bool = True, cfg: Config = DEFAULT) -> float:
    """|P'^2 - 4P^3 + 20aP + 28b|, divided by the size of the largest term if ``relative``."""
    p = weierstrass_p(z, L, R, cfg)
    dp = weierstrass_p_prime(z, L, R, cfg)
    prm = EllipticParams.of(L, R, cfg)
    terms = [dp**2, 4 * p**3, prm.g2 * p, prm.g3]
    res = abs(terms[0] - terms[1] + terms[2] + terms[3])
    if relative:
        res /= max(abs(t) for t in terms)
    return res


# -- theta ---------------------------------------------------------------


def _nome_terms(tau: complex, cutoff: float, z: complex = 0j) -> int:
    """Smallest n with |q|^n max|e^(+-2 pi i z)| below the cutoff."""
    qa = abs(cmath.exp(2j * pi * tau))
    if qa >= 1:
        raise ValueError("need Im tau > 0")
    if qa == 0:
        return 1
    growth = 2 * pi * abs(z.imag)
    return max(1, int(np.ceil((np.log(cutoff) - growth) / np.log(qa))) + 1)


def theta(z: complex, tau: complex, form: str = "product", cfg: Config = DEFAULT) -> complex:
    """Odd Jacobi theta function with zeros on Z + Z tau.

    ``product``: e^(pi i tau/4) 2 sin(pi z) prod_l (1-q^l)(1-q^l e^(2 pi i z))(1-q^l e^(-2 pi i z)).
    ``series``: -i sum_n (-1)^n exp(pi i ((n+1/2)^2 tau + (2n+1) z)).
    """
    tau, z = complex(tau), complex(z)
    if tau.imag <= 0:
        raise ValueError("need Im tau > 0")
    if form == "product":
        n = _nome_terms(tau, cfg.theta_cutoff, z)
        l = np.arange(1, n + 1)
        ql = np.exp(2j * pi * l * tau)
        e = cmath.exp(2j * pi * z)
        prod = np.prod((1 - ql) * (1 - ql * e) * (1 - ql / e))
        return complex(cmath.exp(1j * pi * tau / 4) * 2 * cmath.sin(pi * z) * prod)
    if form == "series":
        # |term| ~ |q|^((n+1/2)^2 / 2); stop once that falls below the cutoff
        qa = abs(cmath.exp(1j * pi * tau))
        bound = int(np.ceil(np.sqrt(max(np.log(cfg.theta_cutoff) / np.log(qa), 1.0)))) + 2
        bound += int(abs(z.imag) / tau.imag) + 2
        n = np.arange(-bound, bound + 1)
        terms = (-1.0) ** n * np.exp(1j * pi * ((n + 0.5) ** 2 * tau + (2 * n + 1) * z))
        return complex(-1j * np.sum(terms))
    raise ValueError("form must be 'product' or 'series'")


def theta_identity_residuals(z: complex, tau: complex, cfg: Config = DEFAULT) -> dict[str, float]:
    """Residuals of the parity, shift and triple-product identities.

    Each residual is divided by the larger magnitude of the two sides it
    compares.
    """
    z, tau = complex(z), complex(tau)
    th = theta(z, tau, cfg=cfg)

    def rel(a, b):
        return abs(a - b) / max(abs(a), abs(b), 1e-300)

    return {
        "odd": rel(theta(-z, tau, cfg=cfg), -th),
        "shift_1": rel(theta(z + 1, tau, cfg=cfg), -th),
        "shift_tau": rel(theta(z + tau, tau, cfg=cfg), -cmath.exp(-2j * pi * z - 1j * pi * tau) * th),
        "product_vs_series": rel(theta(z, tau, "series", cfg), th),
    }


def elliptic_from_divisor(points: Sequence[tuple[complex, int]], tau: complex, tol: float = 1e-12, cfg: Config = DEFAULT) -> Callable[[complex], complex]:
    """prod_k theta(z - z_k)^(m_k), elliptic when sum m_k = 0 and sum m_k z_k = 0."""
    pts = [(complex(z), int(m)) for z, m in points]
    if sum(m for _, m in pts) != 0:
        raise ValueError("multiplicities must sum to zero")
    if abs(sum(m * z for z, m in pts)) > tol:
        raise ValueError("weighted sum of points must vanish exactly (adjust the lifts)")

    def f(z: complex) -> complex:
        out = 1 + 0j
        for zk, m in pts:
            out *= theta(z - zk, tau, cfg=cfg) ** m
        return out

    return f


# -- the cubic group law ----------------------------------------------------


@dataclass(frozen=True)
class CubicPoint:
    x: complex = 0
    y: complex = 0
    infinity: bool = False

    @classmethod
    def at_infinity(cls) -> "CubicPoint":
        return cls(0, 0, True)

    def residual(self, g2: complex, g3: complex) -> float:
        if self.infinity:
            return 0.0
        return abs(self.y**2 - 4 * self.x**3 + g2 * self.x + g3)

    def __neg__(self):
        return self if self.infinity else CubicPoint(self.x, -self.y)

    def snap(self, g2: complex, g3: complex) -> "CubicPoint":
        """Replace y by the square root of 4x^3 - g2 x - g3 nearest to it."""
        if self.infinity:
            return self
        y = cmath.sqrt(4 * self.x**3 - g2 * self.x - g3)
        return CubicPoint(self.x, y if abs(y - self.y) <= abs(y + self.y) else -y)

    def distance(self, other: "CubicPoint") -> float:
        if self.infinity or other.infinity:
            return 0.0 if self.infinity == other.infinity else float("inf")
        return abs(self.x - other.x) + abs(self.y - other.y)


O = CubicPoint.at_infinity()


def cubic_add(P: CubicPoint, Q: CubicPoint, g2: complex, g3: complex, cfg: Config = DEFAULT) -> CubicPoint:
    """Chord and tangent addition on y^2 = 4x^3 - g2 x - g3 with O as identity.

    The third intersection with y = lam x + nu has x3 = lam^2/4 - x1 - x2 by
    Vieta; the sum is its reflection.
    """
    if P.infinity:
        return Q
    if Q.infinity:
        return P
    tol = cfg.tangent_tol
    if abs(P.x - Q.x) < tol:
        if abs(P.y - Q.y) < tol and abs(P.y) >= tol:
            lam = (12 * P.x**2 - g2) / (2 * P.y)
        else:
            return O
    else:
        lam = (Q.y - P.y) / (Q.x - P.x)
    nu = P.y - lam * P.x
    x3 = lam**2 / 4 - P.x - Q.x
    return CubicPoint(x3, -(lam * x3 + nu))


def mu(z: complex, L: Lattice, R: float | None = None, cfg: Config = DEFAULT) -> CubicPoint:
    return CubicPoint(weierstrass_p(z, L, R, cfg), weierstrass_p_prime(z, L, R, cfg))


# -- q-expansions -----------------------------------------------------------


def sigma(k: int, n: int) -> int:
    return sum(d**k for d in range(1, n + 1) if n % d == 0)


@dataclass(frozen=True)
class QExpansion:
    series: QSeries
    weight: int

    def __mul__(self, other: "QExpansion") -> "QExpansion":
        return QExpansion(self.series * other.series, self.weight + other.weight)

    def __getitem__(self, n: int) -> Fraction:
        return self.series[n]

    def coefficients(self) -> dict[int, int]:
        return {n: int(c) for n, c in self.series.items()}

    def evaluate(self, tau: complex) -> complex:
        q = cmath.exp(2j * pi * tau)
        return sum(float(c) * q**n for n, c in self.series.items())


class NonIntegralCoefficient(ArithmeticError):
    pass


def eisenstein_q(k: int, N: int) -> QExpansion:
    """E_4 or E_6 through q^(N-1)."""
    if N < 1:
        raise ValueError("need N >= 1")
    if k == 4:
        c = [1] + [240 * sigma(3, n) for n in range(1, N)]
    elif k == 6:
        c = [1] + [-504 * sigma(5, n) for n in range(1, N)]
    else:
        raise ValueError("only weights 4 and 6 are supported")
    return QExpansion(QSeries(c, order=N), k)


def j_invariant_q(N: int) -> QExpansion:
    """1728 E4^3 / (E4^3 - E6^2) through q^(N-1), starting at q^-1."""
    if N < 1:
        raise ValueError("need N >= 1")
    m = N + 2
    e4, e6 = eisenstein_q(4, m).series, eisenstein_q(6, m).series
    e43 = e4 * e4 * e4
    disc = e43 - e6 * e6
    j = e43 * disc.inverse() * 1728
    out = QSeries([j[n] for n in range(-1, N)], order=N, min_degree=-1)
    if not out.is_integral():
        raise NonIntegralCoefficient(f"J has non-integral coefficients: {out.coeffs}")
    return QExpansion(out, 0)


def eisenstein_lattice(k: int, tau: complex, R: int) -> complex:
    """G_k(tau) as the square partial sum over |m|, |n| <= R."""
    tau = complex(tau)
    if tau.imag <= 0:
        raise ValueError("need Im tau > 0")
    r = np.arange(-R, R + 1)
    m, n = np.meshgrid(r, r, indexing="ij")
    l = (m + n * tau).ravel()
    l = l[l != 0]
    return complex(np.sum(l ** (-float(k))))


def zeta(k: int) -> float:
    if k == 4:
        return pi**4 / 90
    if k == 6:
        return pi**6 / 945
    raise ValueError("only zeta(4) and zeta(6) are tabulated")
