"""The acceptance suite behind ``agkit verify-all``.

Each check is a pure function of the config returning what was expected,
what was computed and whether they agree. Random inputs come from a
``random.Random`` seeded by ``config.seed`` so every run is replayable.
"""

from __future__ import annotations

import cmath
import random
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import comb, factorial, pi
from typing import Any, Callable

from .charclasses import chern_ring, count_lines, hrr_projective, riemann_hurwitz_check, total_chern_sym
from .config import DEFAULT, Config
from .elliptic import (
    EllipticParams,
    Lattice,
    cubic_add,
    cubic_relation_residual,
    eisenstein_lattice,
    eisenstein_q,
    j_invariant_q,
    mu,
    theta_identity_residuals,
    weierstrass_p,
    zeta,
)
from .exact.poly import MPoly, PolyRing
from .hilbert import DiagonalGroup, GradedQuotient, bezout_check, hilbert_data, hilbert_series, molien_series
from .ideal import in_radical
from .localmult import line_multiplicity_oracle, local_multiplicity
from .pluecker import ExtElement, is_decomposable, pluecker_relations, wedge
from .toric import (
    Cone,
    Sublattice,
    blowup_fan,
    c3_minus_axis_fan,
    cp2_fan,
    dual_cone,
    hilbert_basis,
    morphism_compatible,
    octant_fan,
    relation_lattice,
    resolve_2d,
)


@dataclass
class CheckResult:
    id: int
    name: str
    expected: Any
    computed: Any
    passed: bool
    basis: str
    seconds: float = 0.0
    budget: float = 0.0
    error: str | None = None

    @property
    def within_budget(self) -> bool:
        return self.seconds <= self.budget


@dataclass
class RunReport:
    checks: list[CheckResult] = field(default_factory=list)
    seed: int = DEFAULT.seed
    extended: bool = False

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def total_seconds(self) -> float:
        return sum(c.seconds for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "seed": self.seed,
            "extended": self.extended,
            "total_seconds": round(self.total_seconds, 3),
            "checks": [asdict(c) | {"seconds": round(c.seconds, 3)} for c in self.checks],
        }

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            flag = "PASS" if c.passed else "FAIL"
            note = f"  ({c.error})" if c.error else ""
            out.append(f"[{flag}] {c.id:>2} {c.name}: {c.seconds:.2f}s / {c.budget:g}s{note}")
        out.append(f"{sum(c.passed for c in self.checks)}/{len(self.checks)} passed, seed {self.seed}, {self.total_seconds:.1f}s")
        return out


def _jsonable(x):
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else str(x)
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, MPoly):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


# A check returns (expected, computed, passed).
Check = Callable[[Config], tuple[Any, Any, bool]]
CHECKS: list[tuple[int, str, float, str, Check]] = []


def check(num: int, name: str, budget: float, basis: str):
    def deco(fn: Check) -> Check:
        CHECKS.append((num, name, budget, basis, fn))
        return fn

    return deco


def _rng(cfg: Config, salt: int) -> random.Random:
    return random.Random(cfg.seed * 1000 + salt)


def _random_form(ring: PolyRing, d: int, rng: random.Random, lo: int = -5, hi: int = 5) -> MPoly:
    while True:
        p = MPoly(ring, {m: rng.randint(lo, hi) for m in ring.monomials_of_degree(d)})
        if p:
            return p


# -- exact checks -----------------------------------------------------------


@check(1, "Hilbert series of the polynomial ring", 1, "closed form")
def _free_ring(cfg):
    got, want = [], []
    for n in range(5):
        data = hilbert_data(GradedQuotient(PolyRing(n + 1)))
        s = data.series
        got.append({"num": s.numerator_coeffs(), "pow": s.denominator_pow, "P": [data.P(d) for d in range(8)]})
        want.append({"num": [1], "pow": n + 1, "P": [comb(n + d, n) for d in range(8)]})
    return want, got, got == want


@check(2, "Hilbert polynomial of plane curves", 1, "closed form")
def _plane_curves(cfg):
    ring = PolyRing(3)
    got, want = [], []
    for k in range(1, 7):
        f = ring.gen(0) ** k + ring.gen(1) ** k + ring.gen(2) ** k
        data = hilbert_data(GradedQuotient(ring, [f]))
        got.append(list(data.polynomial))
        want.append([Fraction(-k * (k - 3), 2), Fraction(k)])
    return want, got, got == want


@check(3, "Bezout via the Hilbert polynomial", 30, "product of degrees")
def _bezout(cfg):
    rng = _rng(cfg, 3)
    ring = PolyRing(3)
    want, got = [], []
    for _ in range(20):
        d1, d2 = rng.randint(1, 4), rng.randint(1, 4)
        f, g = _random_form(ring, d1, rng), _random_form(ring, d2, rng)
        r = bezout_check(f, g)
        want.append(d1 * d2)
        got.append(r.hilbert_constant)
    return want, got, want == got


@check(4, "Local intersection multiplicity", 20, "univariate order")
def _local(cfg):
    ring = PolyRing(("y1", "y2"))
    y1, y2 = ring.gens
    want = [2, 1]
    got = [local_multiplicity(y2, y2 - y1**2).value, local_multiplicity(y2, y2 - y1).value]
    rng = _rng(cfg, 4)
    for _ in range(25):
        while True:
            g = MPoly(ring, {m: rng.randint(-3, 3) for d in range(1, 4) for m in ring.monomials_of_degree(d) if rng.random() < 0.6})
            if any(m[1] == 0 for m in g.terms):
                break
        want.append(line_multiplicity_oracle(g))
        # a random invertible linear change of coordinates preserves multiplicity
        while True:
            a, b, c, d = (rng.randint(-2, 2) for _ in range(4))
            if a * d - b * c:
                break
        images = [y1 * a + y2 * b, y1 * c + y2 * d]
        got.append(local_multiplicity(y2.substitute(images), g.substitute(images)).value)
    return want, got, want == got


@check(5, "Radical membership", 1, "Rabinowitz")
def _radical(cfg):
    ring = PolyRing(("x",))
    x = ring.gen(0)
    got = [in_radical(x, [x**2]), in_radical(x + 1, [x**2])]
    return [True, False], got, got == [True, False]


@check(6, "Molien series against uv - w^n", 10, "weighted Hilbert series")
def _molien(cfg):
    want, got = [], []
    for n in range(2, 7):
        m = molien_series(DiagonalGroup.cyclic(n, (1, n - 1)), 13)
        q = GradedQuotient.parse(("u", "v", "w"), [f"u*v - w^{n}"], (n, n, 2))
        want.append([int(c) for c in hilbert_series(q).expand(13)])
        got.append([int(m.series[i]) for i in range(13)])
    return want, got, want == got


@check(7, "Pluecker relations and decomposability", 5, "w ^ w = 0")
def _pluecker(cfg):
    rels = pluecker_relations(2, 4)
    ring = rels[0].ring
    target = ring.parse("x12*x34 - x13*x24 + x14*x23")
    ok = len(rels) == 1 and (rels[0] == target or rels[0] == -target)
    rng = _rng(cfg, 7)
    agree = 0
    kinds = []
    for i in range(50):
        n = rng.choice((4, 5))
        if i % 2:
            u = ExtElement.vector([rng.randint(-3, 3) for _ in range(n)])
            v = ExtElement.vector([rng.randint(-3, 3) for _ in range(n)])
            w = wedge(u, v)
        else:
            w = ExtElement(n, 2, {(a, b): rng.randint(-3, 3) for a in range(1, n + 1) for b in range(a + 1, n + 1)})
        if not w:
            w = ExtElement.basis(n, 1, 2)
        dec = is_decomposable(w)
        kinds.append(dec)
        agree += dec == (not wedge(w, w))
    got = {"relation": str(rels[0]), "agree": agree, "decomposable": sum(kinds)}
    passed = ok and agree == 50 and 0 < sum(kinds) < 50
    return {"relation": str(target), "agree": 50}, got, passed


@check(8, "Total Chern class of Sym^3", 1, "symmetric reduction")
def _sym3(cfg):
    ring = chern_ring(2)
    want = ["1", "6*c1", "11*c1^2 + 10*c2", "6*c1^3 + 30*c1*c2", "18*c1^2*c2 + 9*c2^2"]
    expr = total_chern_sym(2, "sym(3)", 4)
    got = [expr.part(d) for d in range(5)]
    passed = all(g == ring.parse(w).change_ring(g.ring) for g, w in zip(got, want))
    return want, [str(g) for g in got], passed


@check(9, "Riemann-Roch on CP^n", 1, "binomial formula")
def _hrr(cfg):
    want, got = [], []
    for n in range(6):
        for k in range(-2, 7):
            num = 1
            for i in range(1, n + 1):
                num *= k + i
            want.append(Fraction(num, factorial(n)))
            got.append(hrr_projective(n, k))
    return want, got, want == got


@check(10, "Line counts", 2, "Schubert calculus")
def _lines(cfg):
    got = [count_lines(p) for p in ("four-lines", "cubic-surface", "quintic-lines")]
    return [2, 27, 2875], got, got == [2, 27, 2875]


@check(11, "Toric Hilbert bases and resolutions", 5, "continued fractions")
def _toric(cfg):
    want, got = [], []
    for n in range(2, 9):
        c = Cone([(1, 0), (n - 1, n)])
        hb = hilbert_basis(c)
        want.append([[1, 0], [1, 1], [n - 1, n], f"u*v - w^{n}"])
        rel = relation_lattice(hb, ["u", "w", "v"]).binomials
        got.append([list(map(int, v)) for v in hb] + [rel[0] if len(rel) == 1 else list(rel)])
    for n in range(2, 9):
        want.append([n - 1, n - 1])
        lattice_form = resolve_2d(Cone([(1, 0), (0, 1)], Sublattice(n, (1, -1))))
        plain_form = resolve_2d(Cone([(1, 0), (1, n)]))
        got.append([len(lattice_form.inserted), len(plain_form.inserted)])
    # 7/3 = 3 - 1/(2 - 1/2), worked by hand; the chain is read from the (0, 1) side
    res = resolve_2d(Cone([(1, 0), (0, 1)], Sublattice(7, (1, 3))))
    want.append([3, 2, 2])
    got.append(res.self_intersections()[::-1])
    return want, got, want == got


@check(12, "Fan morphisms", 1, "cone containment")
def _fans(cfg):
    got = [
        morphism_compatible(blowup_fan(), octant_fan(), [[1, 0], [0, 1]]),
        morphism_compatible(c3_minus_axis_fan(), cp2_fan(), [[1, 0, -1], [0, 1, -1]]),
    ]
    return [True, True], got, all(got)


@check(15, "Riemann-Hurwitz", 1, "genus formula")
def _rh(cfg):
    cases = [(1, 0, 2, [2, 2, 2, 2])] + [(0, 0, n, [n, n]) for n in range(2, 7)]
    got = [riemann_hurwitz_check(*c) for c in cases]
    control = riemann_hurwitz_check(1, 0, 2, [2, 2])
    return [True] * len(cases) + [False], got + [control], all(got) and not control


# -- numeric checks -----------------------------------------------------------

TAU = 1.5j


def _sample_points(rng: random.Random, k: int) -> list[complex]:
    return [complex(rng.uniform(0.1, 0.9), rng.uniform(0.1, 1.4)) for _ in range(k)]


@check(13, "Elliptic and theta identities", 60, "functional equations")
def _elliptic(cfg):
    L = Lattice.from_tau(TAU)
    rng = _rng(cfg, 13)
    pts = _sample_points(rng, 20)
    period = 0.0
    for z in pts[:5]:
        p = weierstrass_p(z, L, cfg=cfg)
        for w in (1, TAU):
            period = max(period, abs(weierstrass_p(z + w, L, cfg=cfg) - p) / abs(p))
    cubic = max(cubic_relation_residual(z, L, cfg=cfg) for z in pts)
    th = {"odd": 0.0, "shift_1": 0.0, "shift_tau": 0.0, "product_vs_series": 0.0}
    for z in pts[:10]:
        for k, v in theta_identity_residuals(z, TAU, cfg).items():
            th[k] = max(th[k], v)
    prm = EllipticParams.of(L, cfg=cfg)
    group = 0.0
    for z1, z2 in zip(pts[10:15], pts[15:20]):
        s = cubic_add(mu(z1, L, cfg=cfg), mu(z2, L, cfg=cfg), prm.g2, prm.g3, cfg)
        direct = mu(z1 + z2, L, cfg=cfg)
        group = max(group, s.distance(direct) / max(abs(direct.x) + abs(direct.y), 1.0))
    got = {"periodicity": period, "cubic": cubic, "group_law": group} | {f"theta_{k}": v for k, v in th.items()}
    limits = {"periodicity": cfg.period_tol, "cubic": cfg.cubic_tol, "group_law": cfg.group_tol} | {f"theta_{k}": cfg.identity_tol for k in th}
    return {k: f"< {v:g}" for k, v in limits.items()}, got, all(got[k] < limits[k] for k in limits)


@check(14, "Eisenstein series and the j-invariant", 30, "q-expansions")
def _modular(cfg):
    e4 = eisenstein_q(4, 4).coefficients()
    e6 = eisenstein_q(6, 4).coefficients()
    j = j_invariant_q(3).coefficients()
    rho = cmath.exp(2j * pi / 3)
    g4 = abs(eisenstein_lattice(4, rho, cfg.eisenstein_radius))
    g6 = abs(eisenstein_lattice(6, 1j, cfg.eisenstein_radius))
    tau = 2j
    lat = eisenstein_lattice(4, tau, cfg.eisenstein_radius)
    qexp = 2 * zeta(4) * eisenstein_q(4, cfg.q_terms).evaluate(tau)
    cross = abs(lat - qexp) / abs(qexp)
    want = {
        "E4": {0: 1, 1: 240, 2: 2160, 3: 6720},
        "E6": {0: 1, 1: -504, 2: -16632, 3: -122976},
        "J": {-1: 1, 0: 744, 1: 196884, 2: 21493760},
        "G4(rho)": f"< {cfg.eisenstein_tol:g}",
        "G6(i)": f"< {cfg.eisenstein_tol:g}",
        "E4 cross-check": f"< {cfg.cross_tol:g}",
    }
    got = {"E4": e4, "E6": e6, "J": j, "G4(rho)": g4, "G6(i)": g6, "E4 cross-check": cross}
    passed = (
        e4 == want["E4"]
        and e6 == want["E6"]
        and j == want["J"]
        and g4 < cfg.eisenstein_tol
        and g6 < cfg.eisenstein_tol
        and cross < cfg.cross_tol
    )
    return want, got, passed


# -- extended, randomized properties ---------------------------------------


def _extended_checks(cfg: Config) -> list[tuple[int, str, float, str, Check]]:
    def theta_random(cfg):
        rng = _rng(cfg, 101)
        worst = 0.0
        for _ in range(30):
            tau = complex(rng.uniform(-0.5, 0.5), rng.uniform(0.8, 2.0))
            z = complex(rng.uniform(-1, 1), rng.uniform(-0.5, 0.5) * tau.imag)
            worst = max(worst, max(theta_identity_residuals(z, tau, cfg).values()))
        return f"< {cfg.identity_tol:g}", worst, worst < cfg.identity_tol

    def assoc(cfg):
        L = Lattice.from_tau(TAU)
        prm = EllipticParams.of(L, cfg=cfg)
        rng = _rng(cfg, 102)
        worst = 0.0
        # truncated sums leave mu(z) slightly off the curve; associativity is a
        # statement about points on it
        for _ in range(20):
            P, Q, R = (mu(z, L, cfg=cfg).snap(prm.g2, prm.g3) for z in _sample_points(rng, 3))
            a = cubic_add(cubic_add(P, Q, prm.g2, prm.g3, cfg), R, prm.g2, prm.g3, cfg)
            b = cubic_add(P, cubic_add(Q, R, prm.g2, prm.g3, cfg), prm.g2, prm.g3, cfg)
            worst = max(worst, a.distance(b))
        return f"< {cfg.assoc_tol:g}", worst, worst < cfg.assoc_tol

    def dual_involution(cfg):
        rng = _rng(cfg, 103)
        bad = 0
        for _ in range(40):
            while True:
                u = (rng.randint(-6, 6), rng.randint(-6, 6))
                v = (rng.randint(-6, 6), rng.randint(-6, 6))
                if u[0] * v[1] - u[1] * v[0]:
                    break
            c = Cone([u, v])
            bad += set(dual_cone(dual_cone(c)).generators) != set(c.generators)
        return 0, bad, bad == 0

    def bezout_plane(cfg):
        rng = _rng(cfg, 104)
        ring = PolyRing(3)
        bad = 0
        for _ in range(10):
            d1, d2 = rng.randint(1, 3), rng.randint(1, 3)
            bad += not bezout_check(_random_form(ring, d1, rng), _random_form(ring, d2, rng)).agrees
        return 0, bad, bad == 0

    return [
        (101, "theta identities at random tau", 30, "functional equations", theta_random),
        (102, "group law associativity", 30, "group axioms", assoc),
        (103, "dual cone involution", 5, "duality", dual_involution),
        (104, "Bezout on fresh pairs", 30, "product of degrees", bezout_plane),
    ]


def run_check(entry, cfg: Config) -> CheckResult:
    num, name, budget, basis, fn = entry
    start = time.perf_counter()
    try:
        expected, computed, passed = fn(cfg)
        error = None
    except Exception as exc:  # a crashing check is a failing check
        expected, computed, passed, error = None, None, False, f"{type(exc).__name__}: {exc}"
    seconds = time.perf_counter() - start
    return CheckResult(num, name, _jsonable(expected), _jsonable(computed), bool(passed), basis, seconds, budget, error)


def verify_all(config: Config = DEFAULT, extended: bool = False, only: list[int] | None = None) -> RunReport:
    entries = sorted(CHECKS, key=lambda e: e[0])
    if extended:
        entries += _extended_checks(config)
    if only:
        entries = [e for e in entries if e[0] in only]
    report = RunReport(seed=config.seed, extended=extended)
    for e in entries:
        report.checks.append(run_check(e, config))
    return report
