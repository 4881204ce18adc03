import cmath
import random
from math import pi

import numpy as np
import pytest

from agkit.config import DEFAULT
from agkit.elliptic import (
    O,
    CubicPoint,
    EllipticParams,
    Lattice,
    PoleError,
    cubic_add,
    cubic_relation_residual,
    eisenstein_lattice,
    eisenstein_q,
    elliptic_from_divisor,
    j_invariant_q,
    mu,
    theta,
    theta_identity_residuals,
    weierstrass_p,
    weierstrass_p_prime,
    zeta,
)

from oracles import E4_COEFFS, E6_COEFFS, J_COEFFS, sigma

SQUARE = Lattice(1, 1j)
RECT = Lattice(1, 2j)
HEX = Lattice.from_tau(cmath.exp(2j * pi / 3))
LATTICES = [SQUARE, RECT, HEX, Lattice.from_tau(0.3 + 1.1j)]

rng = random.Random(5)
ZS = [complex(rng.uniform(0.05, 0.95), rng.uniform(0.05, 0.95)) for _ in range(10)]


def _rel(a, b):
    return abs(a - b) / max(abs(a), abs(b))


@pytest.mark.parametrize("L", LATTICES)
def test_p_is_even_and_p_prime_odd(L):
    for z in ZS:
        w = z * L.g1 + 0.3 * z.imag * L.g2
        assert _rel(weierstrass_p(-w, L), weierstrass_p(w, L)) < 1e-9
        assert _rel(weierstrass_p_prime(-w, L), -weierstrass_p_prime(w, L)) < 1e-9


@pytest.mark.parametrize("L", LATTICES)
def test_periodicity(L):
    for z in ZS[:5]:
        p = weierstrass_p(z, L)
        for w in (L.g1, L.g2):
            assert abs(weierstrass_p(z + w, L) - p) / abs(p) < 1e-5


def test_truncation_radius_convergence():
    z = 0.3 + 0.2j
    assert abs(weierstrass_p(z, RECT, 400) - weierstrass_p(z, RECT, 800)) < 1e-8


def test_pole_guard():
    with pytest.raises(PoleError):
        weierstrass_p(0, SQUARE)
    with pytest.raises(PoleError):
        weierstrass_p_prime(1 + 1j, SQUARE)


def test_lattice_orientation():
    with pytest.raises(ValueError):
        Lattice(1j, 1)


@pytest.mark.parametrize("L", LATTICES)
def test_cubic_relation(L):
    for z in ZS + [complex(rng.uniform(0.05, 0.95), rng.uniform(0.05, 0.95)) for _ in range(10)]:
        r = cubic_relation_residual(z, L)
        assert r < DEFAULT.cubic_tol
        assert abs(cubic_relation_residual(-z, L) - r) < 1e-10
        assert abs(cubic_relation_residual(z + L.g2, L) - r) < 1e-6


def test_half_period_is_a_root():
    assert abs(weierstrass_p_prime(0.5, SQUARE)) < 1e-5
    assert abs(weierstrass_p_prime(0.5j, SQUARE)) < 1e-5


def test_square_lattice_has_no_g3():
    prm = EllipticParams.of(SQUARE)
    assert abs(prm.g3) < 1e-8 * abs(prm.g2)


TAUS = [1j, 0.5 + 0.9j, -0.3 + 1.4j, 0.1 + 0.6j]


@pytest.mark.parametrize("tau", TAUS)
def test_theta_zero(tau):
    assert theta(0, tau) == 0
    assert abs(theta(0, tau, "series")) < 1e-14


@pytest.mark.parametrize("tau", TAUS)
def test_theta_identities(tau):
    for z in ZS[:6]:
        res = theta_identity_residuals(z * 0.8, tau)
        assert max(res.values()) < DEFAULT.identity_tol, res


def test_theta_bad_input():
    with pytest.raises(ValueError):
        theta(0.1, -1j)
    with pytest.raises(ValueError):
        theta(0.1, 1j, form="sum")


def test_divisor_function_is_elliptic():
    tau = 0.2 + 1.1j
    w = 0.3 + 0.2j
    f = elliptic_from_divisor([(w, 1), (-w, 1), (0, -2)], tau)
    for z in ZS[:4]:
        z = z * 0.7
        v = f(z)
        assert _rel(f(z + 1), v) < 1e-8
        assert _rel(f(z + tau), v) < 1e-8


def test_divisor_needs_exact_lift():
    tau = 1.3j
    with pytest.raises(ValueError):
        elliptic_from_divisor([(0.2, 1), (0.3, 1), (-0.5, -2)], tau)
    f = elliptic_from_divisor([(0.2, 1), (0.3, 1), (0.25, -2)], tau)
    z = 0.41 + 0.37j
    assert _rel(f(z + tau), f(z)) < 1e-8
    with pytest.raises(ValueError):
        elliptic_from_divisor([(0.2, 1)], tau)


def test_empty_divisor_is_constant():
    f = elliptic_from_divisor([], 1j)
    assert f(0.3) == 1


@pytest.fixture(scope="module")
def curve():
    L = Lattice.from_tau(0.2 + 1.2j)
    prm = EllipticParams.of(L)
    return L, prm.g2, prm.g3


def test_identity_and_inverse(curve):
    L, g2, g3 = curve
    P = mu(0.31 + 0.17j, L).snap(g2, g3)
    assert cubic_add(P, O, g2, g3) == P
    assert cubic_add(O, P, g2, g3) == P
    assert cubic_add(P, -P, g2, g3).infinity
    assert cubic_add(O, O, g2, g3).infinity


def test_addition_is_commutative_and_associative(curve):
    L, g2, g3 = curve
    r = random.Random(9)
    for _ in range(10):
        P, Q, S = (mu(complex(r.uniform(0.05, 0.95), r.uniform(0.05, 0.95)), L).snap(g2, g3) for _ in range(3))
        assert cubic_add(P, Q, g2, g3).distance(cubic_add(Q, P, g2, g3)) < 1e-9
        left = cubic_add(cubic_add(P, Q, g2, g3), S, g2, g3)
        right = cubic_add(P, cubic_add(Q, S, g2, g3), g2, g3)
        assert left.distance(right) < DEFAULT.assoc_tol


def test_addition_matches_z_addition(curve):
    L, g2, g3 = curve
    for z1, z2 in [(0.21 + 0.13j, 0.33 + 0.41j), (0.1 + 0.5j, 0.62 + 0.07j), (0.4 + 0.3j, 0.4 + 0.3j)]:
        s = cubic_add(mu(z1, L), mu(z2, L), g2, g3)
        m = mu(z1 + z2, L)
        assert s.distance(m) / max(abs(m.x) + abs(m.y), 1) < DEFAULT.group_tol


def test_sum_stays_on_curve(curve):
    L, g2, g3 = curve
    r = random.Random(2)
    for _ in range(10):
        P, Q = (mu(complex(r.uniform(0.05, 0.95), r.uniform(0.05, 0.95)), L).snap(g2, g3) for _ in range(2))
        S = cubic_add(P, Q, g2, g3)
        scale = max(abs(S.x) ** 3, abs(S.y) ** 2, 1)
        assert S.residual(g2, g3) / scale < DEFAULT.curve_tol


def test_doubling_a_two_torsion_point(curve):
    L, g2, g3 = curve
    P = CubicPoint(weierstrass_p(0.5, L), 0)
    assert cubic_add(P, P, g2, g3).infinity


def test_q_expansion_coefficients():
    assert [eisenstein_q(4, 5)[n] for n in range(5)] == E4_COEFFS
    assert [eisenstein_q(6, 4)[n] for n in range(4)] == E6_COEFFS
    j = j_invariant_q(3)
    assert {n: j[n] for n in range(-1, 3)} == J_COEFFS
    assert j.coefficients() == J_COEFFS


def test_e4_squared_is_e8():
    e8 = eisenstein_q(4, 6) * eisenstein_q(4, 6)
    assert e8.weight == 8
    assert [e8[n] for n in range(6)] == [1] + [480 * sigma(7, n) for n in range(1, 6)]


def test_j_is_integral():
    j = j_invariant_q(10)
    assert all(c.denominator == 1 for _, c in j.series.items())


def test_q_expansion_bad_input():
    with pytest.raises(ValueError):
        eisenstein_q(8, 3)
    with pytest.raises(ValueError):
        j_invariant_q(0)


def test_eisenstein_at_elliptic_points():
    rho = cmath.exp(2j * pi / 3)
    assert abs(eisenstein_lattice(4, rho, 300)) < 1e-4
    assert abs(eisenstein_lattice(6, 1j, 300)) < 1e-4


def _cross(k, tau, R):
    e = 2 * zeta(k) * eisenstein_q(k, 12).evaluate(tau)
    return abs(eisenstein_lattice(k, tau, R) - e) / abs(e)


def test_lattice_sum_matches_q_expansion():
    assert _cross(4, 2j, 300) < DEFAULT.cross_tol


@pytest.mark.parametrize("tau", [2j, 0.3 + 1.2j, -0.4 + 0.95j])
def test_square_sum_converges_quadratically(tau):
    # the weight-4 square sum misses an O(R^-2) tail; weight 6 is far smaller
    ratio = _cross(4, tau, 150) / _cross(4, tau, 300)
    assert 3.5 < ratio < 4.5
    assert _cross(6, tau, 300) < 1e-10


def test_j_at_i():
    assert abs(j_invariant_q(12).evaluate(1j) - 1728) < 1e-6


def test_upper_half_plane_required():
    with pytest.raises(ValueError):
        eisenstein_lattice(4, -1j, 10)
    assert np.isfinite(abs(eisenstein_lattice(4, 1j, 10)))
