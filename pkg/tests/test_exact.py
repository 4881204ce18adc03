from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from agkit.exact import DegreeCapExceeded, MPoly, PolyRing, QSeries, RingMismatch, rank, rref
from agkit.exact.graded import InhomogeneousError, graded_piece_basis
from agkit.exact.series import RatFunc, series_coeffs

from oracles import convolve, fraction_free_rank, monomial_count

R3 = PolyRing(3)
XY = PolyRing(("x", "y"))

small = st.integers(-4, 4)


@st.composite
def polys(draw, ring=R3, max_deg=3, max_terms=4):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        exps = tuple(draw(st.integers(0, max_deg)) for _ in range(ring.nvars))
        terms[exps] = draw(small)
    return MPoly(ring, terms)


def test_difference_of_squares():
    x, y = XY.gens
    assert (x + y) * (x - y) == x**2 - y**2


def test_times_zero():
    assert (XY.parse("x^3 + 2*y") * XY.zero()).is_zero()


def test_hand_expansion():
    f = R3.parse("x0*x2 - x1^2") * R3.gen(0)
    assert f == R3.parse("x0^2*x2 - x0*x1^2")


def test_parser_grammar():
    p = XY.parse(" 3/4 * (x + y)^2 - x*y ")
    assert p.coefficient((1, 1)) == Fraction(1, 2)
    assert p.coefficient((2, 0)) == Fraction(3, 4)
    assert XY.parse("-x") == -XY.gen(0)
    with pytest.raises(ValueError):
        XY.parse("x + ")
    with pytest.raises(ValueError):
        XY.parse("z")


def test_no_zero_coefficients_stored():
    p = XY.parse("x - x + y")
    assert list(p.terms) == [(0, 1)]


def test_ring_mismatch():
    with pytest.raises(RingMismatch):
        R3.gen(0) + XY.gen(0)


def test_degree_cap():
    with pytest.raises(DegreeCapExceeded):
        XY.gen(0) ** 65


def test_weighted_degree_and_homogeneity():
    ring = PolyRing(("u", "v", "w"), (3, 3, 2))
    f = ring.parse("u*v - w^3")
    assert f.degree() == 6 and f.is_homogeneous()
    assert not ring.parse("u + w").is_homogeneous()


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@settings(max_examples=40, deadline=None)
@given(polys(), polys())
def test_degree_of_product(a, b):
    if a and b:
        assert (a * b).degree() == a.degree() + b.degree()
    if a or b:
        assert (a + b).is_zero() or (a + b).degree() <= max(a.degree() if a else 0, b.degree() if b else 0)


@pytest.mark.parametrize(
    "gens, nvars, d, codim",
    [([], 3, 2, 6), (["x0"], 2, 3, 1), (["x0*x2 - x1^2"], 3, 4, 9)],
)
def test_graded_piece_examples(gens, nvars, d, codim):
    ring = PolyRing(nvars)
    piece = graded_piece_basis([ring.parse(g) for g in gens], d, ring)
    assert piece.codim == codim


@pytest.mark.parametrize("nvars", range(1, 6))
def test_graded_piece_zero_ideal(nvars):
    ring = PolyRing(nvars)
    for d in range(11):
        assert graded_piece_basis([], d, ring).codim == monomial_count(nvars, d)


def test_graded_piece_inhomogeneous():
    with pytest.raises(InhomogeneousError):
        graded_piece_basis([R3.parse("x0 + x1^2")], 3)


def test_rref_examples():
    eye = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    red, piv = rref(eye)
    assert red == eye and piv == [0, 1, 2]
    red, piv = rref([[1, 2], [2, 4]])
    assert red == [[1, 2], [0, 0]] and len(piv) == 1


matrices = st.lists(st.lists(st.integers(-5, 5), min_size=6, max_size=6), min_size=4, max_size=4)


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_rref_rank_matches_bareiss(m):
    assert rank(m) == fraction_free_rank(m)


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_rref_idempotent(m):
    once, piv = rref(m)
    twice, piv2 = rref(once)
    assert once == twice and piv == piv2
    assert piv == sorted(piv)


series = st.lists(st.builds(Fraction, st.integers(-9, 9), st.integers(1, 5)), min_size=1, max_size=8)


@settings(max_examples=60, deadline=None)
@given(series, series)
def test_qseries_product_is_convolution(a, b):
    n = min(len(a), len(b))
    prod = QSeries(a, order=n) * QSeries(b, order=n)
    assert [prod[i] for i in range(n)] == convolve(a, b, n)


@settings(max_examples=40, deadline=None)
@given(series)
def test_qseries_inverse(a):
    if a[0] == 0:
        a = [Fraction(1)] + a[1:]
    s = QSeries(a)
    one = s * s.inverse()
    assert [one[i] for i in range(len(a))] == [1] + [0] * (len(a) - 1)


def test_qseries_truncation_is_respected():
    s = QSeries([1, 2, 3], order=3)
    with pytest.raises(IndexError):
        s[3]
    t = QSeries([1, 1], order=2) * s
    assert t.order == 2


def test_laurent_min_degree():
    s = QSeries([1, 0, 5], order=2, min_degree=-1)
    assert s[-1] == 1 and s[1] == 5 and s[-5] == 0


def test_ratfunc_reduction_and_expansion():
    # (1 - t^2)/(1 - t)^3 = (1 + t)/(1 - t)^2
    r = RatFunc.from_coeffs([1, 0, -1], 3).reduced()
    assert r.denominator_pow == 2 and r.numerator_coeffs() == [1, 1]
    assert r.expand(5) == [1, 3, 5, 7, 9]
    assert series_coeffs([1], [1, -1], 4) == [1, 1, 1, 1]
