import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from agkit.exact import MPoly, PolyRing
from agkit.exact.graded import graded_piece_basis
from agkit.ideal import GREVLEX, LEX, MonomialOrder, buchberger, ideal_contains, in_radical, is_empty_variety, normal_form

X = PolyRing(("x",))
XY = PolyRing(("x", "y"))
R3 = PolyRing(3)
XYZT = PolyRing(("x", "y", "z", "t"))

TWISTED = ["x*t - y*z", "x*z - y^2", "y*t - z^2"]

SUITE = [
    (X, ["x", "x - 1"]),
    (R3, ["x0*x2 - x1^2"]),
    (XY, ["x^2 + y^2 - 1", "x - 1", "y - 1"]),
    (XYZT, TWISTED),
    (XY, ["x^2 + 2*x*y + y^2"]),
    (XY, ["x^2*y - 1", "x*y^2 - x"]),
]


def _gb(ring, gens, order=GREVLEX):
    return buchberger([ring.parse(g) for g in gens], order, ring=ring)


def test_unit_ideal():
    gb = _gb(X, ["x", "x - 1"])
    assert gb.is_unit() and [str(p) for p in gb.polys] == ["1"]


def test_principal_ideal_is_its_own_basis():
    gb = _gb(R3, ["x0*x2 - x1^2"])
    assert len(gb.polys) == 1 and gb.contains(R3.parse("x0*x2 - x1^2"))


def test_twisted_cubic_standard_counts():
    gb = _gb(XYZT, TWISTED)
    assert [len(gb.standard_monomials(d)) for d in range(7)] == [3 * d + 1 for d in range(7)]


@pytest.mark.parametrize("ring, gens", SUITE)
@pytest.mark.parametrize("order", [GREVLEX, LEX])
def test_buchberger_closure_and_reduced(ring, gens, order):
    gb = _gb(ring, gens, order)
    assert gb.verify()
    leads = gb.leading_monomials()
    for i, a in enumerate(leads):
        for j, b in enumerate(leads):
            if i != j:
                assert not all(x <= y for x, y in zip(a, b))
    # same ideal as the input
    for g in gens:
        assert gb.contains(ring.parse(g))
    for p in gb.polys:
        assert ideal_contains([ring.parse(g) for g in gens], p, order)


def test_normal_form_examples():
    assert normal_form(XY.parse("x*y"), _gb(XY, ["x"])).is_zero()
    assert normal_form(X.one(), _gb(X, ["x", "x - 1"])).is_zero()


def test_normal_form_depends_on_order():
    # with x0 x2 as leading term (lex) x1^4 is already reduced;
    # under grevlex x1^2 leads and x1^4 -> x0^2 x2^2
    f = R3.parse("x1^4")
    assert normal_form(f, _gb(R3, ["x0*x2 - x1^2"], LEX)) == f
    assert normal_form(f, _gb(R3, ["x0*x2 - x1^2"], GREVLEX)) == R3.parse("x0^2*x2^2")


small = st.integers(-3, 3)


@st.composite
def poly3(draw):
    return MPoly(R3, {tuple(draw(st.integers(0, 3)) for _ in range(3)): draw(small) for _ in range(draw(st.integers(0, 4)))})


TWISTED_GB = _gb(XYZT, TWISTED)
CONIC_GB = _gb(R3, ["x0*x2 - x1^2", "x0 + x1 + x2"])


@settings(max_examples=50, deadline=None)
@given(poly3(), poly3(), small, small)
def test_normal_form_idempotent_and_linear(f, g, a, b):
    gb = CONIC_GB
    nf = gb.normal_form
    assert nf(nf(f)) == nf(f)
    assert nf(f * a + g * b) == nf(nf(f) * a + nf(g) * b)
    assert gb.contains(f - nf(f))
    assert all(gb.is_standard(m) for m in nf(f).terms)


@pytest.mark.parametrize(
    "ring, gens, expected",
    [(X, ["x", "x - 1"], True), (R3, ["x0*x2 - x1^2"], False), (XY, ["x^2 + y^2 - 1", "x - 1", "y - 1"], True)],
)
def test_empty_variety(ring, gens, expected):
    polys = [ring.parse(g) for g in gens]
    assert is_empty_variety(polys, GREVLEX, ring) is expected
    assert is_empty_variety(polys, LEX, ring) is expected


@pytest.mark.parametrize(
    "ring, f, gens, expected",
    [
        (X, "x", ["x^2"], True),
        (X, "x + 1", ["x^2"], False),
        (XY, "x + y", ["x^2 + 2*x*y + y^2"], True),
        (XY, "x", ["x^3", "y^2"], True),
        (XY, "x - y", ["x^2", "y"], True),
        (XY, "y", ["x^2 - y^3"], False),
    ],
)
def test_radical(ring, f, gens, expected):
    gens = [ring.parse(g) for g in gens]
    for order in ("lex", "grevlex"):
        assert in_radical(ring.parse(f), gens, order) is expected


@pytest.mark.parametrize("ring, gens", [(R3, ["x0*x2 - x1^2"]), (XYZT, TWISTED), (R3, ["x0^3 + x1^3 + x2^3", "x0 + x1"])])
def test_standard_monomials_match_linear_algebra(ring, gens):
    polys = [ring.parse(g) for g in gens]
    gb = buchberger(polys, GREVLEX, ring=ring)
    for d in range(9):
        assert len(gb.standard_monomials(d)) == graded_piece_basis(polys, d, ring).codim


def test_weighted_order_refines_weighted_degree():
    ring = PolyRing(("s1", "s2"), (1, 2))
    order = MonomialOrder.for_ring(ring)
    assert order.kind == "wgrevlex"
    assert order.key((0, 1)) > order.key((1, 0))
    assert order.key((2, 0)) > order.key((0, 1)) or order.key((2, 0)) < order.key((0, 1))
    assert order.key((0, 2)) > order.key((3, 0))
